#!/usr/bin/env python
"""
Core progress primitives shared by experiment runners and the CLI.

Runners publish plain-dict events through a publisher interface so they
never depend on how (or whether) progress is displayed.
"""

from __future__ import annotations

import logging
import threading
from typing import Dict, List, Optional


class ProgressPublisher:
    def publish(self, event: dict) -> None:  # pragma: no cover - interface
        raise NotImplementedError


class NullPublisher(ProgressPublisher):
    def publish(self, event: dict) -> None:
        return None


class LoggingPublisher(ProgressPublisher):
    """Writes each event as one INFO line (failures at ERROR)."""

    def __init__(self, logger: Optional[logging.Logger] = None) -> None:
        self._logger = logger or logging.getLogger("gw.progress")

    def publish(self, event: dict) -> None:
        name = event.get("event", "event")
        details = " ".join(f"{k}={v}" for k, v in sorted(event.items()) if k != "event")
        if name.endswith("failed"):
            self._logger.error("%s %s", name, details)
        else:
            self._logger.info("%s %s", name, details)


class CollectingPublisher(ProgressPublisher):
    """Thread-safe in-memory sink; handy for tests and summaries."""

    def __init__(self) -> None:
        self._lock = threading.RLock()
        self.events: List[Dict] = []

    def publish(self, event: dict) -> None:
        with self._lock:
            self.events.append(dict(event))

    def of_type(self, name: str) -> List[Dict]:
        with self._lock:
            return [ev for ev in self.events if ev.get("event") == name]


__all__ = ["ProgressPublisher", "NullPublisher", "LoggingPublisher", "CollectingPublisher"]
