#!/usr/bin/env python
"""
In-process trial queue.

Runs independent experiment trials on a fixed pool of worker threads.
Trials are deduplicated by id, failures are recorded on the trial instead
of propagating, and results come back ordered by each trial's sort key so
the worker count never changes the output.
"""

from __future__ import annotations

import logging
import threading
import time
from dataclasses import dataclass, field
from queue import Empty, Queue
from typing import Any, Callable, Dict, List, Optional, Tuple

from config import Config
from src.core.errors import GWError
from src.core.progress import NullPublisher, ProgressPublisher


TrialFn = Callable[[], Any]


@dataclass
class Trial:
    id: str
    key: Tuple
    fn: TrialFn
    status: str = "pending"  # pending | in_progress | completed | failed
    result: Any = None
    error: Optional[str] = None
    error_code: Optional[str] = None
    wall_time_seconds: float = 0.0
    event: threading.Event = field(default_factory=threading.Event)

    @property
    def done(self) -> bool:
        return self.status in ("completed", "failed")


class TrialQueue:
    def __init__(
        self,
        workers: int = Config.JOBS,
        publisher: Optional[ProgressPublisher] = None,
        logger: Optional[logging.Logger] = None,
    ) -> None:
        self.workers = max(1, int(workers))
        self.publisher = publisher or NullPublisher()
        self.logger = logger or logging.getLogger(__name__)
        self._lock = threading.RLock()
        self._queue: Queue[Trial] = Queue()
        self._trials: Dict[str, Trial] = {}
        self._threads: List[threading.Thread] = []
        self._shutdown = False

        for i in range(self.workers):
            t = threading.Thread(target=self._worker, name=f"trial-worker-{i+1}", daemon=True)
            t.start()
            self._threads.append(t)

    def __enter__(self) -> "TrialQueue":
        return self

    def __exit__(self, *exc_info) -> None:
        self.shutdown()

    def submit(self, trial_id: str, key: Tuple, fn: TrialFn) -> Trial:
        """Enqueue a trial; an id already known returns the existing trial."""
        with self._lock:
            existing = self._trials.get(trial_id)
            if existing is not None:
                return existing
            trial = Trial(id=trial_id, key=tuple(key), fn=fn)
            self._trials[trial_id] = trial
            self._queue.put(trial)
            return trial

    def wait_all(self, timeout: Optional[float] = None) -> List[Trial]:
        """Block until every submitted trial is done; returns them sorted by key."""
        with self._lock:
            trials = list(self._trials.values())
        deadline = None if timeout is None else time.monotonic() + timeout
        for trial in trials:
            remaining = None if deadline is None else max(0.0, deadline - time.monotonic())
            trial.event.wait(timeout=remaining)
        return sorted(trials, key=lambda t: t.key)

    def shutdown(self) -> None:
        self._shutdown = True
        for t in self._threads:
            t.join(timeout=1.0)

    def _worker(self) -> None:
        while not self._shutdown:
            try:
                trial = self._queue.get(timeout=0.1)
            except Empty:
                continue
            try:
                self._run_trial(trial)
            finally:
                self._queue.task_done()

    def _run_trial(self, trial: Trial) -> None:
        with self._lock:
            if trial.done:
                return
            trial.status = "in_progress"
        self.publisher.publish({"event": "trial_started", "trial": trial.id})
        started = time.perf_counter()
        try:
            trial.result = trial.fn()
            trial.status = "completed"
        except GWError as exc:
            trial.status = "failed"
            trial.error = str(exc)
            trial.error_code = exc.error_code
        except Exception as exc:  # numeric library failures must not stop the run
            trial.status = "failed"
            trial.error = f"{type(exc).__name__}: {exc}"
            trial.error_code = "unexpected"
            self.logger.debug("Trial %s raised", trial.id, exc_info=True)
        trial.wall_time_seconds = time.perf_counter() - started
        if trial.status == "completed":
            self.logger.debug("Trial %s completed in %.3fs", trial.id, trial.wall_time_seconds)
            self.publisher.publish({"event": "trial_completed", "trial": trial.id})
        else:
            self.logger.error("Trial %s failed: %s", trial.id, trial.error)
            self.publisher.publish({"event": "trial_failed", "trial": trial.id, "error": trial.error})
        trial.event.set()


__all__ = ["Trial", "TrialQueue"]
