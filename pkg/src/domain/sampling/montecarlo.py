#!/usr/bin/env python
"""Monte Carlo estimates that carry their own standard error."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Dict

import numpy as np


@dataclass(frozen=True)
class MonteCarloEstimate:
    value: float
    std_error: float = 0.0
    samples: int = 0

    @property
    def is_exact(self) -> bool:
        return self.samples == 0

    def scaled(self, factor: float) -> "MonteCarloEstimate":
        return MonteCarloEstimate(self.value * factor, self.std_error * abs(factor), self.samples)

    def within(self, target: float, sigmas: float = 3.0, floor: float = 0.0) -> bool:
        return abs(self.value - target) <= sigmas * self.std_error + floor

    def to_dict(self) -> Dict[str, Any]:
        return {"value": self.value, "std_error": self.std_error, "samples": self.samples}

    @classmethod
    def exact(cls, value: float) -> "MonteCarloEstimate":
        return cls(value=float(value))

    @classmethod
    def of_mean(cls, draws: np.ndarray) -> "MonteCarloEstimate":
        draws = np.asarray(draws, dtype=np.float64)
        count = draws.size
        se = float(draws.std(ddof=1) / math.sqrt(count)) if count > 1 else 0.0
        return cls(value=float(draws.mean()), std_error=se, samples=count)

    @classmethod
    def of_fourth_root_mean(cls, draws: np.ndarray) -> "MonteCarloEstimate":
        """Estimate of ``E[Z]^(1/4)``; the error is propagated by the delta method."""
        mean = cls.of_mean(draws)
        level = max(mean.value, 0.0)
        if level == 0.0:
            return cls(value=0.0, std_error=0.0, samples=mean.samples)
        se = mean.std_error / (4.0 * level ** 0.75)
        return cls(value=level ** 0.25, std_error=se, samples=mean.samples)


__all__ = ["MonteCarloEstimate"]
