"""Bounded-box space descriptors advertised by the bindings."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class BoxSpace:
    """A box in R^n: componentwise low/high bounds with a fixed shape."""

    low: np.ndarray
    high: np.ndarray

    def __post_init__(self):
        if self.low.shape != self.high.shape:
            raise ValueError(
                f"low/high shapes differ: {self.low.shape} vs {self.high.shape}"
            )
        if np.any(self.low > self.high):
            raise ValueError("low bound exceeds high bound")

    @property
    def shape(self) -> tuple[int, ...]:
        return self.low.shape

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=np.float64)
        return x.shape == self.shape and bool(
            np.all(x >= self.low) and np.all(x <= self.high)
        )
