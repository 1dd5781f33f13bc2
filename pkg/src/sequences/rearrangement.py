# src/sequences/rearrangement.py

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from src.utils.errors import DomainError


@dataclass
class RealSequence:
    """Finite truncation of a real sequence."""

    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float).reshape(-1)
        if not np.all(np.isfinite(self.values)):
            raise DomainError("sequence values must be finite")

    @property
    def N_max(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.N_max


def decreasing_rearrangement(x: Sequence[float]) -> RealSequence:
    """Moduli sorted nonincreasingly; ties keep their original order."""
    moduli = np.abs(RealSequence(np.asarray(x, dtype=float)).values)
    order = np.argsort(-moduli, kind="stable")
    return RealSequence(moduli[order])


def weak_lq_norm(x: Sequence[float], q: float) -> float:
    """sup_n n^{1/q} x*_n over the truncation."""
    if q <= 0:
        raise DomainError(f"q must be > 0, got {q}")
    xs = decreasing_rearrangement(x).values
    if xs.size == 0:
        return 0.0
    n = np.arange(1, xs.size + 1, dtype=float)
    return float(np.max(n ** (1.0 / q) * xs))
