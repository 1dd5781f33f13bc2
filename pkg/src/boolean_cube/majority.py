# src/boolean_cube/majority.py

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from src.boolean_cube.walsh import MAX_N, BooleanFunction, cube_points
from src.utils.errors import DomainError


def _require_odd(N: int) -> None:
    if N < 1 or N % 2 == 0:
        raise DomainError(f"majority is defined for odd N, got {N}")


def majority(N: int) -> BooleanFunction:
    _require_odd(N)
    if N > MAX_N:
        raise DomainError(f"N={N} exceeds the truth-table limit {MAX_N}")
    return BooleanFunction(N, np.sign(cube_points(N).sum(axis=1)).astype(np.float64))


def majority_level1_coeff(N: int) -> Fraction:
    """Exact f^({j}) of Maj_N: C(N-1, (N-1)/2) / 2^(N-1)."""
    _require_odd(N)
    return Fraction(math.comb(N - 1, (N - 1) // 2), 2 ** (N - 1))


@dataclass
class MajorityLevel1Report:
    N: int
    exact: Fraction
    asymptotic: float
    ratio: float

    def to_dict(self) -> dict:
        return {"N": self.N, "exact": str(self.exact), "exact_float": float(self.exact), "asymptotic": self.asymptotic, "ratio": self.ratio}


def majority_level1_report(N: int) -> MajorityLevel1Report:
    """The exact coefficient next to sqrt(2/pi)/sqrt(N), which it only matches asymptotically."""
    exact = majority_level1_coeff(N)
    asymptotic = math.sqrt(2 / math.pi) / math.sqrt(N)
    return MajorityLevel1Report(N, exact, asymptotic, float(exact) / asymptotic)
