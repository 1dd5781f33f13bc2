# src/sequences/bohr.py

import math
from dataclasses import dataclass

from src.trig_poly.grid import NormBracket
from src.utils.errors import DomainError


@dataclass
class BohrBound:
    n: int
    m: int
    bound: float
    asymptotic: float

    def to_dict(self) -> dict:
        return {"n": self.n, "m": self.m, "bound": self.bound, "asymptotic": self.asymptotic}


def bohr_radius_upper(n: int, m: int, sidon_bracket: NormBracket) -> BohrBound:
    """K_n <= chi(m, n)^(-1/m) <= lower^(-1/m), next to the sqrt(log n / n) rate."""
    if m < 1 or n < 1:
        raise DomainError(f"need m, n >= 1, got m={m}, n={n}")
    if sidon_bracket.lower <= 0:
        raise DomainError("Sidon bracket has lower end 0; no Bohr radius bound follows")
    asymptotic = math.sqrt(math.log(n) / n) if n > 1 else 1.0
    return BohrBound(n, m, sidon_bracket.lower ** (-1.0 / m), asymptotic)
