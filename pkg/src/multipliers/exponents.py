# src/multipliers/exponents.py

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Union

from src.utils.errors import CertificateError, DomainError

Number = Union[int, float, Fraction]


def to_fraction(x: Number) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if math.isinf(x):
        raise DomainError("infinite exponents have no rational form")
    return Fraction(x).limit_denominator(10**12)


def inv_r(p: Number) -> Fraction:
    """1/r = 1/p - 1/2, clamped at 0 (r = infinity) for p >= 2."""
    if not isinstance(p, Fraction) and math.isinf(float(p)):
        return Fraction(0)
    p = to_fraction(p)
    if p < 1:
        raise DomainError(f"target exponent p must be >= 1, got {p}")
    return max(1 / p - Fraction(1, 2), Fraction(0))


def r_exponent(p: Number) -> float:
    value = inv_r(p)
    return math.inf if value == 0 else float(1 / value)


def conjecture_range(m: int) -> Fraction:
    """Upper end 2m/(m+1) of the p-range for the beta/s exponents."""
    return Fraction(2 * m, m + 1)


@dataclass
class ExponentBundle:
    p: Fraction
    m: int
    theta: Fraction
    inv_r: Fraction
    p_theta: Fraction
    theta_m: Optional[Fraction] = None
    beta_m: Optional[Fraction] = None
    inv_s: Optional[Fraction] = None
    growth: Fraction = Fraction(0)
    provenance: Dict[str, str] = field(default_factory=dict)

    @property
    def r(self) -> float:
        return math.inf if self.inv_r == 0 else float(1 / self.inv_r)

    @property
    def s(self) -> Optional[float]:
        if self.inv_s is None:
            return None
        return math.inf if self.inv_s == 0 else float(1 / self.inv_s)

    def to_dict(self) -> dict:
        def f(x):
            return None if x is None else float(x)

        return {
            "p": f(self.p),
            "m": self.m,
            "theta": f(self.theta),
            "r": self.r,
            "p_theta": f(self.p_theta),
            "theta_m": f(self.theta_m),
            "beta_m": f(self.beta_m),
            "s": self.s,
            "growth": f(self.growth),
            "provenance": dict(self.provenance),
        }


def exponents(p: Number, m: int = 1, theta: Number = 0, conjecture: bool = True) -> ExponentBundle:
    """
    All exponents for target l_p and degree m, in exact rational arithmetic.

    With conjecture=True, p must lie in [1, 2m/(m+1)] and theta_m, beta_m and
    1/s are filled in; the identities (m-1)/s = m/r - 1/2 and
    (m-1) beta_m / 2 = m/r - 1/2 are asserted.
    """
    if m < 1:
        raise DomainError(f"degree m must be >= 1, got {m}")
    theta = to_fraction(theta)
    if not 0 <= theta <= 1:
        raise DomainError(f"theta must lie in [0, 1], got {theta}")
    p_frac = to_fraction(p)
    ir = inv_r(p_frac)
    bundle = ExponentBundle(
        p=p_frac,
        m=m,
        theta=theta,
        inv_r=ir,
        p_theta=1 / ((1 - theta) + theta / 2),
        growth=m * ir - Fraction(1, 2),
        provenance={"r": "1/r = 1/p - 1/2", "p_theta": "1/p_theta = (1-theta) + theta/2"},
    )
    if not conjecture:
        return bundle

    top = conjecture_range(m)
    if not 1 <= p_frac <= top:
        raise DomainError(f"p={p_frac} is outside [1, {top}] for m={m}")
    if m == 1:
        # 2m/(m+1) = 1 pins p = 1
        bundle.theta_m, bundle.beta_m = Fraction(0), Fraction(1)
    else:
        bundle.theta_m = (1 - 1 / p_frac) / (1 - Fraction(m + 1, 2 * m))
        bundle.beta_m = 1 - bundle.theta_m
        bundle.inv_s = Fraction(m, m - 1) * (1 / p_frac - Fraction(m + 1, 2 * m))
        if (m - 1) * bundle.inv_s != bundle.growth:
            raise CertificateError("s-identity", f"(m-1)/s={(m - 1) * bundle.inv_s} != m/r-1/2={bundle.growth}")
        if Fraction(m - 1, 2) * bundle.beta_m != bundle.growth:
            raise CertificateError("beta-identity", f"(m-1)beta/2 != m/r-1/2 at p={p_frac}, m={m}")
    bundle.provenance.update(
        {
            "theta_m": "(1-1/p)/(1-(m+1)/(2m))",
            "beta_m": "1 - theta_m",
            "s": "1/s = m/(m-1) (1/p - (m+1)/(2m))",
        }
    )
    return bundle
