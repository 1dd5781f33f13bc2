# src/index_sets/certificates.py

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import mpmath

from src.index_sets.multi_index import FamilyKind, count_exact
from src.utils.config_loader import config
from src.utils.errors import CertificateError, DomainError
from src.utils.logger import get_logger

logger = get_logger(__name__)

# Slack on the root computations only; counts are compared exactly.
ROOT_SLACK = mpmath.mpf("1e-12")


@dataclass
class CountCertificate:
    """lower <= |Lambda_LE(m,n)|^{1/(2m)} <= upper, with the exact count attached."""

    kind: str
    m: int
    n: int
    exact_count: int
    lower: mpmath.mpf
    mid: mpmath.mpf
    upper: mpmath.mpf

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "m": self.m,
            "n": self.n,
            "exact_count": self.exact_count,
            "lower": float(self.lower),
            "mid": float(self.mid),
            "upper": float(self.upper),
        }


@dataclass
class BoundReport:
    name: str
    lhs: float
    rhs: float
    holds: bool
    inputs: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs, "holds": self.holds, **self.inputs}


def surprise_certificate(m: int, n: int) -> CountCertificate:
    if m < 1 or n < 1:
        raise DomainError(f"surprise certificate needs m, n >= 1, got ({m}, {n})")
    count = count_exact(FamilyKind.LAMBDA_LE, m, n)
    with mpmath.workdps(config.MPMATH_PRECISION):
        lower = mpmath.sqrt(1 + mpmath.mpf(n - 1) / m)
        mid = mpmath.root(mpmath.mpf(count), 2 * m)
        upper = 2 * mpmath.sqrt(2 * mpmath.e) * lower
        if lower > mid * (1 + ROOT_SLACK):
            raise CertificateError("lower", f"sqrt(1+(n-1)/m)={lower} > count^(1/2m)={mid} at m={m}, n={n}")
        if mid > upper * (1 + ROOT_SLACK):
            raise CertificateError("upper", f"count^(1/2m)={mid} > {upper} at m={m}, n={n}")
    return CountCertificate(FamilyKind.LAMBDA_LE.value, m, n, count, lower, mid, upper)


def binomial_bounds_check(N: int, k: int) -> BoundReport:
    """(N/k)^k <= C(N,k), decided on integers: N^k <= k^k C(N,k)."""
    if not 1 <= k <= N:
        raise DomainError(f"need 1 <= k <= N, got N={N}, k={k}")
    binom = comb(N, k)
    holds = N**k <= k**k * binom
    return BoundReport(
        name="binomial",
        lhs=float(Fraction(N, k) ** k),
        rhs=float(binom),
        holds=holds,
        inputs={"N": N, "k": k},
    )


def stirling_bound_check(m: int, n: int) -> BoundReport:
    """C(m+n-1, m) <= 2 e^m (1+(n-1)/m)^m."""
    if m < 1 or n < 1:
        raise DomainError(f"need m, n >= 1, got ({m}, {n})")
    binom = comb(m + n - 1, m)
    with mpmath.workdps(config.MPMATH_PRECISION):
        bound = 2 * mpmath.e**m * (1 + mpmath.mpf(n - 1) / m) ** m
        holds = mpmath.mpf(binom) <= bound
    return BoundReport(name="stirling", lhs=float(binom), rhs=float(bound), holds=bool(holds), inputs={"m": m, "n": n})
