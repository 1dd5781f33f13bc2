# src/sequences/monomial.py

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np

from src.multipliers.verdicts import VerdictReport
from src.sequences.primes import first_primes
from src.sequences.rearrangement import decreasing_rearrangement
from src.utils.errors import DomainError
from src.utils.logger import get_logger

logger = get_logger(__name__)

GRID_POINTS = 48
# largest exponent that stays finite after np.exp
LOG_FLOAT_MAX = float(np.log(np.finfo(float).max)) - 1.0
MEMBER = "member"
NON_MEMBER = "non-member"
INCONCLUSIVE = "inconclusive"


@dataclass
class MonVerdict:
    criterion: str
    ns: np.ndarray
    trajectory: np.ndarray
    classification: str
    tail_max: float
    tail_min: float
    growth_trend: Optional[float] = None
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "classification": self.classification,
            "tail_max": self.tail_max,
            "tail_min": self.tail_min,
            "growth_trend": self.growth_trend,
            "N_max": int(self.ns[-1]),
            "notes": self.notes,
        }


def geometric_grid(N_max: int, points: int = GRID_POINTS, start: int = 2) -> np.ndarray:
    grid = np.unique(np.round(np.geomspace(start, N_max, points)).astype(np.int64))
    return grid[(grid >= start) & (grid <= N_max)]


def _growth_trend(log_ns: np.ndarray, partial: np.ndarray) -> Optional[float]:
    """
    Relative rise of the increments dS/dlog n across the window; positive
    means the partial sums outgrow log n.
    """
    if log_ns.size < 3:
        return None
    increments = np.diff(partial) / np.diff(log_ns)
    mids = 0.5 * (log_ns[1:] + log_ns[:-1])
    scale = float(np.mean(increments))
    if scale <= 1e-300 or increments.size < 2:
        return None
    slope = float(np.polyfit(mids, increments, 1)[0])
    return slope * float(mids[-1] - mids[0]) / scale


def mon_criterion(
    z: Sequence[float],
    N_max: Optional[int] = None,
    delta: float = 0.05,
    trend_tol: float = 0.05,
) -> MonVerdict:
    """
    t_n = (1/log n) sum_{j<=n} (z*_j)^2 on a geometric grid; the limsup is
    read off the tail third. Member below 1-delta, non-member above 1+delta
    or when the partial sums grow faster than log n, inconclusive otherwise
    (never member at the boundary).
    """
    zs = decreasing_rearrangement(z).values
    N_max = zs.size if N_max is None else min(int(N_max), zs.size)
    if N_max < 8:
        raise DomainError(f"mon criterion needs N_max >= 8, got {N_max}")
    partial = np.cumsum(zs[:N_max] ** 2)
    ns = geometric_grid(N_max)
    log_ns = np.log(ns.astype(float))
    sums = partial[ns - 1]
    trajectory = sums / log_ns

    tail = slice(2 * ns.size // 3, ns.size)
    tail_max = float(trajectory[tail].max())
    tail_min = float(trajectory[tail].min())
    trend = _growth_trend(log_ns[tail], sums[tail])
    notes = []
    if trend is not None and trend > trend_tol:
        classification = NON_MEMBER
        notes.append(f"partial sums grow faster than log n (trend {trend:.3g} > {trend_tol})")
    elif tail_min > 1 + delta:
        classification = NON_MEMBER
    elif tail_max < 1 - delta:
        classification = MEMBER
    else:
        classification = INCONCLUSIVE
    return MonVerdict("log-normalized square sums", ns, trajectory, classification, tail_max, tail_min, trend, notes)


def dirichlet_sigma_test(
    sigma: float,
    J: int,
    delta: float = 0.05,
    trend_tol: float = 0.05,
    use_cache: bool = True,
) -> MonVerdict:
    """mon criterion on z_j = p_j^(-sigma) for the first J primes."""
    if sigma <= 0:
        raise DomainError(f"sigma must be > 0, got {sigma}")
    primes = first_primes(J, use_cache=use_cache).astype(float)
    verdict = mon_criterion(primes ** (-float(sigma)), J, delta, trend_tol)
    verdict.criterion = f"primes sigma={sigma}"
    logger.info(f"σ={sigma}, J={J}: {verdict.classification}")
    return verdict


@dataclass
class BooleanMonReport:
    ns: np.ndarray
    trajectories: Dict[str, np.ndarray]
    slopes: Dict[str, float]
    unbounded: Dict[str, bool]

    @property
    def violates_necessity(self) -> bool:
        return any(self.unbounded.values())

    def to_dict(self) -> dict:
        return {
            "N_max": int(self.ns[-1]),
            "final": {k: float(v[-1]) for k, v in self.trajectories.items()},
            "slopes": self.slopes,
            "unbounded": self.unbounded,
            "violates_necessity": self.violates_necessity,
        }


def _tail_log_slope(ns: np.ndarray, log_values: np.ndarray) -> float:
    tail = slice(2 * ns.size // 3, ns.size)
    if log_values[tail].size < 2:
        return 0.0
    return float(np.polyfit(np.log(ns[tail].astype(float)), log_values[tail], 1)[0])


def _tail_slope(ns: np.ndarray, values: np.ndarray) -> float:
    tail = slice(2 * ns.size // 3, ns.size)
    if np.any(values[tail] <= 0):
        return 0.0
    return _tail_log_slope(ns, np.log(np.where(values > 0, values, 1.0)))


def boolean_mon_necessary(
    x: Sequence[float],
    N_grid: Optional[Sequence[int]] = None,
    growth_slope: float = 0.1,
) -> BooleanMonReport:
    """
    Necessary-condition functionals for monomial convergence on the cube:
    (1/sqrt N) sum |x_n|, (1/log N) sum x_n^2 and
    prod (1+x_n^2)^(1/2) / (6 sqrt(log 2) sqrt N). A trajectory whose tail
    log-log slope exceeds growth_slope is flagged unbounded.
    """
    xs = np.abs(np.asarray(x, dtype=float))
    ns = geometric_grid(xs.size) if N_grid is None else np.asarray(sorted(set(int(n) for n in N_grid)))
    if ns.size == 0 or ns[0] < 2 or ns[-1] > xs.size:
        raise DomainError("N grid must lie in [2, len(x)]")
    nf = ns.astype(float)
    l1 = np.cumsum(xs)[ns - 1] / np.sqrt(nf)
    l2 = np.cumsum(xs**2)[ns - 1] / np.log(nf)
    log_product = 0.5 * np.cumsum(np.log1p(xs**2))[ns - 1] - np.log(6 * math.sqrt(math.log(2)) * np.sqrt(nf))
    # the product itself saturates at the float max; its slope comes from the logs
    product = np.exp(np.minimum(log_product, LOG_FLOAT_MAX))
    trajectories = {"l1_sqrt": l1, "l2_log": l2, "product": product}
    slopes = {"l1_sqrt": _tail_slope(ns, l1), "l2_log": _tail_slope(ns, l2), "product": _tail_log_slope(ns, log_product)}
    return BooleanMonReport(ns, trajectories, slopes, {k: s > growth_slope for k, s in slopes.items()})


def rearrangement_claim_check(r: Sequence[float], m: Optional[int], N: int) -> VerdictReport:
    """
    (r_m^2 + ... + r_N^2)^m / m! <= sum_{|S|=m} prod_{j in S} r_j^2, both
    sides in exact rational arithmetic over all m-subsets of [N].
    """
    values = [float(v) for v in r][:N]
    if len(values) < N:
        raise DomainError(f"need {N} values, got {len(values)}")
    if any(v <= 0 for v in values) or any(a < b for a, b in zip(values, values[1:])):
        raise DomainError("r must be positive and nonincreasing")
    notes = []
    if m is None:
        m = min(max(int(round(math.log(N))), 1), N)
        notes.append(f"m = round(log {N}) = {m}")
    if not 1 <= m <= min(N, 4) or N > 14:
        raise DomainError(f"exact check supports m <= 4 and m <= N <= 14, got m={m}, N={N}")
    squares = [Fraction(v) ** 2 for v in values]
    lhs = sum(squares[m - 1 :], Fraction(0)) ** m / math.factorial(m)
    rhs = Fraction(0)
    for subset in itertools.combinations(squares, m):
        term = Fraction(1)
        for s in subset:
            term *= s
        rhs += term
    return VerdictReport.exact(
        lhs <= rhs,
        lhs=float(lhs),
        rhs=float(rhs),
        anchor="(r_m^2+...+r_N^2)^m / m! <= sum_{|S|=m} r_S^2",
        space="boolean",
        m=m,
        n=N,
        notes=notes,
    )
