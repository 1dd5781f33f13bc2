# src/trig_poly/grid.py

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.trig_poly.ascent import phase_ascent
from src.trig_poly.polynomial import TrigPolynomial
from src.utils.errors import CapExceededError, CertificateError, DomainError
from src.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_GRID_CAP = 2**26
# complex entries held at once by a batched evaluation
BATCH_NODES = 2**22


@dataclass(frozen=True)
class GridSpec:
    """Equispaced product grid with K nodes per axis on the n-torus."""

    K: int
    n: int

    def __post_init__(self):
        if self.K < 1 or self.n < 1:
            raise DomainError(f"grid needs K >= 1 and n >= 1, got K={self.K}, n={self.n}")

    @classmethod
    def bernstein(cls, m: int, n: int) -> "GridSpec":
        return cls(1 + 20 * m, n)

    @property
    def total(self) -> int:
        return self.K**self.n

    def certifies(self, m: int) -> bool:
        return self.K >= 1 + 20 * m

    def phases(self, node: Sequence[int], offset: Optional[Sequence[float]] = None) -> Tuple[float, ...]:
        base = 2 * np.pi * np.asarray(node, dtype=float) / self.K
        if offset is not None:
            base = base + np.asarray(offset, dtype=float)
        return tuple(float(t) for t in base)

    def check_cap(self, cap: int, advice: Optional[str] = None) -> None:
        if self.total > cap:
            raise CapExceededError(f"grid {self.K}^{self.n}", self.total, cap, advice)


@dataclass
class NormBracket:
    lower: float
    upper: float
    method: str
    K: Optional[int] = None
    argmax: Optional[Tuple[float, ...]] = None
    notes: List[str] = field(default_factory=list)

    def __post_init__(self):
        self.lower = float(self.lower)
        self.upper = float(self.upper)
        if self.lower < 0 or self.lower > self.upper * (1 + 1e-12) + 1e-15:
            raise CertificateError("bracket", f"[{self.lower}, {self.upper}] is not an interval in [0, inf)")

    @property
    def certified(self) -> bool:
        return self.method != "uncertified"

    def contains(self, value: float, tol: float = 1e-9) -> bool:
        return self.lower - tol <= value <= self.upper + tol

    def to_dict(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "method": self.method, "K": self.K}


# -------------------------------------------------------------------------
# Evaluation
# -------------------------------------------------------------------------
def _spectrum_rows(alphas: np.ndarray, rows: np.ndarray, K: int, offset) -> np.ndarray:
    """Fold coefficient rows onto the K^n frequency lattice (alpha mod K)."""
    n = alphas.shape[1]
    rows = np.atleast_2d(np.asarray(rows, dtype=complex))
    if offset is not None:
        rows = rows * np.exp(1j * (alphas @ np.asarray(offset, dtype=float)))[None, :]
    flat = np.ravel_multi_index(tuple(np.mod(alphas, K).T), (K,) * n) if alphas.size else np.zeros(0, int)
    spec = np.zeros((K**n, rows.shape[0]), dtype=complex)
    np.add.at(spec, flat, rows.T)
    return spec.T.reshape((rows.shape[0],) + (K,) * n)


def eval_grid(
    P: TrigPolynomial,
    grid: GridSpec,
    cap: int = DEFAULT_GRID_CAP,
    offset: Optional[Sequence[float]] = None,
) -> np.ndarray:
    """
    Values of P at theta_k = 2 pi k / K (+ offset), shape (K,)*n.

    Frequencies are reduced mod K before an inverse FFT, so node values are
    exact for every K, including grids coarser than the degree.
    """
    if grid.n != P.n:
        raise DomainError(f"grid dimension {grid.n} does not match polynomial dimension {P.n}")
    grid.check_cap(cap, "use a smaller K in heuristic mode")
    if not P.coeffs:
        return np.zeros((grid.K,) * grid.n, dtype=complex)
    spec = _spectrum_rows(P.alphas(), P.values()[None, :], grid.K, offset)[0]
    return np.fft.ifftn(spec) * grid.total


def _iter_grid_batch(alphas, rows, K, offset, cap):
    alphas = np.asarray(alphas, dtype=np.int64)
    rows = np.atleast_2d(rows)
    n = alphas.shape[1]
    grid = GridSpec(K, n)
    grid.check_cap(cap, "use a smaller K in heuristic mode")
    chunk = max(1, BATCH_NODES // grid.total)
    axes = tuple(range(1, n + 1))
    for start in range(0, rows.shape[0], chunk):
        spec = _spectrum_rows(alphas, rows[start : start + chunk], K, offset)
        yield start, (np.fft.ifftn(spec, axes=axes) * grid.total).reshape(spec.shape[0], -1)


def eval_grid_batch(
    alphas: np.ndarray,
    rows: np.ndarray,
    K: int,
    offset: Optional[Sequence[float]] = None,
    cap: int = DEFAULT_GRID_CAP,
) -> np.ndarray:
    """Evaluate many polynomials sharing one index set; returns (B, K^n) values."""
    rows = np.atleast_2d(rows)
    out = np.empty((rows.shape[0], int(K) ** np.shape(alphas)[1]), dtype=complex)
    for start, values in _iter_grid_batch(alphas, rows, K, offset, cap):
        out[start : start + values.shape[0]] = values
    return out


def grid_batch_max(
    alphas: np.ndarray,
    rows: np.ndarray,
    K: int,
    offset: Optional[Sequence[float]] = None,
    cap: int = DEFAULT_GRID_CAP,
) -> np.ndarray:
    """Per-row grid max of |P| without holding all values at once."""
    rows = np.atleast_2d(rows)
    maxima = np.empty(rows.shape[0])
    for start, values in _iter_grid_batch(alphas, rows, K, offset, cap):
        maxima[start : start + values.shape[0]] = np.abs(values).max(axis=1)
    return maxima


def grid_max(P: TrigPolynomial, grid: GridSpec, cap: int = DEFAULT_GRID_CAP, offset=None):
    values = np.abs(eval_grid(P, grid, cap, offset))
    idx = np.unravel_index(int(np.argmax(values)), values.shape)
    return float(values[idx]), grid.phases(idx, offset)


# -------------------------------------------------------------------------
# Brackets
# -------------------------------------------------------------------------
def curvature_factor(m: int, n: int, K: int) -> Optional[float]:
    """
    sup|P| <= factor * grid max when positive: |P|^2 has frequencies of size
    at most 2m, so it drops by at most 2 m^2 d^2 sup|P|^2 over distance
    d <= pi sqrt(n) / K from its maximum to the nearest node.
    """
    slack = 1.0 - 2.0 * math.pi**2 * m * m * n / (K * K)
    return 1.0 / math.sqrt(slack) if slack > 0 else None


def _heuristic_K(n: int, cap: int) -> int:
    K = max(1, int(round(cap ** (1.0 / n))))
    while K**n > cap and K > 1:
        K -= 1
    return K


def sup_norm_bracket(
    P: TrigPolynomial,
    grid_cap: int = DEFAULT_GRID_CAP,
    heuristic: bool = False,
    heuristic_K: Optional[int] = None,
    offset: Optional[Sequence[float]] = None,
) -> NormBracket:
    """
    Factor-2 bracket from the (1+20m)^n grid. When that grid is over the cap,
    heuristic mode evaluates a smaller grid and tags the result "uncertified"
    (its upper end falls back to sum |c_alpha|).
    """
    if not P.coeffs:
        return NormBracket(0.0, 0.0, "bernstein-grid", K=1)
    d = P.degree()
    grid = GridSpec.bernstein(d, P.n)
    if grid.total <= grid_cap:
        lower, argmax = grid_max(P, grid, grid_cap, offset)
        return NormBracket(lower, 2 * lower, "bernstein-grid", K=grid.K, argmax=argmax)
    if not heuristic:
        raise CapExceededError(
            f"Bernstein grid (1+20*{d})^{P.n}",
            grid.total,
            grid_cap,
            "rerun in heuristic mode for an uncertified bracket",
        )
    K = heuristic_K or _heuristic_K(P.n, grid_cap)
    lower, argmax = grid_max(P, GridSpec(K, P.n), grid_cap, offset)
    logger.info(f"Heuristic grid K={K} for degree {d} in {P.n} variables")
    return NormBracket(
        lower,
        max(lower, P.l1_norm()),
        "uncertified",
        K=K,
        argmax=argmax,
        notes=[f"grid (1+20m)^n = {grid.total} over cap {grid_cap}"],
    )


def refined_sup_bracket(
    P: TrigPolynomial,
    grid_cap: int = DEFAULT_GRID_CAP,
    K: Optional[int] = None,
    ascent: bool = True,
    starts: int = 4,
    iters: int = 10,
    seed: int = 0,
) -> NormBracket:
    """
    Tightened bracket: lower = max(grid max, phase ascent), upper = the
    smallest of 2*grid max (certified grids), the curvature bound and
    sum |c_alpha|. Sound for every K.
    """
    if not P.coeffs:
        return NormBracket(0.0, 0.0, "refined", K=K)
    d = P.degree()
    if K is None:
        K = 1 + 20 * d
        if K**P.n > grid_cap:
            K = _heuristic_K(P.n, grid_cap)
    grid = GridSpec(K, P.n)
    lower, argmax = grid_max(P, grid, grid_cap)
    uppers = [P.l1_norm()]
    if grid.certifies(d):
        uppers.append(2 * lower)
    factor = curvature_factor(d, P.n, K)
    if factor is not None:
        uppers.append(factor * lower)
    if ascent:
        found = phase_ascent(P, starts=starts, iters=iters, seed=seed, initial=argmax)
        if found.value > lower:
            lower, argmax = found.value, found.phases
    upper = max(min(uppers), lower)
    return NormBracket(lower, upper, "refined", K=K, argmax=argmax)
