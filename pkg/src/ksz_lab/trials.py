# src/ksz_lab/trials.py

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from src.index_sets.multi_index import FamilyKind, enumerate_family
from src.trig_poly.grid import DEFAULT_GRID_CAP, curvature_factor, grid_batch_max
from src.utils.errors import CapExceededError, DomainError
from src.utils.logger import get_logger

logger = get_logger(__name__)

SWEEP_COLUMNS = ["m", "n", "trials", "seed", "c_norm", "mean_ratio", "max_ratio", "stddev"]
# nodes per trial grid; above this K is lowered (never under the aliasing-free curvature range)
TRIAL_GRID_NODES = 2**22
TRIALS_PER_CHUNK = 256


@dataclass
class KSZTrial:
    m: int
    n: int
    trials: int
    seed: int
    c_norm: float
    K: int
    lowers: np.ndarray = field(repr=False)
    uppers: np.ndarray = field(repr=False)

    @property
    def scale(self) -> float:
        """sqrt(n log(1+m)) ||c||_2."""
        return math.sqrt(self.n * math.log(1 + self.m)) * self.c_norm

    @property
    def midpoints(self) -> np.ndarray:
        return 0.5 * (self.lowers + self.uppers)

    @property
    def mean_sup(self) -> float:
        return float(np.mean(self.midpoints))

    @property
    def error_bar(self) -> float:
        """Mean bracket half-width."""
        return float(np.mean(0.5 * (self.uppers - self.lowers)))

    @property
    def ratios(self) -> np.ndarray:
        return self.midpoints / self.scale if self.scale > 0 else np.zeros_like(self.midpoints)

    @property
    def constant_hat(self) -> float:
        return float(np.mean(self.ratios))

    def summary(self) -> Dict[str, float]:
        ratios = self.ratios
        return {
            "m": self.m,
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "c_norm": self.c_norm,
            "mean_ratio": float(np.mean(ratios)),
            "max_ratio": float(np.max(ratios)),
            "stddev": float(np.std(ratios)),
        }


def _trial_K(m: int, n: int, grid_cap: int) -> int:
    """Grid fine enough that the curvature bound keeps brackets within ~1% of the grid max."""
    K = max(1 + 20 * m, int(math.ceil(32 * m * math.sqrt(n))))
    limit = min(grid_cap, TRIAL_GRID_NODES)
    while K**n > limit and K > 1:
        K -= 1
    if curvature_factor(m, n, K) is None:
        raise CapExceededError(
            f"KSZ trial grid for m={m}, n={n}", (1 + 20 * m) ** n, limit, "raise the grid cap"
        )
    return K


def coefficient_vector(m: int, n: int, c: Union[None, float, Sequence[float], Dict] = None) -> np.ndarray:
    family = enumerate_family(FamilyKind.T_SET, m, n)
    if c is None or np.isscalar(c):
        return np.full(len(family), 1.0 if c is None else float(c))
    if isinstance(c, dict):
        pos = family.position()
        dense = np.zeros(len(family))
        for key, value in c.items():
            dense[pos[tuple(key)]] = value
        return dense
    dense = np.asarray(c, dtype=float)
    if dense.shape != (len(family),):
        raise DomainError(f"coefficients must have length |T({m},{n})| = {len(family)}")
    return dense


def ksz_trig_trial(
    m: int,
    n: int,
    c: Union[None, float, Sequence[float], Dict] = None,
    T: int = 200,
    seed: int = 0,
    grid_cap: int = DEFAULT_GRID_CAP,
    workers: int = 1,
) -> KSZTrial:
    """
    T random-sign polynomials sum eps_alpha c_alpha z^alpha over T(m,n). Trial
    t draws its signs from default_rng([seed, t]); each sup is bracketed by
    the grid max and min(2 max, curvature bound, sum |c|).
    """
    if T < 1:
        raise DomainError("need at least one trial")
    coeffs = coefficient_vector(m, n, c)
    alphas = enumerate_family(FamilyKind.T_SET, m, n).as_array()
    K = _trial_K(m, n, grid_cap)
    factor = curvature_factor(m, n, K)
    l1 = float(np.abs(coeffs).sum())

    def chunk(start: int):
        stop = min(start + TRIALS_PER_CHUNK, T)
        signs = np.stack([np.random.default_rng([seed, t]).choice(np.array([-1.0, 1.0]), size=coeffs.size) for t in range(start, stop)])
        maxima = grid_batch_max(alphas, signs * coeffs[None, :], K, cap=grid_cap)
        uppers = np.minimum(factor * maxima, l1)
        if K >= 1 + 20 * m:
            uppers = np.minimum(uppers, 2 * maxima)
        return maxima, np.maximum(uppers, maxima)

    starts = range(0, T, TRIALS_PER_CHUNK)
    logger.info(f"KSZ trials m={m}, n={n}, T={T}, K={K}")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(chunk, starts))
    else:
        parts = [chunk(s) for s in starts]
    lowers = np.concatenate([p[0] for p in parts])
    uppers = np.concatenate([p[1] for p in parts])
    return KSZTrial(m, n, T, seed, float(np.linalg.norm(coeffs)), K, lowers, uppers)


def exhaustive_small_mean(K: int = 4096) -> float:
    """Mean over the 8 sign patterns of sup|e_{-1} conj(z) + e_0 + e_1 z|; equals (3+sqrt5)/2."""
    alphas = np.array([[-1], [0], [1]])
    rows = np.array([[a, b, c] for a in (-1.0, 1.0) for b in (-1.0, 1.0) for c in (-1.0, 1.0)])
    sups = grid_batch_max(alphas, rows, K)
    return float(np.mean(sups))


def ksz_constant_sweep(
    ms: Iterable[int],
    ns: Iterable[int],
    trials: int = 200,
    seed: int = 0,
    c_factory=None,
    grid_cap: int = DEFAULT_GRID_CAP,
    workers: int = 1,
) -> pd.DataFrame:
    """
    One row per (m, n) cell, every cell using the same seed; columns SWEEP_COLUMNS.
    Cells with an all-zero coefficient vector are logged and kept as a row
    with trials = 0 and NaN ratios.
    """
    ms, ns = list(ms), list(ns)
    if not ms or not ns:
        raise DomainError("sweep ranges must be nonempty")
    rows: List[dict] = []
    for m in ms:
        for n in ns:
            c = coefficient_vector(m, n, c_factory(m, n) if c_factory else None)
            if not np.any(c):
                logger.warning(f"Skipping sweep cell m={m} n={n}: empty coefficient vector")
                rows.append({"m": m, "n": n, "trials": 0, "seed": seed, "c_norm": 0.0,
                             "mean_ratio": np.nan, "max_ratio": np.nan, "stddev": np.nan})
                continue
            rows.append(ksz_trig_trial(m, n, c, trials, seed, grid_cap, workers).summary())
    return pd.DataFrame(rows, columns=SWEEP_COLUMNS)
