# src/ksz_lab/boolean_search.py

import math
from dataclasses import dataclass
from typing import Dict, Sequence, Union

import numpy as np

from src.boolean_cube.walsh import wht_inverse
from src.multipliers.verdicts import VerdictReport
from src.utils.errors import DomainError
from src.utils.logger import get_logger

logger = get_logger(__name__)

MAX_SEARCH_N = 20
BATCH_ENTRIES = 2**22


@dataclass
class BooleanSearchResult:
    signs: np.ndarray
    min_sup: float
    bound: float
    report: VerdictReport

    @property
    def ratio(self) -> float:
        return self.min_sup / self.bound if self.bound else 0.0


def ksz_boolean_search(
    c: Union[Sequence[float], Dict[int, float]],
    N: int,
    T: int = 1000,
    seed: int = 0,
) -> BooleanSearchResult:
    """
    Best of T random sign families for sum xi_S c_S x^S, each sup exact via
    the inverse transform, against 6 sqrt(log 2) sqrt(N) ||c||_2.
    """
    if not 1 <= N <= MAX_SEARCH_N:
        raise DomainError(f"boolean search supports 1 <= N <= {MAX_SEARCH_N}, got {N}")
    if T < 1:
        raise DomainError("need at least one trial")
    if isinstance(c, dict):
        dense = np.zeros(1 << N)
        for mask, value in c.items():
            dense[int(mask)] = value
        c = dense
    c = np.asarray(c, dtype=float)
    if c.shape != (1 << N,):
        raise DomainError(f"coefficients must have length 2^N = {1 << N}")

    chunk = max(1, BATCH_ENTRIES >> N)
    best_sup, best_signs = math.inf, None
    for start in range(0, T, chunk):
        stop = min(start + chunk, T)
        signs = np.stack([np.random.default_rng([seed, t]).choice(np.array([-1.0, 1.0]), size=c.size) for t in range(start, stop)])
        sups = np.abs(wht_inverse(signs * c[None, :])).max(axis=1)
        k = int(np.argmin(sups))
        if sups[k] < best_sup:
            best_sup, best_signs = float(sups[k]), signs[k]

    c_norm = float(np.linalg.norm(c))
    constant = 6 * math.sqrt(math.log(2)) * math.sqrt(N)
    report = VerdictReport.build(
        best_sup,
        constant,
        c_norm,
        c_norm,
        envelope=True,
        anchor="min over signs of sup|sum xi_S c_S x^S| <= 6 sqrt(log 2) sqrt(N) ||c||_2",
        space="boolean",
        n=N,
        seed=seed,
        inputs={"trials": T, "min_sup": best_sup},
        notes=["sampled signs; a miss is not a counterexample"],
    )
    logger.debug(f"boolean KSZ search N={N}, T={T}: min sup {best_sup:.6g}")
    return BooleanSearchResult(best_signs, best_sup, constant * c_norm, report)
