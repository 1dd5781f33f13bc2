# src/boolean_cube/exact_norms.py

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, Sequence, Union

import numpy as np
from scipy.linalg import hadamard

from src.utils.errors import DomainError
from src.utils.logger import get_logger

logger = get_logger(__name__)

EXACT_MAX_N = 4
BLOCK = 4096


@dataclass
class ExactNorm:
    value: float
    vertex: np.ndarray  # maximizing +-1 truth table
    N: int
    p: float


def _weights(xi: Union[Sequence[float], Dict[int, float]], N: int) -> np.ndarray:
    if isinstance(xi, dict):
        dense = np.zeros(1 << N)
        for mask, w in xi.items():
            dense[int(mask)] = abs(w)
        return dense
    dense = np.abs(np.asarray(xi, dtype=complex)).astype(float)
    if dense.shape != (1 << N,):
        raise DomainError(f"weights must have length 2^N = {1 << N}")
    return dense


def _lp(rows: np.ndarray, p: float) -> np.ndarray:
    if math.isinf(p):
        return rows.max(axis=1)
    return np.sum(rows**p, axis=1) ** (1.0 / p)


def exact_multiplier_norm(
    xi: Union[Sequence[float], Dict[int, float]],
    p: float,
    N: int,
    workers: int = 1,
) -> ExactNorm:
    """
    ||M_xi: B_N -> l_p|| by enumerating all 2^(2^N) sign vectors. The objective
    is convex in the truth table, so its max over the sup-norm ball sits at a
    vertex.
    """
    if N > EXACT_MAX_N:
        raise DomainError(f"exact vertex enumeration supports N <= {EXACT_MAX_N}; use the bracket for N={N}")
    if p < 1:
        raise DomainError(f"p must be >= 1, got {p}")
    L = 1 << N
    w = _weights(xi, N)
    H = hadamard(L).astype(np.int64)
    # f and -f give the same value, so vertices with the top bit clear suffice
    total = 1 << (L - 1)
    shifts = np.arange(L, dtype=np.int64)

    def block(start: int):
        v = np.arange(start, min(start + BLOCK, total), dtype=np.int64)
        tables = 1 - 2 * ((v[:, None] >> shifts[None, :]) & 1)
        coeffs = np.abs(tables @ H) / float(L)
        values = _lp(coeffs * w[None, :], p)
        k = int(np.argmax(values))
        return float(values[k]), tables[k]

    starts = range(0, total, BLOCK)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(block, starts))
    else:
        results = [block(s) for s in starts]

    best_value, best_vertex = results[0]
    for value, vertex in results[1:]:
        if value > best_value:
            best_value, best_vertex = value, vertex
    logger.debug(f"exact multiplier norm over {total} vertices (N={N}, p={p}): {best_value:.12g}")
    return ExactNorm(best_value, best_vertex.astype(np.float64), N, p)


def multiplier_norm_boolean_exact(
    xi: Union[Sequence[float], Dict[int, float]],
    p: float,
    N: int,
    workers: int = 1,
) -> float:
    return exact_multiplier_norm(xi, p, N, workers).value
