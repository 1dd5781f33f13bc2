# src/multipliers/diagonal.py

import math
from typing import Sequence, Union

import numpy as np

from src.multipliers.exponents import r_exponent


def _moduli(xi: Union[Sequence[complex], np.ndarray]) -> np.ndarray:
    return np.abs(np.asarray(xi, dtype=complex).reshape(-1))


def lp_norm(values: np.ndarray, p: float) -> float:
    values = np.abs(np.asarray(values))
    if values.size == 0:
        return 0.0
    if math.isinf(p):
        return float(values.max())
    top = values.max()
    if top == 0:
        return 0.0
    return float(top * np.sum((values / top) ** p) ** (1.0 / p))


def diagonal_norm(xi, p: float) -> float:
    """
    ||D_xi: l_2 -> l_p|| = ||xi||_r with 1/r = 1/p - 1/2; for p >= 2 this is
    max |xi| (r = infinity).
    """
    return lp_norm(_moduli(xi), r_exponent(p))


def two_summing_norm(xi, p: float) -> float:
    """pi_2(M_xi: C -> l_p), which coincides with the diagonal norm."""
    return diagonal_norm(xi, p)


def holder_attainer(xi, p: float) -> np.ndarray:
    """Unit mu with ||(mu xi)||_p = ||xi||_r: |mu| proportional to |xi|^{r/2}."""
    w = _moduli(xi)
    mu = np.zeros_like(w)
    if w.size == 0 or w.max() == 0:
        if w.size:
            mu[0] = 1.0
        return mu
    r = r_exponent(p)
    if math.isinf(r):
        mu[int(np.argmax(w))] = 1.0
        return mu
    mu = (w / w.max()) ** (r / 2)
    return mu / np.linalg.norm(mu)


def sampled_diagonal_sup(xi, p: float, samples: int, rng: np.random.Generator, chunk: int = 2048) -> float:
    """max over random unit mu of ||(mu xi)||_p; never exceeds diagonal_norm."""
    w = _moduli(xi)
    best = 0.0
    for start in range(0, samples, chunk):
        size = min(chunk, samples - start)
        mu = rng.normal(size=(size, w.size))
        mu /= np.linalg.norm(mu, axis=1, keepdims=True)
        prods = np.abs(mu) * w[None, :]
        if math.isinf(p):
            values = prods.max(axis=1)
        else:
            values = np.sum(prods**p, axis=1) ** (1.0 / p)
        best = max(best, float(values.max()))
    return best
