# src/trig_poly/ascent.py

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from src.trig_poly.polynomial import TrigPolynomial, eval_point
from src.utils.errors import DomainError
from src.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass
class AscentResult:
    value: float
    phases: Tuple[float, ...]
    start: int


def _line_coefficients(alphas, coeffs, theta, j, m):
    """P restricted to axis j: sum_k a_k e^{i k t}, k in [-m, m]."""
    rest = alphas @ theta - alphas[:, j] * theta[j]
    terms = coeffs * np.exp(1j * rest)
    a = np.zeros(2 * m + 1, dtype=complex)
    np.add.at(a, alphas[:, j] + m, terms)
    return a


def _ascend(P: TrigPolynomial, theta: np.ndarray, iters: int) -> Tuple[float, np.ndarray]:
    alphas = P.alphas()
    coeffs = P.values()
    m = max(int(np.abs(alphas).max()), 1)
    ks = np.arange(-m, m + 1)
    L = max(64, 8 * (2 * m + 1))
    t_grid = 2 * np.pi * np.arange(L) / L
    basis = np.exp(1j * np.outer(t_grid, ks))

    best = abs(eval_point(P, theta))
    best_theta = theta.copy()
    for _ in range(iters):
        improved = False
        for j in range(P.n):
            a = _line_coefficients(alphas, coeffs, theta, j, m)
            values = np.abs(basis @ a)
            k = int(np.argmax(values))

            def neg(t, a=a):
                return -abs(np.sum(a * np.exp(1j * ks * t)))

            width = 2 * np.pi / L
            res = minimize_scalar(neg, bounds=(t_grid[k] - width, t_grid[k] + width), method="bounded")
            t_best, v_best = (res.x, -res.fun) if -res.fun >= values[k] else (t_grid[k], values[k])
            if v_best <= -neg(theta[j]):
                continue
            theta[j] = float(np.mod(t_best, 2 * np.pi))
            if v_best > best * (1 + 1e-13):
                best = float(v_best)
                best_theta = theta.copy()
                improved = True
        if not improved:
            break
    return best, best_theta


def phase_ascent(
    P: TrigPolynomial,
    starts: int = 4,
    iters: int = 20,
    seed: int = 0,
    initial: Optional[Sequence[float]] = None,
    workers: int = 1,
) -> AscentResult:
    """
    Coordinate ascent on |P| over the phases. Start 0 is `initial` (or the
    origin); the others draw from default_rng([seed, k]). Returns the largest
    modulus seen, which is a certified lower bound on sup |P|.
    """
    if starts < 1 or iters < 1:
        raise DomainError("phase_ascent needs starts >= 1 and iters >= 1")
    if not P.coeffs:
        return AscentResult(0.0, tuple([0.0] * P.n), 0)

    def run(k: int):
        if k == 0:
            theta = np.zeros(P.n) if initial is None else np.asarray(initial, dtype=float).copy()
        else:
            theta = np.random.default_rng([seed, k]).uniform(0, 2 * np.pi, size=P.n)
        return _ascend(P, theta, iters)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run, range(starts)))
    else:
        outcomes = [run(k) for k in range(starts)]

    # reduce in start order so the schedule never changes the result
    best_k = 0
    for k, (value, _) in enumerate(outcomes):
        if value > outcomes[best_k][0]:
            best_k = k
    value, theta = outcomes[best_k]
    logger.debug(f"phase ascent: {value:.6g} from start {best_k} of {starts}")
    return AscentResult(float(value), tuple(float(t) for t in theta), best_k)
