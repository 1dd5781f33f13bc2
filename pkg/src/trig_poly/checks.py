# src/trig_poly/checks.py

import math

import numpy as np

from src.index_sets.multi_index import FamilyKind, enumerate_family
from src.multipliers.verdicts import VerdictReport
from src.reports.registry import register_check
from src.reports.run_config import RunConfig
from src.trig_poly.grid import GridSpec, eval_grid, grid_max, refined_sup_bracket, sup_norm_bracket
from src.trig_poly.polynomial import TrigPolynomial, bh_functional, eval_points, l2_norm

MODULE = "trig_poly"


def _random_poly(rng: np.random.Generator, n: int, m: int, analytic: bool = False) -> TrigPolynomial:
    family = enumerate_family(FamilyKind.LAMBDA_LE if analytic else FamilyKind.T_SET, m, n)
    values = rng.normal(size=len(family)) + 1j * rng.normal(size=len(family))
    return TrigPolynomial.from_family(family, values)


@register_check("trig_poly.parseval", MODULE, "Parseval identity on the torus")
def check_parseval(cfg: RunConfig):
    rng = np.random.default_rng([cfg.seed, 101])
    samples = 100 if cfg.quick else 1000
    worst = 0.0
    for _ in range(samples):
        n, m = int(rng.integers(1, 4)), int(rng.integers(0, 6))
        P = _random_poly(rng, n, m)
        mean_sq = float(np.mean(np.abs(eval_grid(P, GridSpec(4 * (1 + m), n))) ** 2))
        worst = max(worst, abs(l2_norm(P) ** 2 - mean_sq) / max(mean_sq, 1e-300))
    return [
        VerdictReport.build(
            worst, 1.0, 1e-8, 1e-8, tol_abs=0.0, tol_rel=0.0,
            check_id="trig_poly.parseval", anchor=check_parseval.anchor, space="torus",
            seed=cfg.seed, inputs={"samples": samples, "worst_relative_error": worst},
        )
    ]


@register_check("trig_poly.fft_matches_direct", MODULE, "FFT grid evaluation against direct summation")
def check_fft(cfg: RunConfig):
    rng = np.random.default_rng([cfg.seed, 102])
    samples = 10 if cfg.quick else 50
    worst = 0.0
    for _ in range(samples):
        n, m = int(rng.integers(1, 3)), int(rng.integers(1, 5))
        P = _random_poly(rng, n, m)
        grid = GridSpec.bernstein(m, n)
        fast = eval_grid(P, grid).reshape(-1)
        nodes = np.array(np.unravel_index(np.arange(grid.total), (grid.K,) * n)).T
        direct = eval_points(P, 2 * np.pi * nodes / grid.K)
        worst = max(worst, float(np.max(np.abs(fast - direct)) / np.max(np.abs(direct))))
    return [
        VerdictReport.build(
            worst, 1.0, 1e-10, 1e-10, tol_abs=0.0, tol_rel=0.0,
            check_id="trig_poly.fft_matches_direct", anchor=check_fft.anchor, space="torus",
            seed=cfg.seed, inputs={"samples": samples, "worst_relative_error": worst},
        )
    ]


@register_check("trig_poly.bracket_consistency", MODULE, "factor-2 Bernstein grid bracket")
def check_brackets(cfg: RunConfig):
    rng = np.random.default_rng([cfg.seed, 103])
    samples = 10 if cfg.quick else 40
    violations = []
    for i in range(samples):
        n, m = int(rng.integers(1, 3)), int(rng.integers(1, 4))
        P = _random_poly(rng, n, m)
        bracket = sup_norm_bracket(P, cfg.grid_cap)
        refined = refined_sup_bracket(P, cfg.grid_cap, starts=2, seed=cfg.seed + i)
        fine, _ = grid_max(P, GridSpec(2 * bracket.K, n), cfg.grid_cap)
        shifted, _ = grid_max(P, GridSpec(bracket.K, n), cfg.grid_cap, offset=rng.uniform(0, 2 * np.pi, n))
        if not (
            bracket.contains(refined.lower, cfg.tol_abs + cfg.tol_rel * bracket.upper)
            and fine >= bracket.lower - cfg.tol_abs
            and shifted <= bracket.upper + cfg.tol_abs + cfg.tol_rel * bracket.upper
            and l2_norm(P) <= bracket.lower * (1 + cfg.tol_rel)
        ):
            violations.append([n, m])
    return [
        VerdictReport.exact(
            not violations, lhs=len(violations), rhs=0,
            check_id="trig_poly.bracket_consistency", anchor=check_brackets.anchor, space="torus",
            seed=cfg.seed, inputs={"samples": samples, "violations": violations},
        )
    ]


@register_check("trig_poly.bh_ratio", MODULE, "hypercontractive Bohnenblust-Hille functional against the sup norm")
def check_bh_ratio(cfg: RunConfig):
    rng = np.random.default_rng([cfg.seed, 104])
    reports = []
    for n, m in ((2, 1), (2, 2), (3, 2), (2, 3)):
        P = _random_poly(rng, n, m, analytic=True)
        bracket = refined_sup_bracket(P, cfg.grid_cap, starts=2, seed=cfg.seed)
        constant = cfg.constant_C ** math.sqrt(m * math.log(m)) if m > 1 else 1.0
        reports.append(
            VerdictReport.build(
                bh_functional(P, m), constant, bracket.lower, bracket.upper,
                envelope=True, tol_abs=cfg.tol_abs, tol_rel=cfg.tol_rel,
                check_id="trig_poly.bh_ratio", anchor=check_bh_ratio.anchor, space="torus",
                m=m, n=n, seed=cfg.seed, provenance={"bracket": bracket.method},
            )
        )
    return reports
