# src/boolean_cube/checks.py

import math
from fractions import Fraction

import numpy as np

from src.boolean_cube.exact_norms import exact_multiplier_norm
from src.boolean_cube.majority import majority, majority_level1_coeff, majority_level1_report
from src.boolean_cube.walsh import wht_forward, wht_inverse
from src.multipliers.verdicts import VerdictReport
from src.reports.registry import register_check
from src.reports.run_config import RunConfig

MODULE = "boolean_cube"


@register_check("boolean_cube.wht_roundtrip", MODULE, "Fourier-Walsh expansion and Parseval")
def check_roundtrip(cfg: RunConfig):
    rng = np.random.default_rng([cfg.seed, 201])
    top = 10 if cfg.quick else 16
    worst_roundtrip = 0.0
    worst_parseval = 0.0
    for N in range(0, top + 1):
        table = rng.normal(size=1 << N)
        walsh = wht_forward(table)
        worst_roundtrip = max(worst_roundtrip, float(np.max(np.abs(wht_inverse(walsh) - table))))
        energy = float(np.mean(table**2))
        worst_parseval = max(worst_parseval, abs(float(np.sum(walsh**2)) - energy) / energy)
    common = dict(check_id="boolean_cube.wht_roundtrip", anchor=check_roundtrip.anchor, space="boolean", seed=cfg.seed)
    return [
        VerdictReport.build(worst_roundtrip, 1.0, 1e-12, 1e-12, tol_abs=0.0, tol_rel=0.0, inputs={"N_max": top, "what": "roundtrip"}, **common),
        VerdictReport.build(worst_parseval, 1.0, 1e-10, 1e-10, tol_abs=0.0, tol_rel=0.0, inputs={"N_max": top, "what": "parseval"}, **common),
    ]


@register_check("boolean_cube.majority_level1", MODULE, "level-1 coefficient of majority")
def check_majority(cfg: RunConfig):
    mismatches = []
    for N in (1, 3, 5, 7, 9, 11):
        exact = majority(N).walsh_exact()
        if any(exact[1 << j] != majority_level1_coeff(N) for j in range(N)):
            mismatches.append(N)
    fixed = majority_level1_coeff(3) == Fraction(1, 2) and majority_level1_coeff(5) == Fraction(3, 8)
    return [
        VerdictReport.exact(
            fixed and not mismatches, lhs=len(mismatches), rhs=0,
            check_id="boolean_cube.majority_level1", anchor=check_majority.anchor, space="boolean",
            inputs={"mismatches": mismatches, "asymptotic_ratio_N3": majority_level1_report(3).ratio},
            notes=["the sqrt(2/pi)/sqrt(N) expression is asymptotic; the exact value is rational"],
        )
    ]


@register_check("boolean_cube.exact_sidon", MODULE, "p-Sidon constants of the full cube by vertex enumeration")
def check_exact_sidon(cfg: RunConfig):
    reports = []
    for N, p, expected in ((1, 1, 1.0), (2, 1, 2.0), (2, 2, 1.0), (3, 2, 1.0)):
        value = exact_multiplier_norm(np.ones(1 << N), p, N, workers=cfg.workers).value
        reports.append(
            VerdictReport.exact(
                abs(value - expected) <= 1e-9, lhs=value, rhs=expected,
                check_id="boolean_cube.exact_sidon", anchor=check_exact_sidon.anchor, space="boolean",
                n=N, p=float(p), inputs={"expected": expected},
            )
        )
    return reports


@register_check("boolean_cube.two_norm_multipliers", MODULE, "multipliers into l_2 have norm max |xi_S|")
def check_two_norm(cfg: RunConfig):
    rng = np.random.default_rng([cfg.seed, 202])
    worst = 0.0
    for _ in range(10 if cfg.quick else 40):
        N = int(rng.integers(1, 4))
        xi = rng.normal(size=1 << N)
        value = exact_multiplier_norm(xi, 2, N).value
        worst = max(worst, abs(value - float(np.max(np.abs(xi)))))
    return [
        VerdictReport.build(
            worst, 1.0, 1e-9, 1e-9, tol_abs=0.0, tol_rel=0.0,
            check_id="boolean_cube.two_norm_multipliers", anchor=check_two_norm.anchor, space="boolean",
            p=2.0, seed=cfg.seed, inputs={"worst_abs_error": worst},
        )
    ]


@register_check("boolean_cube.multiplier_lower_bound", MODULE, "||xi||_2 / (2 sqrt2 e^2 sqrt(1+N log 2)) <= ||M_xi: B_N -> l_1||")
def check_cube_lower_bound(cfg: RunConfig):
    rng = np.random.default_rng([cfg.seed, 203])
    bank = 10 if cfg.quick else 50
    reports = []
    for N in (2, 3):
        worst_ratio = 0.0
        failures = 0
        for _ in range(bank):
            xi = rng.normal(size=1 << N) * (rng.random(1 << N) < 0.8)
            norm = exact_multiplier_norm(xi, 1, N, workers=cfg.workers).value
            constant = 2 * math.sqrt(2) * math.e**2 * math.sqrt(1 + N * math.log(2))
            lhs = float(np.linalg.norm(xi))
            if lhs > constant * norm * (1 + cfg.tol_rel) + cfg.tol_abs:
                failures += 1
            if norm > 0:
                worst_ratio = max(worst_ratio, lhs / (constant * norm))
        reports.append(
            VerdictReport.exact(
                failures == 0, lhs=worst_ratio, rhs=1.0,
                check_id="boolean_cube.multiplier_lower_bound", anchor=check_cube_lower_bound.anchor,
                space="boolean", n=N, p=1.0, seed=cfg.seed, inputs={"bank": bank, "failures": failures},
            )
        )
    return reports
