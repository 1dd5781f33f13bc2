# src/ksz_lab/checks.py

import math

import numpy as np

from src.ksz_lab.boolean_search import ksz_boolean_search
from src.ksz_lab.trials import exhaustive_small_mean, ksz_constant_sweep, ksz_trig_trial
from src.multipliers.verdicts import VerdictReport
from src.reports.registry import register_check
from src.reports.run_config import RunConfig

MODULE = "ksz_lab"

GOLDEN_SQUARE = (3 + math.sqrt(5)) / 2


@register_check("ksz_lab.exhaustive_small", MODULE, "E sup|e_-1 conj(z) + e_0 + e_1 z| = (3+sqrt5)/2")
def check_exhaustive_small(cfg: RunConfig):
    T = 10_000 if cfg.quick else 100_000
    trial = ksz_trig_trial(1, 1, None, T, cfg.seed, cfg.grid_cap, cfg.workers)
    exact_mean = exhaustive_small_mean()
    sampled_gap = abs(trial.mean_sup - GOLDEN_SQUARE) / GOLDEN_SQUARE
    exact_gap = abs(exact_mean - GOLDEN_SQUARE) / GOLDEN_SQUARE
    common = dict(check_id="ksz_lab.exhaustive_small", anchor=check_exhaustive_small.anchor, space="torus(T)", m=1, n=1, seed=cfg.seed)
    return [
        VerdictReport.exact(
            sampled_gap <= 0.02, lhs=trial.mean_sup, rhs=GOLDEN_SQUARE,
            inputs={"trials": T, "relative_gap": sampled_gap, "error_bar": trial.error_bar}, **common,
        ),
        VerdictReport.exact(
            exact_gap <= 1e-4, lhs=exact_mean, rhs=GOLDEN_SQUARE,
            inputs={"patterns": 8, "relative_gap": exact_gap}, **common,
        ),
    ]


@register_check("ksz_lab.sweep_stability", MODULE, "E sup|sum eps c z^alpha| ~ sqrt(n log(1+m)) ||c||_2")
def check_sweep(cfg: RunConfig):
    ms, ns = ([1, 2], [1, 2]) if cfg.quick else (list(range(1, 9)), [1, 2, 3])
    trials = 20 if cfg.quick else 200
    frame = ksz_constant_sweep(ms, ns, trials, cfg.seed, grid_cap=cfg.grid_cap, workers=cfg.workers)
    ratios = frame["mean_ratio"].dropna()
    spread = float(ratios.max() / ratios.min())
    return [
        VerdictReport.exact(
            spread <= 3.0, lhs=spread, rhs=3.0,
            check_id="ksz_lab.sweep_stability", anchor=check_sweep.anchor, space="torus(T)", seed=cfg.seed,
            inputs={"ms": ms, "ns": ns, "trials": trials, "mean_ratios": ratios.round(6).tolist()},
            notes=["spread of the fitted constant across cells"],
        )
    ]


@register_check("ksz_lab.single_coefficient", MODULE, "a single signed monomial has sup |c|")
def check_single(cfg: RunConfig):
    trial = ksz_trig_trial(2, 2, {(1, -1): 2.5}, 8, cfg.seed, cfg.grid_cap)
    gap = float(np.max(np.abs(trial.midpoints - 2.5)))
    return [
        VerdictReport.exact(
            gap <= 1e-9, lhs=trial.mean_sup, rhs=2.5,
            check_id="ksz_lab.single_coefficient", anchor=check_single.anchor, space="torus(T)", m=2, n=2,
            seed=cfg.seed, inputs={"max_gap": gap},
        )
    ]


@register_check("ksz_lab.boolean_search", MODULE, "min over signs of sup|sum xi_S c_S x^S| <= 6 sqrt(log 2) sqrt(N) ||c||_2")
def check_boolean_search(cfg: RunConfig):
    N = 8
    T = 1000 if cfg.quick else 10_000
    result = ksz_boolean_search(np.ones(1 << N), N, T, cfg.seed)
    report = result.report
    report.check_id = "ksz_lab.boolean_search"
    report.anchor = check_boolean_search.anchor
    return [report]
