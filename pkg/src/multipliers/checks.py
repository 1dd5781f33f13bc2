# src/multipliers/checks.py

import numpy as np

from src.multipliers.bracket import MultiplierSpec, Space, growth_slope, multiplier_norm_bracket, sidon_estimate
from src.multipliers.diagonal import diagonal_norm, holder_attainer, lp_norm, sampled_diagonal_sup, two_summing_norm
from src.multipliers.exponents import conjecture_range, exponents
from src.multipliers.kislyakov import kislyakov_check, monomial_weights
from src.multipliers.verdicts import VerdictReport
from src.reports.registry import register_check
from src.reports.run_config import RunConfig

MODULE = "multipliers"


@register_check("multipliers.diagonal_identity", MODULE, "pi_2(M_xi) = ||D_xi: l_2 -> l_p|| = ||xi||_r")
def check_diagonal(cfg: RunConfig):
    rng = np.random.default_rng([cfg.seed, 301])
    count = 20 if cfg.quick else 200
    samples = 1000 if cfg.quick else 10_000
    reports = []
    for p in (1.0, 4.0 / 3.0, 2.0):
        worst_excess = 0.0
        worst_gap = 0.0
        for _ in range(count):
            xi = rng.normal(size=int(rng.integers(1, 51)))
            value = diagonal_norm(xi, p)
            worst_excess = max(worst_excess, sampled_diagonal_sup(xi, p, samples, rng) - value)
            attained = lp_norm(holder_attainer(xi, p) * np.abs(xi), p)
            worst_gap = max(worst_gap, abs(attained - value), abs(two_summing_norm(xi, p) - value))
        reports.append(
            VerdictReport.build(
                max(worst_excess, worst_gap), 1.0, 1e-9, 1e-9, tol_abs=0.0, tol_rel=0.0,
                check_id="multipliers.diagonal_identity", anchor=check_diagonal.anchor,
                p=p, seed=cfg.seed,
                inputs={"weights": count, "samples": samples, "sampled_excess": worst_excess, "attainer_gap": worst_gap},
            )
        )
    return reports


@register_check("multipliers.exponent_identities", MODULE, "interpolation exponents and (m-1)/s = m/r - 1/2")
def check_exponents(cfg: RunConfig):
    rng = np.random.default_rng([cfg.seed, 302])
    samples = 1000 if cfg.quick else 10_000
    failures = []
    for _ in range(samples):
        m = int(rng.integers(1, 12))
        top = float(conjecture_range(m))
        p = 1.0 + rng.random() * (top - 1.0)
        theta = rng.random()
        bundle = exponents(p, m, theta)
        if 1 / bundle.p_theta != (1 - bundle.theta) + bundle.theta / 2 or bundle.p_theta > 2:
            failures.append(["p_theta", m, p, theta])
    # m = 1 collapses the range to the single point p = 1
    if exponents(1, 1).beta_m != 1:
        failures.append(["beta endpoints", 1])
    for m in range(2, 12):
        if exponents(1, m).beta_m != 1 or exponents(conjecture_range(m), m).beta_m != 0:
            failures.append(["beta endpoints", m])
    if exponents(2, 2, conjecture=False).inv_r != 0 or exponents(1, 2).s != 2.0:
        failures.append(["fixed values"])
    return [
        VerdictReport.exact(
            not failures, lhs=len(failures), rhs=0,
            check_id="multipliers.exponent_identities", anchor=check_exponents.anchor,
            seed=cfg.seed, inputs={"samples": samples, "failures": failures[:10]},
        )
    ]


@register_check("multipliers.bracket_soundness", MODULE, "||M_xi|| in [best candidate ratio, ||xi||_r]")
def check_bracket(cfg: RunConfig):
    rng = np.random.default_rng([cfg.seed, 303])
    spaces = [Space.torus(1, 3), Space.torus(2, 2), Space.torus(2, 3, homogeneous=True), Space.boolean(5, 2), Space.boolean(3)]
    reports = []
    for k, space in enumerate(spaces):
        for p in (1.0, 1.5):
            family = space.family(cfg.enum_cap)
            xi = rng.normal(size=len(family)) * (rng.random(len(family)) < 0.7)
            spec = MultiplierSpec(space, family, xi, p)
            bracket = multiplier_norm_bracket(spec, cfg.budget, cfg.seed + k, cfg.candidates_per_unit, cfg.grid_cap, cfg.workers)
            expected_upper = two_summing_norm(spec.xi, p)
            exact_cube = bracket.method == "exact-vertex"
            holds = bracket.lower <= bracket.upper and (exact_cube or bracket.upper == expected_upper)
            reports.append(
                VerdictReport.exact(
                    holds, lhs=bracket.lower, rhs=bracket.upper,
                    check_id="multipliers.bracket_soundness", anchor=check_bracket.anchor,
                    space=space.label, m=space.m, n=space.n, p=p, seed=cfg.seed,
                    provenance={"bracket": bracket.method}, notes=bracket.notes,
                )
            )
    return reports


@register_check("multipliers.sidon_sanity", MODULE, "chi_p = 1 for p >= 2 and for linear polynomials")
def check_sidon_sanity(cfg: RunConfig):
    cases = [(Space.torus(m, n), p) for p in (2.0, 3.0) for m in (1, 2) for n in (1, 2, 3)]
    cases += [(Space.torus(1, n, homogeneous=True), 1.0) for n in range(1, 9)]
    worst = 0.0
    for space, p in cases:
        est = sidon_estimate(space, p, cfg.budget, cfg.seed, cfg.constant_gamma, cfg.candidates_per_unit, cfg.grid_cap, cfg.enum_cap, cfg.workers)
        worst = max(worst, abs(est.bracket.lower - 1.0), abs(est.bracket.upper - 1.0))
    boolean = sidon_estimate(Space.boolean(2), 1.0, workers=cfg.workers).bracket
    return [
        VerdictReport.build(
            worst, 1.0, 1e-6, 1e-6, tol_abs=0.0, tol_rel=0.0,
            check_id="multipliers.sidon_sanity", anchor=check_sidon_sanity.anchor, space="torus",
            inputs={"cases": len(cases)},
        ),
        VerdictReport.exact(
            abs(boolean.lower - 2.0) <= 1e-9 and abs(boolean.upper - 2.0) <= 1e-9, lhs=boolean.lower, rhs=2.0,
            check_id="multipliers.sidon_sanity", anchor=check_sidon_sanity.anchor, space="boolean(N=2)", n=2, p=1.0,
        ),
    ]


@register_check("multipliers.sidon_growth", MODULE, "chi_1 of m-homogeneous polynomials grows like n^((m-1)/2)")
def check_sidon_growth(cfg: RunConfig):
    m, ns = 2, [2, 4, 8, 16]
    estimates = [
        sidon_estimate(Space.torus(m, n, homogeneous=True), 1.0, cfg.budget, cfg.seed, cfg.constant_gamma,
                       cfg.candidates_per_unit, cfg.grid_cap, cfg.enum_cap, cfg.workers)
        for n in ns
    ]
    lowers = [e.bracket.lower for e in estimates]
    slope = growth_slope(ns, lowers, m)
    target = (m - 1) / 2
    inside = 0.7 * target <= slope <= 1.3 * target
    return [
        VerdictReport.exact(
            inside, lhs=slope, rhs=target,
            check_id="multipliers.sidon_growth", anchor=check_sidon_growth.anchor,
            space="torus(=)", m=m, p=1.0, seed=cfg.seed,
            inputs={"ns": ns, "lowers": lowers, "envelopes": [e.envelope for e in estimates], "band": [0.7 * target, 1.3 * target]},
            notes=["slope outside the band is a failed trend, not a disproof"] if not inside else [],
        )
    ]


@register_check("multipliers.inequality_checks", MODULE, "multiplier inequalities on the torus and the cube")
def check_inequalities(cfg: RunConfig):
    reports = []

    def run(space, xi, p, mode, z=None):
        spec = MultiplierSpec.build(space, xi, p, cap=cfg.enum_cap)
        if z is not None:
            spec = MultiplierSpec(space, spec.family, monomial_weights(spec, z), p)
        bracket = multiplier_norm_bracket(spec, cfg.budget, cfg.seed, cfg.candidates_per_unit, cfg.grid_cap, cfg.workers)
        report = kislyakov_check(spec, mode, bracket, cfg.constant_C, z=z, tol_abs=cfg.tol_abs, tol_rel=cfg.tol_rel)
        report.check_id = "multipliers.inequality_checks"
        report.seed = cfg.seed
        reports.append(report)

    run(Space.torus(2, 2), {(1, 1): 1.0}, 1.0, "torus")
    run(Space.torus(1, 2), None, 1.0, "torus")
    run(Space.torus(2, 2), None, 1.0, "torus_envelope")
    run(Space.torus(2, 2), None, 1.0, "torus_support_envelope")
    run(Space.torus(2, 3), None, 1.2, "torus_interpolated")
    run(Space.boolean(2), None, 1.0, "cube")
    run(Space.boolean(6, 2), None, 1.0, "cube_degree")
    rng = np.random.default_rng([cfg.seed, 304])
    run(Space.torus(2, 4, homogeneous=True), None, 1.0, "rearrangement", z=rng.uniform(0.2, 1.0, 4))
    run(Space.boolean(6, 2, homogeneous=True), None, 1.0, "cube_rearrangement", z=rng.uniform(0.2, 1.0, 6))
    return reports
