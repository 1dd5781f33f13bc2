# src/sequences/checks.py

import numpy as np

from src.multipliers.bracket import Space, sidon_estimate
from src.multipliers.verdicts import VerdictReport
from src.reports.registry import register_check
from src.reports.run_config import RunConfig
from src.sequences.bohr import bohr_radius_upper
from src.sequences.monomial import MEMBER, NON_MEMBER, boolean_mon_necessary, dirichlet_sigma_test, mon_criterion, rearrangement_claim_check
from src.sequences.rearrangement import decreasing_rearrangement, weak_lq_norm

MODULE = "sequences"


def _classification_report(check, verdict, expected: str, cfg: RunConfig, **inputs) -> VerdictReport:
    return VerdictReport.exact(
        verdict.classification == expected,
        lhs=verdict.tail_max,
        rhs=1.0,
        check_id=check.check_id,
        anchor=check.anchor,
        seed=cfg.seed,
        inputs={**inputs, "expected": expected, **verdict.to_dict()},
        notes=list(verdict.notes),
    )


@register_check("sequences.rearrangement_invariance", MODULE, "z* and weak-l_q norms ignore order and signs")
def check_rearrangement(cfg: RunConfig):
    rng = np.random.default_rng([cfg.seed, 401])
    cases = 20 if cfg.quick else 200
    failures = 0
    for _ in range(cases):
        x = rng.normal(size=int(rng.integers(1, 200)))
        shuffled = rng.permutation(x) * rng.choice(np.array([-1.0, 1.0]), size=x.size)
        a, b = decreasing_rearrangement(x).values, decreasing_rearrangement(shuffled).values
        if not np.array_equal(a, b) or np.any(np.diff(a) > 0):
            failures += 1
        elif weak_lq_norm(x, 2.0) != weak_lq_norm(shuffled, 2.0):
            failures += 1
    return [
        VerdictReport.exact(
            failures == 0, lhs=failures, rhs=0,
            check_id="sequences.rearrangement_invariance", anchor=check_rearrangement.anchor,
            seed=cfg.seed, inputs={"cases": cases},
        )
    ]


@register_check("sequences.mon_examples", MODULE, "limsup (1/log n) sum (z*_j)^2 < 1 classifies monomial convergence")
def check_mon_examples(cfg: RunConfig):
    N = 10_000 if cfg.quick else 100_000
    j = np.arange(1, N + 1, dtype=float)
    finite = np.zeros(N)
    finite[:3] = 1.0
    cases = [
        ("c/sqrt(j), c=0.8", 0.8 / np.sqrt(j), MEMBER),
        ("c/sqrt(j), c=1.2", 1.2 / np.sqrt(j), NON_MEMBER),
        ("finite support", finite, MEMBER),
    ]
    reports = []
    for name, z, expected in cases:
        verdict = mon_criterion(z, N, cfg.delta, cfg.trend_tol)
        reports.append(_classification_report(check_mon_examples, verdict, expected, cfg, sequence=name))
    return reports


@register_check("sequences.dirichlet_sigma", MODULE, "p_j^(-sigma) is a monomial-convergence point iff sigma >= 1/2")
def check_dirichlet(cfg: RunConfig):
    if cfg.quick:
        J, cases = 100_000, [(0.6, MEMBER), (0.4, NON_MEMBER)]
    else:
        J, cases = 1_000_000, [(0.55, MEMBER), (0.45, NON_MEMBER)]
    reports = []
    for sigma, expected in cases:
        verdict = dirichlet_sigma_test(sigma, J, cfg.delta, cfg.trend_tol)
        reports.append(_classification_report(check_dirichlet, verdict, expected, cfg, sigma=sigma, J=J))
    return reports


@register_check("sequences.boolean_necessary", MODULE, "necessary conditions for monomial convergence on the cube")
def check_boolean_necessary(cfg: RunConfig):
    N = 10_000 if cfg.quick else 100_000
    j = np.arange(1, N + 1, dtype=float)
    reports = []
    for name, x, should_violate in (("1/j", 1.0 / j, False), ("constant 1", np.ones(N), True)):
        result = boolean_mon_necessary(x, growth_slope=cfg.growth_slope)
        reports.append(
            VerdictReport.exact(
                result.violates_necessity == should_violate,
                lhs=max(result.slopes.values()),
                rhs=cfg.growth_slope,
                check_id="sequences.boolean_necessary",
                anchor=check_boolean_necessary.anchor,
                space="boolean",
                n=N,
                inputs={"sequence": name, **result.to_dict()},
            )
        )
    return reports


@register_check("sequences.rearrangement_claim", MODULE, "(r_m^2+...+r_N^2)^m / m! <= sum_{|S|=m} r_S^2")
def check_rearrangement_claim(cfg: RunConfig):
    rng = np.random.default_rng([cfg.seed, 402])
    cases = 50 if cfg.quick else 500
    failed = []
    for k in range(cases):
        N = int(rng.integers(1, 13))
        m = None if k % 10 == 0 else int(rng.integers(1, min(N, 3) + 1))
        r = np.sort(rng.uniform(0.01, 1.0, size=N))[::-1]
        report = rearrangement_claim_check(r, m, N)
        if report.verdict.value != "verified":
            failed.append({"N": N, "m": report.m, "r": r.tolist()})
    ones_ok = all(
        rearrangement_claim_check(np.ones(N), m, N).verdict.value == "verified"
        for N in range(1, 13)
        for m in range(1, min(N, 3) + 1)
    )
    return [
        VerdictReport.exact(
            not failed, lhs=len(failed), rhs=0,
            check_id="sequences.rearrangement_claim", anchor=check_rearrangement_claim.anchor,
            space="boolean", seed=cfg.seed, inputs={"cases": cases, "failures": failed[:5]},
        ),
        VerdictReport.exact(
            ones_ok, lhs=0 if ones_ok else 1, rhs=0,
            check_id="sequences.rearrangement_claim", anchor=check_rearrangement_claim.anchor,
            space="boolean", inputs={"sequence": "r = 1"},
        ),
    ]


@register_check("sequences.bohr_radius", MODULE, "K_n <= chi(m, n)^(-1/m)")
def check_bohr(cfg: RunConfig):
    reports = []
    for m, n in ((2, 2), (2, 4), (3, 3)):
        estimate = sidon_estimate(Space.torus(m, n, homogeneous=True), 1.0, cfg.budget, cfg.seed, cfg.constant_gamma,
                                  cfg.candidates_per_unit, cfg.grid_cap, cfg.enum_cap, cfg.workers)
        bound = bohr_radius_upper(n, m, estimate.bracket)
        reports.append(
            VerdictReport.exact(
                bound.bound <= 1.0, lhs=bound.bound, rhs=1.0,
                check_id="sequences.bohr_radius", anchor=check_bohr.anchor,
                space="torus(=)", m=m, n=n, p=1.0, seed=cfg.seed,
                inputs=bound.to_dict(), provenance={"bracket": estimate.bracket.method},
            )
        )
    return reports
