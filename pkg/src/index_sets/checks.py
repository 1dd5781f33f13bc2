# src/index_sets/checks.py

from math import comb

from src.index_sets.certificates import binomial_bounds_check, stirling_bound_check, surprise_certificate
from src.index_sets.multi_index import FamilyKind, count_exact, enumerate_family
from src.multipliers.verdicts import VerdictReport
from src.reports.registry import register_check
from src.reports.run_config import RunConfig

MODULE = "index_sets"


@register_check("index_sets.counting_identity", MODULE, "cardinality of degree-<=m analytic index sets")
def check_counting_identity(cfg: RunConfig):
    top = 6 if cfg.quick else 12
    mismatches = []
    for m in range(1, top + 1):
        for n in range(1, top + 1):
            listed = len(enumerate_family(FamilyKind.LAMBDA_LE, m, n, cap=cfg.enum_cap))
            formula = sum(comb(k + n - 1, k) for k in range(m + 1))
            if not listed == formula == count_exact(FamilyKind.LAMBDA_LE, m, n):
                mismatches.append([m, n, listed, formula])
    return [
        VerdictReport.exact(
            not mismatches,
            lhs=len(mismatches),
            rhs=0,
            check_id="index_sets.counting_identity",
            anchor=check_counting_identity.anchor,
            space="LambdaLE",
            inputs={"m_max": top, "n_max": top, "mismatches": mismatches},
        )
    ]


@register_check("index_sets.family_counts", MODULE, "cardinalities of homogeneous, signed and subset families")
def check_family_counts(cfg: RunConfig):
    top = 4 if cfg.quick else 6
    reports = []
    for kind in FamilyKind:
        mismatches = []
        for m in range(0, top + 1):
            for n in range(1, top + 1):
                family = enumerate_family(kind, m, n, cap=cfg.enum_cap)
                if len(family) != count_exact(kind, m, n) or not family.is_canonical():
                    mismatches.append([m, n])
        if kind is FamilyKind.LAMBDA_EQ:
            closed = all(count_exact(kind, m, n) == comb(m + n - 1, m) for m in range(31) for n in range(1, 31))
            if not closed:
                mismatches.append("closed form")
        reports.append(
            VerdictReport.exact(
                not mismatches,
                lhs=len(mismatches),
                rhs=0,
                check_id="index_sets.family_counts",
                anchor=check_family_counts.anchor,
                space=kind.value,
                inputs={"max": top, "mismatches": mismatches},
            )
        )
    return reports


@register_check("index_sets.surprise_certificate", MODULE, "two-sided bound on |Lambda_LE(m,n)|^(1/2m)")
def check_surprise(cfg: RunConfig):
    top = 10 if cfg.quick else 30
    tightest_lower = float("inf")
    tightest_upper = float("inf")
    for m in range(1, top + 1):
        for n in range(1, top + 1):
            cert = surprise_certificate(m, n)
            tightest_lower = min(tightest_lower, float(cert.mid / cert.lower))
            tightest_upper = min(tightest_upper, float(cert.upper / cert.mid))
    return [
        VerdictReport.exact(
            True,
            lhs=1.0,
            rhs=min(tightest_lower, tightest_upper),
            check_id="index_sets.surprise_certificate",
            anchor=check_surprise.anchor,
            space="LambdaLE",
            inputs={"m_max": top, "n_max": top, "min_mid_over_lower": tightest_lower, "min_upper_over_mid": tightest_upper},
        )
    ]


@register_check("index_sets.binomial_bounds", MODULE, "(N/k)^k <= C(N,k) and the Stirling-type bound")
def check_binomial(cfg: RunConfig):
    top = 12 if cfg.quick else 40
    failures = [
        [r.name, r.inputs]
        for r in (
            [binomial_bounds_check(N, k) for N in range(1, top + 1) for k in range(1, N + 1)]
            + [stirling_bound_check(m, n) for m in range(1, top + 1) for n in range(1, top + 1)]
        )
        if not r.holds
    ]
    return [
        VerdictReport.exact(
            not failures,
            lhs=len(failures),
            rhs=0,
            check_id="index_sets.binomial_bounds",
            anchor=check_binomial.anchor,
            inputs={"max": top, "failures": failures},
        )
    ]

