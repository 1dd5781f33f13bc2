# tests/test_multipliers.py

import math
from fractions import Fraction

import numpy as np
import pytest
from pytest import approx

from src.multipliers.bracket import (
    MultiplierSpec,
    Space,
    growth_slope,
    multiplier_norm_bracket,
    rearrangement_lower_bound,
    sidon_envelope,
    sidon_estimate,
)
from src.multipliers.checks import (
    check_bracket,
    check_diagonal,
    check_exponents,
    check_inequalities,
    check_sidon_growth,
    check_sidon_sanity,
)
from src.index_sets.multi_index import FamilyKind
from src.multipliers.diagonal import diagonal_norm, holder_attainer, lp_norm, sampled_diagonal_sup
from src.multipliers.exponents import conjecture_range, exponents, inv_r, r_exponent
from src.multipliers.kislyakov import MODES, kislyakov_check, monomial_weights, rearrangement_lhs
from src.multipliers.verdicts import Verdict, VerdictReport, classify
from src.trig_poly.grid import NormBracket
from src.utils.errors import DomainError


class TestDiagonal:
    def test_known_values(self):
        assert diagonal_norm([3, 4], 1) == approx(5.0)
        assert diagonal_norm([3, -4], 2) == approx(4.0)
        assert diagonal_norm([1, 1], 4 / 3) == approx(2 ** 0.25)
        assert diagonal_norm([], 1) == 0.0

    @pytest.mark.parametrize("p", [1.0, 1.2, 4 / 3, 2.0, 3.0])
    def test_attainer_reaches_norm(self, p):
        xi = np.random.default_rng(3).normal(size=12)
        mu = holder_attainer(xi, p)
        assert np.linalg.norm(mu) == approx(1.0)
        assert lp_norm(mu * np.abs(xi), p) == approx(diagonal_norm(xi, p))

    def test_sampling_never_exceeds_norm(self):
        rng = np.random.default_rng(4)
        xi = rng.normal(size=8)
        assert sampled_diagonal_sup(xi, 1.0, 2000, rng) <= diagonal_norm(xi, 1.0) + 1e-12


class TestExponents:
    def test_r_exponent(self):
        assert inv_r(1) == Fraction(1, 2)
        assert r_exponent(4 / 3) == approx(4.0)
        assert math.isinf(r_exponent(2))
        assert math.isinf(r_exponent(math.inf))
        with pytest.raises(DomainError):
            inv_r(0.5)

    def test_endpoints_of_the_range(self):
        low = exponents(1, 2)
        assert low.theta_m == 0 and low.beta_m == 1 and low.s == approx(2.0)
        high = exponents(Fraction(4, 3), 2)
        assert high.theta_m == 1 and high.beta_m == 0 and math.isinf(high.s)

    def test_degree_one_range_is_a_point(self):
        assert conjecture_range(1) == 1
        assert exponents(1, 1).beta_m == 1

    def test_identities_hold_exactly(self):
        b = exponents(Fraction(6, 5), 3)
        assert (b.m - 1) * b.inv_s == b.m * b.inv_r - Fraction(1, 2)
        assert Fraction(b.m - 1, 2) * b.beta_m == b.growth

    def test_p_theta(self):
        b = exponents(1, 1, theta=Fraction(1, 2))
        assert b.p_theta == Fraction(4, 3)

    def test_domain(self):
        with pytest.raises(DomainError):
            exponents(1.5, 2)
        with pytest.raises(DomainError):
            exponents(1, 0)
        with pytest.raises(DomainError):
            exponents(1, 2, theta=2)
        assert exponents(3, 2, conjecture=False).beta_m is None


class TestVerdicts:
    def test_trichotomy(self):
        assert classify(1.0, 1.0, 1.0, 2.0) is Verdict.VERIFIED
        assert classify(1.5, 1.0, 1.0, 2.0) is Verdict.INCONCLUSIVE
        assert classify(3.0, 1.0, 1.0, 2.0) is Verdict.COUNTEREXAMPLE
        assert classify(1.0 + 1e-13, 1.0, 1.0, 1.0) is Verdict.VERIFIED

    def test_envelope_never_refutes(self):
        report = VerdictReport.build(3.0, 1.0, 1.0, 2.0, envelope=True, check_id="x")
        assert report.verdict is Verdict.INCONCLUSIVE
        assert any("envelope" in note for note in report.notes)

    def test_exact_and_entry(self):
        report = VerdictReport.exact(False, lhs=np.float64(2.0), rhs=1, inputs={"v": np.arange(2)})
        assert report.verdict is Verdict.COUNTEREXAMPLE
        entry = report.to_entry()
        assert entry["verdict"] == "counterexample"
        assert entry["inputs"] == {"v": [0, 1]}
        assert report.ratio == approx(2.0)


class TestSpaces:
    def test_family_kinds(self):
        assert Space.torus(2, 3).family_kind is FamilyKind.LAMBDA_LE
        assert Space.torus(2, 3, homogeneous=True).family_kind is FamilyKind.LAMBDA_EQ
        assert Space.torus(2, 3, analytic=False).family_kind is FamilyKind.T_SET
        assert Space.boolean(4, 2, homogeneous=True).family_kind is FamilyKind.SUBSETS_EQ
        assert Space.boolean(3).is_full_cube
        with pytest.raises(DomainError):
            Space.torus(2, 2, homogeneous=True, analytic=False)

    def test_spec_validation(self):
        space = Space.torus(1, 2)
        with pytest.raises(DomainError):
            MultiplierSpec.build(space, {(5, 5): 1.0}, 1.0)
        with pytest.raises(DomainError):
            MultiplierSpec(space, space.family(), [1.0], 1.0)
        with pytest.raises(DomainError):
            MultiplierSpec.build(space, None, 0.5)


class TestBracket:
    def test_linear_torus(self):
        spec = MultiplierSpec.build(Space.torus(1, 3), None, 1.0)
        bracket = multiplier_norm_bracket(spec, budget=1, seed=0)
        assert bracket.lower == approx(1.0)
        assert bracket.upper == approx(2.0)

    def test_full_cube_is_exact(self):
        bracket = multiplier_norm_bracket(MultiplierSpec.build(Space.boolean(2), None, 1.0))
        assert bracket.method == "exact-vertex"
        assert bracket.lower == approx(2.0) and bracket.upper == approx(2.0)

    def test_zero_weights(self):
        bracket = multiplier_norm_bracket(MultiplierSpec.build(Space.torus(2, 2), 0.0, 1.0))
        assert bracket.upper == 0.0

    def test_workers_do_not_change_result(self):
        spec = MultiplierSpec.build(Space.boolean(6, 2), None, 1.0)
        one = multiplier_norm_bracket(spec, budget=3, seed=5, workers=1)
        many = multiplier_norm_bracket(spec, budget=3, seed=5, workers=3)
        assert one.lower == many.lower and one.upper == many.upper


class TestSidon:
    def test_closed_forms(self):
        est = sidon_estimate(Space.torus(2, 2), 2.0)
        assert (est.bracket.lower, est.bracket.upper) == (1.0, 1.0)
        assert sidon_estimate(Space.torus(1, 5), 1.0).bracket.method == "closed-form"

    def test_envelope_and_certified_lower(self):
        assert sidon_envelope(2, 4, 1.0) == approx(math.e**2 * math.sqrt(2))
        assert rearrangement_lower_bound(Space.torus(2, 4), 1.0) is None
        assert rearrangement_lower_bound(Space.torus(2, 4, homogeneous=True), 1.0) > 0

    def test_growth_slope(self):
        assert growth_slope([2, 4, 8], [1.0, math.sqrt(2), 2.0], 2) == approx(0.5)


class TestInequalityChecks:
    def test_modes_cover_both_spaces(self):
        assert {kind for kind, _, _ in MODES.values()} == {"torus", "boolean"}
        assert {mode for mode, (_, env, _) in MODES.items() if env} == {"torus_envelope", "torus_support_envelope"}

    def test_torus_check_verifies(self):
        spec = MultiplierSpec.build(Space.torus(1, 2), None, 1.0)
        report = kislyakov_check(spec, "torus", NormBracket(1.0, 1.0, "closed-form"))
        assert report.verdict is Verdict.VERIFIED
        assert report.lhs == approx(math.sqrt(3))

    def test_envelope_check_is_inconclusive_when_exceeded(self):
        spec = MultiplierSpec.build(Space.torus(1, 2), None, 1.0)
        report = kislyakov_check(spec, "torus_envelope", NormBracket(1.0, 1.0, "closed-form"), constant_C=1e-6)
        assert report.verdict is Verdict.INCONCLUSIVE

    def test_mode_space_mismatch(self):
        spec = MultiplierSpec.build(Space.torus(1, 2), None, 1.0)
        with pytest.raises(DomainError):
            kislyakov_check(spec, "cube", NormBracket(1.0, 1.0, "closed-form"))
        with pytest.raises(DomainError):
            kislyakov_check(spec, "nope", NormBracket(1.0, 1.0, "closed-form"))
        with pytest.raises(DomainError):
            kislyakov_check(spec, "rearrangement", NormBracket(1.0, 1.0, "closed-form"))

    def test_rearrangement_lhs(self):
        assert rearrangement_lhs([1.0, 1.0], 1, 1.0) == (approx(1.0), 1)
        assert rearrangement_lhs([1.0, 1.0], 2, 1.0) == (approx(1.0), 2)

    def test_monomial_weights(self):
        spec = MultiplierSpec.build(Space.torus(2, 2, homogeneous=True), None, 1.0)
        assert sorted(monomial_weights(spec, [2.0, 3.0])) == approx([4.0, 6.0, 9.0])
        with pytest.raises(DomainError):
            monomial_weights(spec, [1.0])


class TestChecks:
    @pytest.mark.parametrize("check", [check_diagonal, check_exponents, check_bracket, check_sidon_sanity])
    def test_suite_verifies(self, check, quick_config):
        assert all(r.verdict is Verdict.VERIFIED for r in check(quick_config))

    @pytest.mark.slow
    def test_growth_trend(self, quick_config):
        (report,) = check_sidon_growth(quick_config)
        assert report.verdict is Verdict.VERIFIED

    @pytest.mark.slow
    def test_inequalities_have_no_counterexample(self, quick_config):
        reports = check_inequalities(quick_config)
        assert len(reports) == 9
        assert all(r.verdict is not Verdict.COUNTEREXAMPLE for r in reports)
