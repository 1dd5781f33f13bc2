# tests/test_trig_poly.py

import math

import numpy as np
import pytest
from pytest import approx

from src.index_sets.multi_index import FamilyKind, enumerate_family
from src.multipliers.verdicts import Verdict
from src.trig_poly.ascent import phase_ascent
from src.trig_poly.checks import check_bh_ratio, check_brackets, check_fft, check_parseval
from src.trig_poly.grid import (
    GridSpec,
    NormBracket,
    curvature_factor,
    eval_grid,
    eval_grid_batch,
    grid_batch_max,
    grid_max,
    refined_sup_bracket,
    sup_norm_bracket,
)
from src.trig_poly.polynomial import TrigPolynomial, bh_functional, eval_point, eval_points, l2_norm
from src.utils.errors import CapExceededError, CertificateError, DomainError


def _one_plus_z():
    return TrigPolynomial(1, 1, {(0,): 1.0, (1,): 1.0})


class TestPolynomial:
    def test_monomial_value(self):
        P = TrigPolynomial.monomial((1, 0))
        assert eval_point(P, (math.pi / 2, 0.0)) == approx(1j)

    def test_from_family_drops_zeros(self):
        family = enumerate_family(FamilyKind.LAMBDA_LE, 1, 2)
        P = TrigPolynomial.from_family(family, [0.0, 2.0, 0.0])
        assert P.coeffs == {(0, 1): 2 + 0j}
        with pytest.raises(DomainError):
            TrigPolynomial.from_family(family, [1.0])

    def test_degree_bound_enforced(self):
        with pytest.raises(DomainError):
            TrigPolynomial(2, 1, {(1, 1): 1.0})

    def test_views(self):
        P = TrigPolynomial(2, 2, {(1, -1): 3.0, (0, 1): -4.0})
        assert P.degree() == 2
        assert not P.is_analytic()
        assert P.l1_norm() == approx(7.0)
        assert l2_norm(P) == approx(5.0)

    def test_bh_functional(self):
        P = TrigPolynomial(2, 1, {(1, 0): 1.0, (0, 1): 1.0})
        assert bh_functional(P, 1) == approx(2.0)
        Q = TrigPolynomial(2, 2, {(1, 1): 3.0, (2, 0): 4.0})
        assert bh_functional(Q, 2) == approx((3 ** (4 / 3) + 4 ** (4 / 3)) ** 0.75)

    def test_bh_functional_rejects_bad_input(self):
        with pytest.raises(DomainError):
            bh_functional(TrigPolynomial(1, 1, {(-1,): 1.0}), 1)
        with pytest.raises(DomainError):
            bh_functional(TrigPolynomial(1, 2, {(2,): 1.0}), 1)

    def test_record_file(self, tmp_path):
        P = TrigPolynomial(2, 2, {(1, -1): 1 + 2j, (0, 0): -0.5})
        assert TrigPolynomial.read(P.write(tmp_path / "p.jsonl")).coeffs == P.coeffs


class TestGrid:
    def test_fft_matches_direct_summation(self):
        rng = np.random.default_rng(3)
        family = enumerate_family(FamilyKind.T_SET, 3, 2)
        P = TrigPolynomial.from_family(family, rng.normal(size=len(family)))
        grid = GridSpec(9, 2)
        fast = eval_grid(P, grid).reshape(-1)
        nodes = np.array(np.unravel_index(np.arange(grid.total), (9, 9))).T
        assert fast == approx(eval_points(P, 2 * np.pi * nodes / 9), abs=1e-10)

    def test_batch_agrees_with_single(self):
        rng = np.random.default_rng(4)
        family = enumerate_family(FamilyKind.LAMBDA_LE, 2, 2)
        rows = rng.normal(size=(3, len(family)))
        alphas = family.as_array()
        values = eval_grid_batch(alphas, rows, 11)
        for row, got in zip(rows, values):
            P = TrigPolynomial.from_family(family, row)
            assert got == approx(eval_grid(P, GridSpec(11, 2)).reshape(-1), abs=1e-10)
        assert grid_batch_max(alphas, rows, 11) == approx(np.abs(values).max(axis=1))

    def test_bernstein_bracket(self):
        bracket = sup_norm_bracket(_one_plus_z())
        assert bracket.lower == approx(2.0)
        assert bracket.upper == approx(4.0)
        assert bracket.K == 21
        assert bracket.certified

    def test_refined_bracket_collapses_when_l1_is_attained(self):
        bracket = refined_sup_bracket(_one_plus_z())
        assert bracket.lower == approx(2.0)
        assert bracket.upper == approx(2.0)

    def test_cap_and_heuristic_mode(self):
        P = TrigPolynomial(6, 3, {(1, 1, 1, 0, 0, 0): 1.0, (0, 0, 0, 1, 1, 1): 1.0})
        with pytest.raises(CapExceededError) as exc:
            sup_norm_bracket(P)
        assert exc.value.would_be == 61**6
        bracket = sup_norm_bracket(P, heuristic=True, heuristic_K=4)
        assert bracket.method == "uncertified"
        assert not bracket.certified
        assert bracket.lower <= 2.0 + 1e-12 and bracket.upper == approx(2.0)

    def test_curvature_factor(self):
        assert curvature_factor(1, 1, 3) is None
        assert curvature_factor(1, 1, 100) == approx(1 / math.sqrt(1 - 2 * math.pi**2 / 1e4))

    def test_bracket_must_be_interval(self):
        with pytest.raises(CertificateError):
            NormBracket(2.0, 1.0, "manual")

    def test_shifted_grid_may_fall_below_lower_end(self):
        bracket = sup_norm_bracket(_one_plus_z())
        shifted, _ = grid_max(_one_plus_z(), GridSpec(bracket.K, 1), offset=[math.pi / bracket.K])
        assert shifted == approx(2 * math.cos(math.pi / (2 * bracket.K)))
        assert shifted < bracket.lower
        assert shifted <= bracket.upper


class TestAscent:
    def test_finds_peak_from_origin(self):
        P = TrigPolynomial(2, 1, {(0, 0): 1.0, (1, 0): 1.0, (0, 1): 1.0})
        assert phase_ascent(P, starts=1).value == approx(3.0)

    def test_climbs_from_random_starts(self):
        P = TrigPolynomial(1, 1, {(0,): 1.0, (1,): -1.0})
        result = phase_ascent(P, starts=3, iters=10, seed=5)
        assert result.value == approx(2.0, rel=1e-6)

    def test_worker_count_does_not_change_result(self):
        rng = np.random.default_rng(6)
        family = enumerate_family(FamilyKind.LAMBDA_LE, 2, 3)
        P = TrigPolynomial.from_family(family, rng.normal(size=len(family)))
        single = phase_ascent(P, starts=4, seed=1, workers=1)
        threaded = phase_ascent(P, starts=4, seed=1, workers=4)
        assert single.value == threaded.value
        assert single.start == threaded.start

    def test_rejects_empty_search(self):
        P = TrigPolynomial(1, 1, {(1,): 1.0})
        with pytest.raises(DomainError):
            phase_ascent(P, starts=0)
        with pytest.raises(DomainError):
            phase_ascent(P, iters=0)


class TestChecks:
    @pytest.mark.parametrize("check", [check_parseval, check_fft, check_brackets])
    def test_suite_verifies(self, check, quick_config):
        assert all(r.verdict is Verdict.VERIFIED for r in check(quick_config))

    def test_bh_envelope_never_refutes(self, quick_config):
        reports = check_bh_ratio(quick_config)
        assert len(reports) == 4
        assert all(r.verdict is not Verdict.COUNTEREXAMPLE for r in reports)
