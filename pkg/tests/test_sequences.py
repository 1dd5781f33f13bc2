# tests/test_sequences.py

import math

import numpy as np
import pytest
from pytest import approx

from src.multipliers.verdicts import Verdict
from src.sequences.bohr import bohr_radius_upper
from src.sequences.checks import (
    check_bohr,
    check_boolean_necessary,
    check_dirichlet,
    check_mon_examples,
    check_rearrangement,
    check_rearrangement_claim,
)
from src.sequences.monomial import (
    INCONCLUSIVE,
    MEMBER,
    NON_MEMBER,
    boolean_mon_necessary,
    dirichlet_sigma_test,
    geometric_grid,
    mon_criterion,
    rearrangement_claim_check,
)
from src.sequences.primes import first_primes, nth_prime_upper_bound, primes_up_to
from src.sequences.rearrangement import RealSequence, decreasing_rearrangement, weak_lq_norm
from src.trig_poly.grid import NormBracket
from src.utils.errors import DomainError


class TestRearrangement:
    def test_sorted_moduli(self):
        assert decreasing_rearrangement([1.0, -3.0, 2.0]).values.tolist() == [3.0, 2.0, 1.0]

    def test_weak_norm(self):
        assert weak_lq_norm([1.0, 1.0, 1.0, 1.0], 2.0) == approx(2.0)
        assert weak_lq_norm([], 1.0) == 0.0
        with pytest.raises(DomainError):
            weak_lq_norm([1.0], 0)

    def test_rejects_non_finite(self):
        with pytest.raises(DomainError):
            RealSequence([1.0, math.nan])


class TestPrimes:
    def test_sieve(self):
        assert primes_up_to(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
        assert primes_up_to(1).size == 0

    def test_first_primes_without_cache(self):
        primes = first_primes(1000, use_cache=False)
        assert primes.size == 1000
        assert primes[-1] == 7919
        assert nth_prime_upper_bound(1000) >= 7919


class TestMonCriterion:
    def test_grid(self):
        grid = geometric_grid(1000)
        assert grid[0] == 2 and grid[-1] == 1000
        assert np.all(np.diff(grid) > 0)

    def test_scaled_harmonic_examples(self):
        j = np.arange(1, 10_001, dtype=float)
        assert mon_criterion(0.8 / np.sqrt(j)).classification == MEMBER
        assert mon_criterion(1.2 / np.sqrt(j)).classification == NON_MEMBER

    def test_boundary_is_never_member(self):
        j = np.arange(1, 10_001, dtype=float)
        assert mon_criterion(1.0 / np.sqrt(j)).classification in (INCONCLUSIVE, NON_MEMBER)

    def test_finite_support(self):
        z = np.zeros(5000)
        z[:3] = 1.0
        verdict = mon_criterion(z)
        assert verdict.classification == MEMBER
        assert verdict.growth_trend is None

    def test_fast_growth_is_flagged(self):
        verdict = mon_criterion(np.full(5000, 0.5))
        assert verdict.classification == NON_MEMBER
        assert verdict.notes

    def test_short_input(self):
        with pytest.raises(DomainError):
            mon_criterion([1.0] * 5)

    def test_dirichlet(self):
        assert dirichlet_sigma_test(0.6, 10_000, use_cache=False).classification == MEMBER
        assert dirichlet_sigma_test(0.4, 10_000, use_cache=False).classification == NON_MEMBER
        with pytest.raises(DomainError):
            dirichlet_sigma_test(0.0, 100, use_cache=False)


class TestBooleanNecessary:
    def test_harmonic_passes(self):
        report = boolean_mon_necessary(1.0 / np.arange(1, 5001))
        assert not report.violates_necessity

    def test_constant_violates(self):
        report = boolean_mon_necessary(np.ones(5000))
        assert report.unbounded["l1_sqrt"]
        assert report.violates_necessity
        assert report.to_dict()["N_max"] == 5000

    def test_product_does_not_overflow(self):
        with np.errstate(over="raise"):
            report = boolean_mon_necessary(np.ones(5000))
        assert np.isfinite(report.trajectories["product"]).all()
        assert report.slopes["product"] > 100
        assert report.unbounded["product"]

    def test_grid_bounds(self):
        with pytest.raises(DomainError):
            boolean_mon_necessary(np.ones(10), N_grid=[1, 5])


class TestRearrangementClaim:
    def test_ones(self):
        report = rearrangement_claim_check([1, 1, 1], 2, 3)
        assert report.verdict is Verdict.VERIFIED
        assert (report.lhs, report.rhs_lower) == (approx(2.0), approx(3.0))

    def test_default_degree(self):
        report = rearrangement_claim_check([1, 1, 1], None, 3)
        assert report.m == 1
        assert report.verdict is Verdict.VERIFIED
        assert report.notes

    def test_domain(self):
        with pytest.raises(DomainError):
            rearrangement_claim_check([1, 2], 1, 2)
        with pytest.raises(DomainError):
            rearrangement_claim_check([1] * 15, 2, 15)
        with pytest.raises(DomainError):
            rearrangement_claim_check([1, 1], 1, 3)


class TestBohr:
    def test_bound(self):
        bound = bohr_radius_upper(4, 2, NormBracket(2.0, 3.0, "candidate-search"))
        assert bound.bound == approx(2 ** -0.5)
        assert bound.asymptotic == approx(math.sqrt(math.log(4) / 4))
        with pytest.raises(DomainError):
            bohr_radius_upper(4, 2, NormBracket(0.0, 1.0, "candidate-search"))


class TestChecks:
    @pytest.mark.parametrize(
        "check",
        [check_rearrangement, check_mon_examples, check_boolean_necessary, check_rearrangement_claim, check_bohr],
    )
    def test_suite_verifies(self, check, quick_config):
        assert all(r.verdict is Verdict.VERIFIED for r in check(quick_config))

    @pytest.mark.slow
    def test_dirichlet_suite(self, quick_config):
        assert all(r.verdict is Verdict.VERIFIED for r in check_dirichlet(quick_config))
