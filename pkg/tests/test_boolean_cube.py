# tests/test_boolean_cube.py

from fractions import Fraction

import numpy as np
import pytest
from pytest import approx

from src.boolean_cube.checks import check_cube_lower_bound, check_exact_sidon, check_majority, check_roundtrip, check_two_norm
from src.boolean_cube.exact_norms import exact_multiplier_norm, multiplier_norm_boolean_exact
from src.boolean_cube.majority import majority, majority_level1_coeff, majority_level1_report
from src.boolean_cube.walsh import (
    BooleanFunction,
    bh_functional_boolean,
    cube_points,
    degree,
    homogeneous_part,
    popcounts,
    sup_norm_boolean,
    wht_forward,
    wht_forward_exact,
    wht_inverse,
)
from src.multipliers.verdicts import Verdict
from src.utils.errors import DomainError


class TestWalshTransform:
    def test_character_has_single_coefficient(self):
        f = BooleanFunction.character(4, 0b1010)
        expected = np.zeros(16)
        expected[0b1010] = 1.0
        assert f.walsh == approx(expected, abs=1e-15)

    def test_character_matches_points(self):
        x = cube_points(3)
        f = BooleanFunction.character(3, 0b101)
        assert f.truth_table.tolist() == (x[:, 0] * x[:, 2]).tolist()

    def test_roundtrip(self):
        table = np.random.default_rng(1).normal(size=1 << 10)
        assert wht_inverse(wht_forward(table)) == approx(table, abs=1e-12)

    def test_batched_rows(self):
        rows = np.random.default_rng(2).normal(size=(5, 32))
        batched = wht_forward(rows)
        for row, got in zip(rows, batched):
            assert got == approx(wht_forward(row), abs=1e-14)

    def test_length_must_be_power_of_two(self):
        with pytest.raises(DomainError):
            wht_forward(np.ones(6))

    def test_exact_mode(self):
        assert wht_forward_exact([1, 1, 1, -1]) == [Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(-1, 2)]
        with pytest.raises(DomainError):
            wht_forward_exact([0.5, 1.0])

    def test_popcounts(self):
        assert popcounts(3).tolist() == [0, 1, 1, 2, 1, 2, 2, 3]


class TestBooleanFunction:
    def test_from_sparse_walsh(self):
        f = BooleanFunction.from_walsh({0b01: 1.0, 0b11: 0.5}, N=2)
        assert f.truth_table == approx([1.5, -1.5, 0.5, -0.5])
        with pytest.raises(DomainError):
            BooleanFunction.from_walsh({1: 1.0})

    def test_degree_and_sup(self):
        f = BooleanFunction.from_walsh({0b011: 1.0, 0b100: -2.0}, N=3)
        assert degree(f) == 2
        assert sup_norm_boolean(f) == approx(3.0)
        assert degree(BooleanFunction(2, np.zeros(4))) == 0

    def test_bh_functional(self):
        assert bh_functional_boolean(BooleanFunction.character(3, 0b111), 3) == approx(1.0)
        with pytest.raises(DomainError):
            bh_functional_boolean(BooleanFunction.character(1, 1), 0)

    def test_file_format(self, tmp_path):
        f = majority(3)
        back = BooleanFunction.read(f.write(tmp_path / "maj.txt", mode="walsh"))
        assert back.truth_table == approx(f.truth_table)
        with pytest.raises(DomainError):
            BooleanFunction.from_lines(["2 truth", "1", "1"])


class TestMajority:
    def test_majority_three_expansion(self):
        assert majority(3).walsh_exact() == [0, Fraction(1, 2), Fraction(1, 2), 0, Fraction(1, 2), 0, 0, Fraction(-1, 2)]

    @pytest.mark.parametrize("N, expected", [(1, Fraction(1)), (3, Fraction(1, 2)), (5, Fraction(3, 8)), (7, Fraction(5, 16))])
    def test_level1_coefficient(self, N, expected):
        assert majority_level1_coeff(N) == expected
        assert all(majority(N).walsh_exact()[1 << j] == expected for j in range(N))

    def test_level1_report(self):
        report = majority_level1_report(3)
        assert report.exact == Fraction(1, 2)
        assert report.ratio == approx(0.5 / (np.sqrt(2 / np.pi) / np.sqrt(3)))

    def test_sign_valued_and_unit_energy(self):
        f = majority(5)
        assert f.is_sign_valued()
        assert f.level_weights().sum() == approx(1.0)
        assert f.level_weights()[2] == approx(0.0, abs=1e-15)

    def test_even_N_rejected(self):
        with pytest.raises(DomainError):
            majority(4)

    def test_homogeneous_part(self):
        level1 = homogeneous_part(majority(3), 1)
        assert sup_norm_boolean(level1) == approx(1.5)
        assert degree(level1) == 1


class TestExactNorms:
    def test_sidon_constant_of_two_dimensional_cube(self):
        result = exact_multiplier_norm(np.ones(4), 1, 2)
        assert result.value == approx(2.0)
        assert set(np.abs(result.vertex)) == {1.0}

    def test_p_two_gives_max_weight(self):
        xi = {0: 0.3, 3: -1.7, 5: 0.2}
        assert multiplier_norm_boolean_exact(xi, 2, 3) == approx(1.7)

    def test_workers_agree(self):
        xi = np.random.default_rng(7).normal(size=16)
        assert exact_multiplier_norm(xi, 1, 4, workers=1).value == exact_multiplier_norm(xi, 1, 4, workers=4).value

    def test_limits(self):
        with pytest.raises(DomainError):
            exact_multiplier_norm(np.ones(32), 1, 5)
        with pytest.raises(DomainError):
            exact_multiplier_norm(np.ones(4), 0.5, 2)


class TestChecks:
    @pytest.mark.parametrize("check", [check_roundtrip, check_majority, check_exact_sidon, check_two_norm, check_cube_lower_bound])
    def test_suite_verifies(self, check, quick_config):
        assert all(r.verdict is Verdict.VERIFIED for r in check(quick_config))
