# tests/test_index_sets.py

from math import comb

import pytest
from pytest import approx

from src.index_sets.certificates import binomial_bounds_check, stirling_bound_check, surprise_certificate
from src.index_sets.checks import check_binomial, check_counting_identity, check_family_counts, check_surprise
from src.index_sets.multi_index import FamilyKind, IndexFamily, MultiIndex, count_exact, enumerate_family
from src.multipliers.verdicts import Verdict
from src.utils.errors import CapExceededError, DomainError


class TestCounting:
    def test_lambda_le_example(self):
        assert count_exact("lambda-le", 2, 3) == 10

    def test_lambda_eq_closed_form(self):
        for m in range(0, 8):
            for n in range(1, 8):
                assert count_exact(FamilyKind.LAMBDA_EQ, m, n) == comb(m + n - 1, m)

    def test_lambda_le_is_sum_of_levels(self):
        for m in range(1, 7):
            for n in range(1, 7):
                levels = sum(count_exact(FamilyKind.LAMBDA_EQ, k, n) for k in range(m + 1))
                assert count_exact(FamilyKind.LAMBDA_LE, m, n) == levels

    @pytest.mark.parametrize(
        "kind, m, n, expected",
        [
            ("tset", 1, 1, 3),
            ("tset", 2, 2, 13),
            ("subsets-eq", 2, 4, 6),
            ("subsets-le", 2, 4, 11),
            ("subsets-eq", 5, 3, 0),
        ],
    )
    def test_other_kinds(self, kind, m, n, expected):
        assert count_exact(kind, m, n) == expected

    def test_bad_arguments(self):
        with pytest.raises(DomainError):
            count_exact("lambda-le", -1, 2)
        with pytest.raises(DomainError):
            count_exact("lambda-le", 2, 0)
        with pytest.raises(DomainError):
            FamilyKind.parse("simplex")


class TestEnumeration:
    def test_graded_lex_order(self):
        family = enumerate_family(FamilyKind.LAMBDA_LE, 1, 2)
        assert family.members == [(0, 0), (0, 1), (1, 0)]

    def test_subset_masks(self):
        family = enumerate_family(FamilyKind.SUBSETS_EQ, 2, 3)
        assert family.members == [0b011, 0b101, 0b110]
        assert family.as_array().tolist() == [[1, 1, 0], [1, 0, 1], [0, 1, 1]]

    @pytest.mark.parametrize("kind", list(FamilyKind))
    def test_counts_match_and_canonical(self, kind):
        family = enumerate_family(kind, 3, 3)
        assert len(family) == count_exact(kind, 3, 3)
        assert family.is_canonical()
        assert len(set(family.members)) == len(family)

    def test_signed_family_contains_negative_indices(self):
        family = enumerate_family(FamilyKind.T_SET, 2, 2)
        assert (1, -1) in family.position()
        assert (-2, 0) in family.position()
        assert all(sum(abs(a) for a in alpha) <= 2 for alpha in family)

    def test_cap_carries_would_be_size(self):
        with pytest.raises(CapExceededError) as exc:
            enumerate_family(FamilyKind.LAMBDA_LE, 2, 3, cap=5)
        assert exc.value.would_be == 10
        assert exc.value.cap == 5

    def test_file_format(self, tmp_path):
        family = enumerate_family(FamilyKind.T_SET, 2, 2)
        path = family.write(tmp_path / "tset.txt")
        assert path.read_text().splitlines()[0] == f"TSet 2 2 {len(family)}"
        assert IndexFamily.read(path).members == family.members

    def test_bad_file_header(self):
        with pytest.raises(DomainError):
            IndexFamily.from_lines(["LambdaLE 2 3"])

    def test_multi_index_order(self):
        a, b, c = MultiIndex(entries=(0, 2)), MultiIndex(entries=(1, 0)), MultiIndex(entries=(1, 1))
        assert sorted([c, a, b]) == [b, a, c]
        assert a.order == 2 and a.is_analytic


class TestCertificates:
    def test_surprise_bracket(self):
        cert = surprise_certificate(3, 4)
        assert cert.exact_count == 35
        assert float(cert.lower) <= float(cert.mid) <= float(cert.upper)
        assert float(cert.mid) == approx(35 ** (1 / 6))

    def test_surprise_needs_positive_args(self):
        with pytest.raises(DomainError):
            surprise_certificate(0, 3)

    def test_binomial_bound(self):
        report = binomial_bounds_check(10, 3)
        assert report.holds
        assert report.rhs == 120

    def test_stirling_bound(self):
        report = stirling_bound_check(5, 7)
        assert report.holds
        assert report.lhs == comb(11, 5)


class TestChecks:
    def test_registered_checks_verify(self, quick_config):
        for check in (check_counting_identity, check_family_counts, check_surprise, check_binomial):
            reports = check(quick_config)
            assert reports
            assert all(r.verdict is Verdict.VERIFIED for r in reports)
            assert all(r.check_id == check.check_id for r in reports)
