"""Exact fits, family experiments, and the corpus harness."""

import json
from fractions import Fraction

import pytest

from braidax import (
    BraidWord,
    CoefficientSequence,
    ExchangeForm,
    ExperimentError,
    FitError,
    axis_sequence,
    corpus_check,
    fit_polynomial,
    joint_cycle_check,
    load_corpus,
    progression_check,
    second_difference_target,
    squared_family_check,
    two_cycle_check,
)
from braidax.experiments import joint_cycle_target


class TestFitPolynomial:
    def seq(self, values, m_start=0, degree=3):
        return CoefficientSequence(degree, m_start, tuple(values))

    def test_constant(self):
        fit = fit_polynomial(self.seq((5, 5, 5)), 1)
        assert fit.coeffs == (Fraction(5), Fraction(0))

    def test_squares(self):
        fit = fit_polynomial(self.seq((0, 1, 4, 9, 16)), 2)
        assert fit.coeffs == (Fraction(0), Fraction(0), Fraction(1))

    def test_offset_quadratic(self):
        # samples of 2m^2 - 3m + 1 taken from m = -2
        values = [2 * m * m - 3 * m + 1 for m in range(-2, 3)]
        fit = fit_polynomial(self.seq(values, m_start=-2), 2)
        assert fit.coeffs == (Fraction(1), Fraction(-3), Fraction(2))

    def test_second_difference_of_quadratic_is_twice_leading(self):
        values = [7 * m * m + 2 * m - 4 for m in range(-1, 4)]
        second = [values[i + 2] - 2 * values[i + 1] + values[i] for i in range(3)]
        assert set(second) == {14}
        fit = fit_polynomial(self.seq(values, m_start=-1), 2)
        assert fit.coefficient(2) == 7

    def test_rejects_underdetermined(self):
        with pytest.raises(ExperimentError):
            fit_polynomial(self.seq((1, 2, 3)), 2)

    def test_fit_failure_names_offender(self):
        with pytest.raises(FitError) as exc:
            fit_polynomial(self.seq((0, 1, 4, 9, 99)), 2)
        assert exc.value.offending_m == 4

    def test_rational_coefficients(self):
        # m(m-1)/2 has a fractional leading coefficient
        values = [m * (m - 1) // 2 for m in range(5)]
        fit = fit_polynomial(self.seq(values), 2)
        assert fit.coefficient(2) == Fraction(1, 2)


class TestAxisSequence:
    def test_singleton_range(self, engine):
        form = ExchangeForm(4, BraidWord(4, (1,)), BraidWord(4, (3,)))
        seq = axis_sequence(form, False, [0], 4, engine)
        assert len(seq.values) == 1
        assert seq.m_values == (0,)

    def test_requires_contiguous_range(self, engine):
        form = ExchangeForm(4, BraidWord(4, (1,)), BraidWord(4, (3,)))
        with pytest.raises(ExperimentError):
            axis_sequence(form, False, [0, 2], 4, engine)

    def test_regression_baseline(self, engine):
        # frozen from the engine's own first verified run; guards against drift
        form = ExchangeForm(4, BraidWord(4, (1,)), BraidWord(4, (3,)))
        seq = axis_sequence(form, False, range(-2, 3), 4, engine)
        assert seq.values == (8, 5, 4, 5, 8)


class TestProgressionCheck:
    def test_default_family(self, engine):
        report = progression_check(engine=engine)
        assert report.passed
        assert report.expected["abs_difference"] == 1
        assert report.computed["constant"]

    def test_excluded_middle_case(self, engine):
        from braidax import canonical_odd_knot_braid

        report = progression_check(canonical_odd_knot_braid(5), engine=engine)
        assert report.passed
        assert report.expected["abs_difference"] == 0
        assert set(report.computed["differences"]) == {0}

    def test_rejects_link_seed(self, engine):
        form = ExchangeForm(4, BraidWord(4, (1,)), BraidWord(4, (3,)))
        with pytest.raises(Exception):
            progression_check(form, engine=engine)


class TestSecondDifferenceTargets:
    @pytest.mark.parametrize(
        "n,target", [(5, -40), (7, 56), (9, -144), (11, 176), (13, -312), (15, 360)]
    )
    def test_closed_form(self, n, target):
        assert second_difference_target(n) == target

    def test_rejects_even(self):
        with pytest.raises(ExperimentError):
            second_difference_target(6)


class TestJointCycleTargets:
    @pytest.mark.parametrize("n,target", [(4, 2), (5, 2), (6, 18), (7, 8), (8, 50), (9, 18)])
    def test_closed_form(self, n, target):
        assert joint_cycle_target(n) == target


class TestFamilyChecks:
    def test_dn_n5(self, engine):
        report = squared_family_check(5, engine=engine)
        assert report.passed
        assert report.computed["second_differences"] == [-40]

    def test_lemma64_22(self, engine):
        report = two_cycle_check(2, 2, engine=engine)
        assert report.passed
        assert report.computed["quadratic_sum"] == "2"
        assert report.computed["family_cubic"] == "0"
        assert report.computed["even_in_m"]

    def test_eq54_n4(self, engine):
        report = joint_cycle_check(4, engine=engine)
        assert report.passed
        assert report.computed["direct_quadratic"] == "2"

    def test_eq54_n5_both_deletions(self, engine):
        report = joint_cycle_check(5, engine=engine)
        assert report.passed
        assert report.computed["deletion_choices_agree"]
        assert report.computed["delete_with_strand_3_quadratic"] == "2"
        assert report.computed["delete_other_quadratic"] == "2"


class TestCorpus:
    def test_bundled_has_95_rows(self):
        assert len(load_corpus()) == 95

    def test_row_6_1(self):
        rows = dict(load_corpus())
        assert rows["6_1"] == "-3 -3 -2 1 1 2 -1 3 -2"

    def test_row_8_15(self):
        rows = dict(load_corpus())
        assert rows["8_15"] == "-3 -3 -2 -2 -3 -1 -1 2 -1"

    def test_check_passes(self):
        report = corpus_check()
        assert report.passed
        assert report.computed == {"rows": 95, "failures": 0}

    def test_check_reports_bad_rows(self, tmp_path):
        path = tmp_path / "corpus.tsv"
        path.write_text("knot\tword\nX\t1 3 1 3\nY\t1 9 1\n")
        report = corpus_check(path)
        assert not report.passed
        assert report.computed["failures"] == 2


class TestReports:
    def test_json_deterministic_and_runtime_free(self, engine):
        r1 = squared_family_check(5, engine=engine)
        r2 = squared_family_check(5, engine=engine)
        assert r1.to_json() == r2.to_json()
        data = json.loads(r1.to_json())
        assert "runtime" not in data
        assert data["passed"] is True

    def test_tsv_shape(self, engine):
        text = squared_family_check(5, engine=engine).to_tsv()
        lines = text.strip().split("\n")
        assert lines[0] == "experiment\tdn"
        assert "passed\tTrue" in lines
        assert all("\t" in ln for ln in lines)
