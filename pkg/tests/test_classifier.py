"""
Tests for radicand classification, hypothesis checklists and the index formula.
"""

import pytest
from pydantic import ValidationError

from quintessa.classifier import (
    classify,
    detect_case,
    hypothesis_check,
    normalize_radicand,
    predicted_structure,
    suggest_auxiliary_primes,
)
from quintessa.exceptions import DegenerateRadicand, InvalidArgument
from quintessa.models import ClassData
from quintessa.splitting import field_kind, split_in_k
from quintessa.utils.helpers import is_fifth_power_free


class TestNormalizeRadicand:
    @pytest.mark.parametrize("m,n", [(608, 19), (95, 95), (2**7 * 3**5 * 19, 4 * 19)])
    def test_strips_fifth_powers(self, m, n):
        assert normalize_radicand(m) == n

    def test_fifth_power_is_degenerate(self):
        with pytest.raises(DegenerateRadicand):
            normalize_radicand(32)

    @pytest.mark.parametrize("m", [1, 0, -7])
    def test_too_small(self, m):
        with pytest.raises(InvalidArgument):
            normalize_radicand(m)


class TestClassify:
    def test_case_one(self):
        report = classify(95)
        assert report.case.variant == "Case1"
        assert (report.case.e, report.case.p) == (1, 19)
        assert report.q_star == 1
        assert report.kind.kind == "First"
        assert report.lambda_ramified
        assert report.generators.primary == "⟨[P1], [L]^(1−τ²)⟩"
        assert "⟨[I], [L]^(1−τ²)⟩" in report.generators.alternates
        assert "⟨[P2], [L]^(1−τ²)⟩" in report.generators.alternates

    def test_case_two(self):
        report = classify(57)
        assert report.case.variant == "Case2"
        assert (report.case.p, report.case.e, report.case.q) == (19, 1, 3)
        assert report.q_star == 1
        assert report.kind.kind == "Second"
        assert not report.lambda_ramified
        assert "⟨[Q], [L]^(1−τ²)⟩" in report.generators.alternates

    def test_case_three(self):
        report = classify(149)
        assert report.case.variant == "Case3"
        assert (report.case.p, report.case.e) == (149, 1)
        assert report.q_star == 2
        assert report.generators.primary == "⟨[B1], [B2]⟩"
        assert report.generators.labels == ["B1", "B2", "B3", "B4", "B5"]
        assert report.generators.components["C+"] == "⟨[B1B2B3B4B5]⟩"

    def test_uncovered(self):
        report = classify(7)
        assert report.case.variant == "Uncovered"
        assert report.case.reason
        assert report.q_star is None
        assert report.generators.primary is None

    def test_auxiliary_prime_names_l(self):
        report = classify(95, l=11)
        # 11 splits in k0 and stays inert in the Kummer extension, so L carries an index
        assert report.generators.primary == "⟨[P1], [L1]^(1−τ²)⟩"
        assert report.auxiliary_prime == 11

    @pytest.mark.parametrize("l", [19, 4, 5])
    def test_invalid_auxiliary_prime(self, l):
        with pytest.raises(InvalidArgument):
            classify(95, l=l)

    def test_case_two_roles_by_residue(self):
        # 3 < 19 but 19 plays p
        case = detect_case(3 * 19)
        assert (case.p, case.q) == (19, 3)

    def test_evidence(self):
        case = detect_case(57)
        assert case.evidence == {
            "n_mod_25": 7, "p_mod_5": 4, "p_mod_25": 19, "q_mod_5": 3, "q_mod_25": 3,
        }

    @pytest.mark.parametrize("n", [5 * 149, 19 * 19 * 5 * 5, 2 * 3 * 19, 11, 5 * 29 * 29])
    def test_uncovered_forms(self, n):
        assert detect_case(n).variant == "Uncovered"

    def test_rejects_invalid_radicand(self):
        with pytest.raises(InvalidArgument):
            classify(2**5 * 19)

    def test_total_and_consistent(self):
        """Every radicand gets one variant; Case3 always has five primes over 5."""
        for n in range(2, 3000):
            if not is_fifth_power_free(n):
                continue
            case = detect_case(n)
            assert detect_case(n) == case
            if case.variant == "Case1":
                assert n % 5 == 0
            if case.variant in ("Case2", "Case3"):
                assert n % 5 != 0
            if case.variant == "Case3":
                assert field_kind(n).kind == "Second"
                assert len(split_in_k(5, n).entries) == 5


class TestHypothesisCheck:
    def test_case_one_flags(self):
        report = hypothesis_check(classify(95), l=2)
        names = [check.name for check in report.hypotheses]
        assert names == ["(5/19)_5 nontrivial", "(2/19)_5 nontrivial"]
        assert all(check.status == "FLAG" for check in report.hypotheses)
        assert all(check.computed == [0, 0] for check in report.hypotheses)
        assert report.auxiliary_prime == 2
        assert len(report.proof_symbols) == 2

    def test_case_two(self):
        report = hypothesis_check(classify(57), l=53)
        names = [check.name for check in report.hypotheses]
        assert names == ["(3/19)_5 nontrivial", "(53/19)_5 nontrivial"]
        assert all(check.status == "FLAG" for check in report.hypotheses)

    def test_case_three_needs_no_l(self):
        report = hypothesis_check(classify(149))
        assert [check.name for check in report.hypotheses] == ["(5/149)_5 nontrivial"]
        assert report.hypotheses[0].status == "FLAG"
        assert len(report.proof_symbols) == 2

    def test_proof_symbols_over_split_l(self):
        report = hypothesis_check(classify(95), l=11)
        # four primes over 11, each against pi1 and pi2
        assert len(report.proof_symbols) == 8
        for check in report.proof_symbols:
            assert check.status in ("PASS", "FLAG")
            assert (check.status == "FLAG") == (check.computed == [0])

    def test_missing_l(self):
        with pytest.raises(InvalidArgument):
            hypothesis_check(classify(95))

    def test_uncovered_unchanged(self):
        report = classify(7)
        assert hypothesis_check(report, l=2) == report


class TestSuggestAuxiliaryPrimes:
    def test_skips_five_p_and_q(self):
        candidates = suggest_auxiliary_primes(classify(57))
        assert [c.l for c in candidates] == [2, 7, 11, 13, 17]
        assert all(not c.nontrivial for c in candidates)

    def test_case_three_has_none(self):
        assert suggest_auxiliary_primes(classify(149)) == []


class TestPredictedStructure:
    def test_examples(self):
        verdict = predicted_structure(ClassData(u_value=125, h_gamma=5))
        assert verdict.v5_h_k == 2
        assert verdict.type_55_possible
        verdict = predicted_structure(ClassData(u_value=5, h_gamma=5))
        assert verdict.v5_h_k == 0
        assert not verdict.type_55_possible
        verdict = predicted_structure(ClassData(u_value=5**6, h_gamma=25))
        assert verdict.v5_h_k == 9
        assert not verdict.type_55_possible

    def test_exhaustive(self):
        for v5_u in range(7):
            for v5_h in range(4):
                verdict = predicted_structure(ClassData(u_value=5**v5_u, h_gamma=2 * 5**v5_h))
                expected = (v5_u, v5_h) == (3, 1)
                assert verdict.type_55_possible == expected
                assert verdict.solves_index_equation == expected
                assert verdict.v5_h_k == v5_u - 1 + 4 * (v5_h - 1)
                if expected:
                    assert verdict.v5_h_k == 2

    @pytest.mark.parametrize("u", [3, 10, 5**7])
    def test_unit_index_must_divide_5_6(self, u):
        with pytest.raises(InvalidArgument):
            predicted_structure(ClassData(u_value=u, h_gamma=5))

    def test_model_rejects_nonpositive(self):
        with pytest.raises(ValidationError):
            ClassData(u_value=0, h_gamma=5)
