"""Eisenstein series, eta quotients, character series, identity suites."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mirrormeasure import (
    CHI_MINUS3,
    CHI_MINUS4,
    LEGENDRE5,
    QUARTIC5_WEIGHT1,
    QUARTIC5_WEIGHT3,
    CharSeq,
    EtaQuotient,
    IdentityStructureError,
    character_eisenstein,
    eisenstein,
    eta_quotient_as_series,
    eta_quotient_series,
    g1_of_q,
    identity_suite,
    product_one_minus_powers,
    rational,
    resolve_example,
    verify_identity,
)


def rat(n, d=1):
    return rational(n) / rational(d)


class TestEisenstein:
    def test_e4_head(self):
        e4 = eisenstein(4, 2)
        assert e4.coefficients == (rat(1), rat(240), rat(2160))

    def test_e2_head(self):
        e2 = eisenstein(2, 2)
        assert e2.coefficients == (rat(1), rat(-24), rat(-72))

    def test_e6_first_coefficient(self):
        assert eisenstein(6, 1)[1] == -504

    def test_unsupported_weight(self):
        with pytest.raises(ValueError):
            eisenstein(8, 5)


class TestEtaQuotient:
    def test_level3_quotient_head(self):
        lead, unit = eta_quotient_series(EtaQuotient(((1, 12), (3, -12))), 2)
        assert lead == -1
        assert unit.coefficients == (rat(1), rat(-12), rat(54))

    def test_level2_quotient_lead(self):
        lead, _ = eta_quotient_series(EtaQuotient(((1, 24), (2, -24))), 1)
        assert lead == -1

    def test_empty_quotient(self):
        lead, unit = eta_quotient_series(EtaQuotient(()), 3)
        assert lead == 0
        assert unit.coefficients == (rat(1), rat(0), rat(0), rat(0))

    def test_leading_exponent_formula(self):
        eq = EtaQuotient(((1, 3), (6, 9), (2, -3), (3, -9)))
        assert eq.leading_exponent == 1

    def test_as_series_needs_integer_exponent(self):
        with pytest.raises(IdentityStructureError):
            eta_quotient_as_series(EtaQuotient(((1, 1),)), 5)  # lead 1/24

    def test_as_series_rejects_poles(self):
        with pytest.raises(IdentityStructureError):
            eta_quotient_as_series(EtaQuotient(((1, -24),)), 5)  # lead -1

    def test_validation(self):
        with pytest.raises(ValueError):
            EtaQuotient(((0, 2),))

    @given(st.integers(1, 5), st.integers(-4, 4), st.integers(5, 30))
    @settings(max_examples=40, deadline=None)
    def test_rescale_matches_direct_product(self, k, m, order):
        # eta(q^k) unit part == the unit part of eta(q) with q -> q^k
        _, direct = eta_quotient_series(EtaQuotient(((k, m),)), order)
        _, base = eta_quotient_series(EtaQuotient(((1, m),)), order)
        assert direct == base.rescale(k)


class TestCharacterSeries:
    def test_chi_minus3_values(self):
        assert [CHI_MINUS3(n) for n in range(1, 7)] == [1, -1, 0, 1, -1, 0]

    def test_chi_minus4_values(self):
        assert [CHI_MINUS4(n) for n in range(1, 9)] == [1, 0, -1, 0, 1, 0, -1, 0]

    def test_legendre5_values(self):
        assert [LEGENDRE5(n) for n in range(1, 6)] == [1, -1, -1, 1, 0]

    def test_quartic_combos(self):
        assert [QUARTIC5_WEIGHT1(n) for n in range(5)] == [0, 3, 1, -1, -3]
        assert [QUARTIC5_WEIGHT3(n) for n in range(5)] == [0, 2, 1, -1, -2]

    def test_weight1_head(self):
        s = character_eisenstein(CHI_MINUS3, 1, 6, 4)
        assert s.coefficients == (rat(1), rat(6), rat(0), rat(6), rat(6))

    def test_weight3_chi4_first_coefficient(self):
        assert character_eisenstein(CHI_MINUS4, 3, -4, 1)[1] == -4

    def test_zero_character(self):
        zero = CharSeq(2, (0, 0))
        s = character_eisenstein(zero, 3, 17, 5)
        assert s.coefficients == (rat(1),) + (rat(0),) * 5

    def test_charseq_validation(self):
        with pytest.raises(ValueError):
            CharSeq(3, (0, 1))


class TestVerifyIdentity:
    def test_identical_series_pass(self):
        e4 = eisenstein(4, 10)
        check = verify_identity(e4, e4, 10, "same")
        assert check.passed and check.status == "pass"

    def test_first_mismatch_reported(self):
        check = verify_identity(eisenstein(4, 5), eisenstein(6, 5), 5, "E4 vs E6")
        assert check.status == "mismatch"
        assert check.mismatch_order == 1
        assert check.lhs_coefficient == 240
        assert check.rhs_coefficient == -504

    def test_order_precondition(self):
        with pytest.raises(ValueError):
            verify_identity(eisenstein(4, 5), eisenstein(4, 9), 9)

    def test_eta_product_identity_chi3(self):
        n = 100
        lhs = character_eisenstein(CHI_MINUS3, 3, -9, n)
        rhs = eta_quotient_as_series(EtaQuotient(((1, 9), (3, -3))), n)
        assert verify_identity(lhs, rhs, n).passed

    def test_eta_product_identity_chi4(self):
        n = 100
        lhs = character_eisenstein(CHI_MINUS4, 3, -4, n)
        rhs = eta_quotient_as_series(EtaQuotient(((1, 4), (2, 6), (4, -4))), n)
        assert verify_identity(lhs, rhs, n).passed

    def test_fourth_power_of_g1_is_e4(self):
        n = 100
        g1 = g1_of_q(resolve_example(1).spec, n)
        assert verify_identity(g1**4, eisenstein(4, n), n).passed


class TestIdentitySuite:
    @pytest.mark.parametrize("example_id", range(1, 7))
    def test_suites_pass_at_order_40(self, example_id):
        report = identity_suite(example_id, 40)
        assert report.passed, [
            (c.label, c.status) for c in report.checks if c.status == "mismatch"
        ]

    def test_example5_has_exactly_one_caveat(self):
        report = identity_suite(5, 40)
        assert len(report.caveats) == 1
        assert "sign" in report.caveats[0].note

    def test_other_examples_have_no_caveats(self):
        for example_id in (1, 2, 3, 4, 6):
            assert identity_suite(example_id, 30).caveats == ()

    def test_unknown_example(self):
        with pytest.raises(KeyError):
            identity_suite(9, 30)

    def test_dynkin_alias_accepted(self):
        report = identity_suite("E6", 20)
        assert report.example_id == 3 and report.passed


@given(st.integers(2, 40))
@settings(max_examples=20, deadline=None)
def test_eta_unit_is_product_of_one_minus(order):
    # eta(q) unit part is exactly prod (1 - q^n)
    _, unit = eta_quotient_series(EtaQuotient(((1, 1),)), order)
    assert unit == product_one_minus_powers([1] * order, order)
