"""Truncated power series: exact arithmetic, composition, reversion."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mirrormeasure import QQ, TruncatedSeries, rational
from mirrormeasure.series_core import (
    series_exp,
    series_invert,
    series_log,
    series_mul,
    series_revert,
    series_xdx,
)


def S(*coeffs):
    return TruncatedSeries([rational(c) for c in coeffs])


def rat(n, d=1):
    return rational(n) / rational(d)


class TestConstruction:
    def test_order_and_coefficients(self):
        f = S(1, 2, 3)
        assert f.order == 2
        assert f.coefficients == (rat(1), rat(2), rat(3))
        assert f[0] == 1 and f[2] == 3

    def test_explicit_order_pads_with_zeros(self):
        f = TruncatedSeries([1, 2], order=4)
        assert f.coefficients == (rat(1), rat(2), rat(0), rat(0), rat(0))

    def test_explicit_order_truncates(self):
        f = TruncatedSeries([1, 2, 3, 4], order=1)
        assert f.coefficients == (rat(1), rat(2))

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            TruncatedSeries([1.5, 2])

    def test_index_out_of_range(self):
        with pytest.raises(IndexError):
            S(1, 2)[5]

    def test_constant_zero_identity(self):
        assert TruncatedSeries.constant(7, 3).coefficients == (rat(7),) + (rat(0),) * 3
        assert TruncatedSeries.zero(2).is_zero()
        assert TruncatedSeries.identity(2).coefficients == (rat(0), rat(1), rat(0))


class TestArithmetic:
    def test_product_truncates_to_min_order(self):
        # (1 + x + x^2)(1 + x) at mixed orders: result order is min(2, 1) = 1
        f = S(1, 1, 1)
        g = S(1, 1)
        assert (f * g).order == 1
        assert (f * g).coefficients == (rat(1), rat(2))

    def test_product_example(self):
        f = S(1, 1, 1)
        g = TruncatedSeries([1, 1], order=2)
        assert (f * g).coefficients == (rat(1), rat(2), rat(2))

    def test_add_scalar_and_series(self):
        f = S(1, 2)
        assert (f + 1).coefficients == (rat(2), rat(2))
        assert (1 + f).coefficients == (rat(2), rat(2))
        assert (f - 1).coefficients == (rat(0), rat(2))
        assert (1 - f).coefficients == (rat(0), rat(-2))

    def test_scalar_multiplication(self):
        f = S(1, -2, 3)
        assert (2 * f).coefficients == (rat(2), rat(-4), rat(6))
        assert (f * rat(1, 2)).coefficients == (rat(1, 2), rat(-1), rat(3, 2))
        assert (f / 2).coefficients == (rat(1, 2), rat(-1), rat(3, 2))

    def test_pow_binary(self):
        f = S(1, 1, 0, 0)
        assert (f**3).coefficients == (rat(1), rat(3), rat(3), rat(1))
        assert (f**0).coefficients == (rat(1), rat(0), rat(0), rat(0))

    def test_pow_negative_inverts(self):
        f = S(1, 1, 0, 0)
        g = f**-2
        assert (g * f * f).coefficients == (rat(1), rat(0), rat(0), rat(0))

    def test_division_by_series(self):
        f = S(1, 0, 0, 0)
        g = S(1, 1, 0, 0)
        assert (f / g).coefficients == (rat(1), rat(-1), rat(1), rat(-1))

    def test_division_by_zero_scalar(self):
        with pytest.raises(ZeroDivisionError):
            S(1, 2) / 0


class TestShiftTruncatePad:
    def test_truncate_cannot_extend(self):
        with pytest.raises(ValueError):
            S(1, 2).truncate(5)

    def test_shift_up_extends_order(self):
        f = S(1, 2)
        g = f.shift(2)
        assert g.order == 3
        assert g.coefficients == (rat(0), rat(0), rat(1), rat(2))

    def test_shift_down_requires_zero_lows(self):
        f = S(0, 0, 1, 2)
        assert f.shift(-2).coefficients == (rat(1), rat(2))
        with pytest.raises(ValueError):
            S(1, 2).shift(-1)

    def test_rescale_substitutes_power(self):
        f = S(1, 2, 3, 4, 5)
        g = f.rescale(2)
        assert g.coefficients == (rat(1), rat(0), rat(2), rat(0), rat(3))


class TestTranscendental:
    def test_invert_requires_unit(self):
        with pytest.raises(ValueError):
            S(0, 1).invert()

    def test_invert_roundtrip(self):
        f = S(1, 3, -2, 5)
        assert (f * f.invert()).coefficients == (rat(1), rat(0), rat(0), rat(0))

    def test_exp_log_roundtrip(self):
        f = S(0, 1, -2, 3, -4)
        assert f.exp().log() == f

    def test_exp_requires_zero_constant(self):
        with pytest.raises(ValueError):
            S(1, 1).exp()

    def test_log_requires_unit_constant(self):
        with pytest.raises(ValueError):
            S(2, 1).log()

    def test_xdx_log_geometric(self):
        # x d/dx log(1/(1-x)) = x/(1-x) = x + x^2 + ...
        n = 20
        geo = TruncatedSeries([1] * (n + 1))
        s = geo.log().xdx()
        assert s.coefficients == (rat(0),) + (rat(1),) * n

    def test_pow_rational_fourth_root_roundtrip(self):
        n = 60
        f = TruncatedSeries([1] + [k * k + 1 for k in range(1, n + 1)])
        root = f.pow_rational(rat(1, 4))
        assert root**4 == f

    def test_derive(self):
        f = S(5, 1, 3, 7)
        assert f.derive().coefficients == (rat(1), rat(6), rat(21))
        with pytest.raises(ValueError):
            S(5).derive()


class TestComposeRevert:
    def test_compose_example(self):
        # f = 1/(1-x), g = x + x^2: f(g) = 1 + (x + x^2) + (x + x^2)^2 + ...
        f = S(1, 1, 1, 1)
        g = S(0, 1, 1, 0)
        assert f.compose(g).coefficients == (rat(1), rat(1), rat(2), rat(3))

    def test_compose_requires_zero_constant(self):
        with pytest.raises(ValueError):
            S(1, 1).compose(S(1, 1))

    def test_revert_head(self):
        # q = psi + 15 psi^2 + 279 psi^3 + ... reverts to psi = q - 15q^2 + 171q^3
        f = S(0, 1, 15, 279)
        assert f.revert().coefficients == (rat(0), rat(1), rat(-15), rat(171))

    def test_revert_requires_zero_constant_and_unit_slope(self):
        with pytest.raises(ValueError):
            S(1, 1).revert()
        with pytest.raises(ValueError):
            S(0, 0, 1).revert()

    def test_revert_roundtrip_deep(self):
        n = 50
        f = TruncatedSeries([0, 1] + [((-3) ** k) % 17 - 8 for k in range(2, n + 1)])
        g = f.revert()
        assert f.compose(g) == TruncatedSeries.identity(n)
        assert g.compose(f) == TruncatedSeries.identity(n)

    def test_revert_against_lagrange_inversion(self):
        """Independent oracle: g_n = (1/n) [y^(n-1)] (y/f(y))^n, computed with
        only multiplication and inversion (no compose/revert)."""
        n = 12
        coeffs = [0, 1, -3, 5, 2, -7, 1, 4, -2, 6, -1, 3, -5]
        f = TruncatedSeries(coeffs[: n + 1])
        g = f.revert()
        base = f.shift(-1).invert()  # (y/f)^1 as unit series, order n-1
        for k in range(1, n + 1):
            power = base**k
            expected = power[k - 1] / k
            assert g[k] == expected, k


# -- property tests ------------------------------------------------------

small_rationals = st.builds(
    lambda n, d: rational(n) / rational(d),
    st.integers(-30, 30),
    st.integers(1, 12),
)


def series_strategy(min_order=0, max_order=8):
    return st.lists(
        small_rationals, min_size=min_order + 1, max_size=max_order + 1
    ).map(TruncatedSeries)


@given(series_strategy(), series_strategy())
def test_mul_commutes(f, g):
    assert f * g == g * f


@given(series_strategy(), series_strategy(), series_strategy())
def test_mul_distributes(f, g, h):
    n = min(f.order, g.order, h.order)
    lhs = (f.truncate(n) + g.truncate(n)) * h.truncate(n)
    rhs = f.truncate(n) * h.truncate(n) + g.truncate(n) * h.truncate(n)
    assert lhs == rhs


@given(series_strategy(min_order=1))
def test_exp_log_inverse(f):
    g = TruncatedSeries((rational(0),) + f.coefficients[1:])
    assert g.exp().log() == g


@given(series_strategy(min_order=1))
def test_invert_involution(f):
    g = 1 + TruncatedSeries((rational(0),) + f.coefficients[1:])
    assert g.invert().invert() == g


@given(series_strategy(min_order=2), st.integers(-6, 6).filter(bool))
@settings(max_examples=60)
def test_revert_roundtrip_property(f, slope):
    g = TruncatedSeries(
        (rational(0), rational(slope)) + f.coefficients[2:]
    )
    h = g.revert()
    assert g.compose(h) == TruncatedSeries.identity(g.order)


@given(series_strategy(min_order=1), st.integers(2, 5))
def test_pow_rational_integer_power_matches(f, k):
    g = 1 + TruncatedSeries((rational(0),) + f.coefficients[1:])
    assert g.pow_rational(rational(k)) == g**k


@given(series_strategy(min_order=1))
def test_free_function_aliases(f):
    g = 1 + TruncatedSeries((rational(0),) + f.coefficients[1:])
    assert series_mul(g, g) == g * g
    assert series_invert(g) == g.invert()
    assert series_log(g) == g.log()
    assert series_exp(g - 1) == (g - 1).exp()
    assert series_xdx(g) == g.xdx()
