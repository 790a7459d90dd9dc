"""Mahler measure: series route, torus quadrature, product-route cross-check."""

import mpmath
import pytest

from mirrormeasure import (
    DEFAULT_PRECISION_BITS,
    PRECISION_ENV,
    DomainNotCertifiedError,
    TruncatedSeries,
    UnreliableEvaluationError,
    mahler_quadrature,
    mahler_report,
    mahler_series,
    mahler_vs_bigQ,
    parse_poly,
    precision_bits,
    rational,
    resolve_example,
    series_tail_bound,
    torus_sup_bound,
)
from mirrormeasure.mahler import _evaluate_decaying

MONOMIAL = parse_poly("X^2*Y*Z")  # F_t = t - x on the torus
CONSTANT3 = parse_poly("3*X*Y*Z")  # F_t = t - 3
FRANEL = parse_poly(resolve_example(3).polynomial)

# Reference values must be computed above the library's 128-bit working
# precision, or the comparison noise is the test's own rounding.
hiprec = lambda: mpmath.workprec(160)  # noqa: E731


class TestPrecision:
    def test_default(self, monkeypatch):
        monkeypatch.delenv(PRECISION_ENV, raising=False)
        assert precision_bits() == DEFAULT_PRECISION_BITS

    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv(PRECISION_ENV, "96")
        assert precision_bits() == 96

    def test_argument_beats_environment(self, monkeypatch):
        monkeypatch.setenv(PRECISION_ENV, "96")
        assert precision_bits(256) == 256

    def test_too_small_rejected(self):
        with pytest.raises(ValueError):
            precision_bits(32)


class TestTailBound:
    def test_closed_form(self):
        # bound 3, t = 6: rho = 1/2, N = 3 -> (1/2)^4 / (4 * 1/2) = 1/32
        tail = series_tail_bound(FRANEL, 6, 3)
        assert abs(tail - mpmath.mpf(1) / 32) < mpmath.mpf(10) ** -30

    def test_decreasing_in_order(self):
        tails = [series_tail_bound(FRANEL, 10, n) for n in (10, 20, 40)]
        assert tails[0] > tails[1] > tails[2] > 0

    def test_inside_domain_rejected(self):
        with pytest.raises(DomainNotCertifiedError):
            series_tail_bound(FRANEL, 3, 10)


class TestSeriesRoute:
    def test_jensen_monomial(self):
        # m(t - x) = log t for t > 1; every c_n with n >= 1 vanishes.
        value = mahler_series(MONOMIAL, 5, 40)
        with hiprec():
            assert abs(value - mpmath.log(5)) < mpmath.mpf(10) ** -35

    def test_constant_shift(self):
        # m(t - 3) = log(t - 3); the series sums -log(1 - 3/t) exactly.
        value = mahler_series(CONSTANT3, 10, 200)
        with hiprec():
            assert abs(value - mpmath.log(7)) < mpmath.mpf(10) ** -30

    def test_large_t_asymptotics(self):
        value = mahler_series(FRANEL, 10**6, 40)
        assert abs(value - mpmath.log(10**6)) < mpmath.mpf("1e-5")

    def test_domain_refusal(self):
        with pytest.raises(DomainNotCertifiedError):
            mahler_series(FRANEL, 2, 40)

    def test_boundary_refusal(self):
        with pytest.raises(DomainNotCertifiedError):
            mahler_series(FRANEL, 3, 40)

    def test_agrees_with_quadrature_within_tail(self):
        t = rational(13) / 2
        value = mahler_series(FRANEL, t, 60)
        quad = mahler_quadrature(FRANEL, t, 128)
        tail = series_tail_bound(FRANEL, t, 60)
        with hiprec():
            assert abs(value - quad.value) < tail + mpmath.mpf(10) ** -30


class TestQuadratureRoute:
    def test_jensen_monomial(self):
        quad = mahler_quadrature(MONOMIAL, 5, 64)
        # mean log|5 - x| over 64th roots of unity is log(5^64 - 1)/64
        with hiprec():
            exact = mpmath.log(mpmath.mpf(5) ** 64 - 1) / 64
            assert abs(quad.value - exact) < mpmath.mpf(10) ** -35
        assert quad.warning is None

    def test_constant_shift_exact_at_any_grid(self):
        for grid in (1, 7, 32):
            quad = mahler_quadrature(CONSTANT3, 10, grid)
            with hiprec():
                assert abs(quad.value - mpmath.log(7)) < mpmath.mpf(10) ** -35

    def test_deterministic(self):
        a = mahler_quadrature(FRANEL, 10, 64)
        b = mahler_quadrature(FRANEL, 10, 64)
        assert a.value == b.value and a.min_abs == b.min_abs

    def test_grid_doubling_stable(self):
        entry = resolve_example(4)
        poly = parse_poly(entry.polynomial)
        small = mahler_quadrature(poly, 10, 64)
        large = mahler_quadrature(poly, 10, 128)
        with hiprec():
            assert abs(small.value - large.value) < mpmath.mpf("1e-20")

    def test_near_singular_warning(self):
        t = mpmath.mpf(1) + mpmath.mpf(10) ** -30
        quad = mahler_quadrature(MONOMIAL, t, 16)
        assert quad.warning is not None
        assert quad.min_abs < quad.floor

    def test_complex_parameter(self):
        quad = mahler_quadrature(MONOMIAL, "2+3j", 64)
        with hiprec():
            # prod over 64th roots x of (t - x) is t^64 - 1
            exact = mpmath.log(abs(mpmath.mpc(2, 3) ** 64 - 1)) / 64
            assert abs(quad.value - exact) < mpmath.mpf(10) ** -30

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            mahler_quadrature(MONOMIAL, 5, 0)


class TestDecayingEvaluation:
    def test_geometric_series(self):
        ones = TruncatedSeries([1] * 60)
        value, tail = _evaluate_decaying(ones, mpmath.mpf(1) / 2)
        assert abs(value - 2) < mpmath.mpf("1e-15")
        assert 0 < tail < mpmath.mpf("1e-15")

    def test_non_decaying_rejected(self):
        ones = TruncatedSeries([1] * 10)
        with pytest.raises(UnreliableEvaluationError):
            _evaluate_decaying(ones, mpmath.mpf(1))


class TestProductRouteCrossCheck:
    @pytest.mark.parametrize("example_id,t", [(3, 10), (4, 10), (6, 100)])
    def test_three_routes_agree(self, example_id, t):
        check = mahler_vs_bigQ(example_id, t, order=60, grid=64)
        assert check.max_pairwise_difference < mpmath.mpf("1e-8")
        assert check.quadrature.warning is None

    def test_complex_t_rejected(self):
        with pytest.raises(ValueError):
            mahler_vs_bigQ(3, "2+3j", order=20, grid=16)

    def test_inside_domain_rejected(self):
        with pytest.raises(DomainNotCertifiedError):
            mahler_vs_bigQ(3, 2, order=20, grid=16)

    def test_tail_fields_small(self):
        check = mahler_vs_bigQ(4, 10, order=60, grid=64)
        assert check.series_tail < mpmath.mpf("1e-20")
        assert check.bigq_tail_estimate < mpmath.mpf("1e-20")


class TestReport:
    def test_certified_report(self):
        report = mahler_report(FRANEL, 10, order=60, grid=64)
        assert report.domain_certified
        assert report.series_value is not None
        assert report.abs_difference < mpmath.mpf("1e-20")
        assert report.warnings == ()

    def test_uncertified_downgrades_to_warning(self):
        report = mahler_report(FRANEL, 2, order=40, grid=64)
        assert not report.domain_certified
        assert report.series_value is None and report.abs_difference is None
        assert any("not certified" in w for w in report.warnings)
        assert mpmath.isfinite(report.quadrature_value)

    def test_registry_bounds_match_polynomials(self):
        expected = {1: 3, 2: 3, 3: 3, 4: 4, 5: 12, 6: 8}
        for example_id, bound in expected.items():
            poly = parse_poly(resolve_example(example_id).polynomial)
            assert torus_sup_bound(poly) == bound
