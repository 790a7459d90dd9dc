"""Eisenstein series, eta quotients, and the closed-form identity suites.

Each worked example's psi(q), g1(psi(q)) and weight-3 series have classical
closed forms (eta quotients, Eisenstein series of level 2/3/4/5, character
twists).  This module builds those closed forms independently of the
recurrence pipeline and compares coefficients exactly to a requested order.

The quartic character mod 5 takes values in the Gaussian integers; only the
real integer combinations ((3-i)chi + (3+i)conj(chi))/2 (weight 1) and
((2-i)chi + (2+i)conj(chi))/2 (weight 3) ever enter a series, so those are
pre-reduced here to period-5 integer sequences:
with chi(n) = i^j for n = 2^j mod 5, the combinations evaluate at
n = 0,1,2,3,4 mod 5 to (0,3,1,-1,-3) and (0,2,1,-1,-2) respectively.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ._rational import ONE, QQ, ZERO, is_integral, rational
from .picard_fuchs import resolve_example
from .qexpansion import (
    _b_values,
    g1_of_q,
    product_one_minus_powers,
    psi_of_q,
    weight3_series,
)
from .series_core import TruncatedSeries


class IdentityStructureError(ValueError):
    """An eta quotient cannot be compared: its net q-exponent is not a
    non-negative integer, so it is not a power series in q."""


def eisenstein(weight: int, order: int) -> TruncatedSeries:
    """E_2, E_4 or E_6: 1 + c_w sum_n sigma_{w-1}(n) q^n with
    (c_2, c_4, c_6) = (-24, 240, -504), by divisor sieve."""
    scales = {2: -24, 4: 240, 6: -504}
    if weight not in scales:
        raise ValueError("supported Eisenstein weights are 2, 4, 6")
    if order < 0:
        raise ValueError("order must be non-negative")
    coeffs = [ZERO] * (order + 1)
    coeffs[0] = ONE
    for d in range(1, order + 1):
        contribution = scales[weight] * d ** (weight - 1)
        for j in range(d, order + 1, d):
            coeffs[j] += contribution
    return TruncatedSeries(coeffs)


@dataclass(frozen=True)
class EtaQuotient:
    """prod_k eta(q^k)^(m_k), stored as ((k, m_k), ...).

    The q-expansion is q^(sum k m_k / 24) times a unit power series; the
    leading exponent is tracked exactly and the unit part separately.
    """

    factors: tuple

    def __post_init__(self):
        for k, m in self.factors:
            if not isinstance(k, int) or k < 1:
                raise ValueError("eta arguments must be positive integer scales")
            if not isinstance(m, int):
                raise ValueError("eta exponents must be integers")

    @property
    def leading_exponent(self) -> QQ:
        return rational(sum(k * m for k, m in self.factors)) / 24


def eta_quotient_series(eq: EtaQuotient, order: int):
    """(leading_exponent, unit series): the quotient is q^lead * unit.

    The unit part is prod_k prod_n (1 - q^(kn))^(m_k), assembled as a single
    product over the combined exponent of (1 - q^j).
    """
    exponents = [0] * order
    for k, m in eq.factors:
        for j in range(k, order + 1, k):
            exponents[j - 1] += m
    return eq.leading_exponent, product_one_minus_powers(exponents, order)


def eta_quotient_as_series(eq: EtaQuotient, order: int) -> TruncatedSeries:
    """The quotient as an honest power series in q, order `order`.

    Requires the net leading exponent to be a non-negative integer;
    otherwise the quotient has a pole or fractional power and cannot be a
    power series (IdentityStructureError).
    """
    lead, unit = eta_quotient_series(eq, order)
    if not is_integral(lead) or lead < 0:
        raise IdentityStructureError(
            f"eta quotient has leading exponent {lead}, not a power series in q"
        )
    return unit.shift(int(lead)).truncate(order)


@dataclass(frozen=True)
class CharSeq:
    """Periodic integer sequence n -> values[n mod period]."""

    period: int
    values: tuple

    def __post_init__(self):
        if self.period < 1 or len(self.values) != self.period:
            raise ValueError("values must have length equal to the period")

    def __call__(self, n: int) -> int:
        return self.values[n % self.period]


CHI_MINUS3 = CharSeq(3, (0, 1, -1))
CHI_MINUS4 = CharSeq(4, (0, 1, 0, -1))
LEGENDRE5 = CharSeq(5, (0, 1, -1, -1, 1))
QUARTIC5_WEIGHT1 = CharSeq(5, (0, 3, 1, -1, -3))
QUARTIC5_WEIGHT3 = CharSeq(5, (0, 2, 1, -1, -2))


def character_eisenstein(char: CharSeq, weight: int, scale, order: int) -> TruncatedSeries:
    """1 + scale * sum_n char(n) n^(weight-1) q^n/(1-q^n), by divisor sieve."""
    if order < 0:
        raise ValueError("order must be non-negative")
    s = rational(scale)
    coeffs = [ZERO] * (order + 1)
    coeffs[0] = ONE
    for n in range(1, order + 1):
        v = char(n)
        if v:
            contribution = s * v * n ** (weight - 1)
            for j in range(n, order + 1, n):
                coeffs[j] += contribution
    return TruncatedSeries(coeffs)


@dataclass(frozen=True)
class IdentityCheck:
    """Result of one coefficientwise comparison.

    status is 'pass', 'mismatch', or 'caveat' (matches only after the
    documented sign adjustment); on mismatch the first differing order and
    both coefficients are recorded.
    """

    label: str
    order: int
    status: str
    mismatch_order: int | None = None
    lhs_coefficient: object = None
    rhs_coefficient: object = None
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def acceptable(self) -> bool:
        return self.status in ("pass", "caveat")


def verify_identity(
    lhs: TruncatedSeries, rhs: TruncatedSeries, order: int, label: str = ""
) -> IdentityCheck:
    """Exact coefficient comparison to the given order; first mismatch wins."""
    if lhs.order < order or rhs.order < order:
        raise ValueError("both series must be defined to the comparison order")
    for k in range(order + 1):
        if lhs[k] != rhs[k]:
            return IdentityCheck(label, order, "mismatch", k, lhs[k], rhs[k])
    return IdentityCheck(label, order, "pass")


@dataclass(frozen=True)
class SuiteReport:
    """All identity checks for one example at one order."""

    example_id: int
    order: int
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.acceptable for c in self.checks)

    @property
    def caveats(self) -> tuple:
        return tuple(c for c in self.checks if c.status == "caveat")


def _suite_example_1(spec, n: int) -> list:
    e4 = eisenstein(4, n)
    e6 = eisenstein(6, n)
    ratio = e6 * e4.pow_rational(rational(-3) / 2)
    checks = [
        verify_identity(
            psi_of_q(spec, n + 1).truncate(n),
            (1 - ratio) / 864,
            n,
            "psi(q) = (1 - E6*E4^(-3/2))/864",
        ),
        verify_identity(
            g1_of_q(spec, n),
            e4.pow_rational(rational(1) / 4),
            n,
            "g1(psi(q)) = E4^(1/4)",
        ),
        verify_identity(
            g1_of_q(spec, n) ** 4, e4, n, "g1(psi(q))^4 = E4 (power-cleared)"
        ),
        verify_identity(
            weight3_series(spec, n),
            e4.pow_rational(rational(3) / 4) * (1 + ratio) / 2,
            n,
            "q dlog(Q) = E4^(3/4)*(1 + E6*E4^(-3/2))/2",
        ),
    ]
    return checks


def _suite_example_2(spec, n: int) -> list:
    e2 = eisenstein(2, n)
    base = 2 * e2.rescale(2) - e2
    _, eta_unit = eta_quotient_series(EtaQuotient(((1, 24), (2, -24))), n)
    psi_deep = psi_of_q(spec, n + 1)
    # 1/psi = 64 + q^{-1} * eta(q)^24/eta(q^2)^24, cleared of the pole:
    combo = 64 * psi_deep.truncate(n) + psi_deep.shift(-1) * eta_unit
    v_series = eta_quotient_as_series(EtaQuotient(((2, 24), (1, -24))), n)
    checks = [
        verify_identity(
            combo,
            TruncatedSeries.constant(ONE, n),
            n,
            "1/psi(q) = 64 + eta(q)^24/eta(q^2)^24 (pole-cleared)",
        ),
        verify_identity(
            g1_of_q(spec, n) ** 2,
            base,
            n,
            "g1(psi(q))^2 = 2E2(q^2) - E2(q) (power-cleared)",
        ),
        verify_identity(
            weight3_series(spec, n) * (1 + 64 * v_series),
            base.pow_rational(rational(3) / 2),
            n,
            "q dlog(Q) * (1 + 64 eta(q^2)^24/eta(q)^24) = (2E2(q^2) - E2(q))^(3/2)",
        ),
    ]
    return checks


def _suite_example_3(spec, n: int) -> list:
    _, eta_unit = eta_quotient_series(EtaQuotient(((1, 12), (3, -12))), n)
    psi_deep = psi_of_q(spec, n + 1)
    combo = 27 * psi_deep.truncate(n) + psi_deep.shift(-1) * eta_unit
    checks = [
        verify_identity(
            combo,
            TruncatedSeries.constant(ONE, n),
            n,
            "1/psi(q) = 27 + eta(q)^12/eta(q^3)^12 (pole-cleared)",
        ),
        verify_identity(
            g1_of_q(spec, n),
            character_eisenstein(CHI_MINUS3, 1, 6, n),
            n,
            "g1(psi(q)) = E_{1,chi_-3}",
        ),
        verify_identity(
            weight3_series(spec, n),
            character_eisenstein(CHI_MINUS3, 3, -9, n),
            n,
            "q dlog(Q) = E_{3,chi_-3}",
        ),
        verify_identity(
            weight3_series(spec, n),
            eta_quotient_as_series(EtaQuotient(((1, 9), (3, -3))), n),
            n,
            "q dlog(Q) = eta(q)^9/eta(q^3)^3",
        ),
    ]
    return checks


def _suite_example_4(spec, n: int) -> list:
    checks = [
        verify_identity(
            psi_of_q(spec, n + 1).truncate(n),
            eta_quotient_as_series(EtaQuotient(((1, 8), (4, 16), (2, -24))), n),
            n,
            "psi(q) = eta(q)^8 eta(q^4)^16/eta(q^2)^24",
        ),
        verify_identity(
            g1_of_q(spec, n),
            character_eisenstein(CHI_MINUS4, 1, 4, n),
            n,
            "g1(psi(q)) = E_{1,chi_-4}",
        ),
        verify_identity(
            weight3_series(spec, n),
            character_eisenstein(CHI_MINUS4, 3, -4, n),
            n,
            "q dlog(Q) = E_{3,chi_-4}",
        ),
        verify_identity(
            weight3_series(spec, n),
            eta_quotient_as_series(EtaQuotient(((1, 4), (2, 6), (4, -4))), n),
            n,
            "q dlog(Q) = eta(q)^4 eta(q^2)^6/eta(q^4)^4",
        ),
    ]
    return checks


def _suite_example_5(spec, n: int) -> list:
    exponents = [5 * LEGENDRE5(m) for m in range(1, n)]
    psi_product = product_one_minus_powers(exponents, n - 1).shift(1)
    checks = [
        verify_identity(
            psi_of_q(spec, n + 1).truncate(n),
            psi_product,
            n,
            "psi(q) = q prod (1-q^n)^(5 legendre(n,5))",
        ),
        verify_identity(
            g1_of_q(spec, n),
            character_eisenstein(QUARTIC5_WEIGHT1, 1, rational(1), n),
            n,
            "g1(psi(q)) = 1 + sum ((3-i)chi+(3+i)chibar)/2 q^n/(1-q^n)",
        ),
    ]
    w3_label = "q dlog(Q) = 1 + sum ((2-i)chi+(2+i)chibar)/2 n^2 q^n/(1-q^n)"
    closed = character_eisenstein(QUARTIC5_WEIGHT3, 3, rational(1), n)
    pipeline = weight3_series(spec, n)
    direct = verify_identity(pipeline, closed, n, w3_label)
    if direct.passed:
        checks.append(direct)
    else:
        flipped = verify_identity(pipeline, 2 - closed, n, w3_label)
        if flipped.passed:
            checks.append(
                IdentityCheck(
                    w3_label,
                    n,
                    "caveat",
                    note=(
                        "matches with the sign of the non-constant part flipped; "
                        "the printed b-table (b_1 = +2) fixes the pipeline sign, "
                        "and the closed form as printed has the opposite one"
                    ),
                )
            )
        else:
            checks.append(direct)
    return checks


def _suite_example_6(spec, n: int) -> list:
    e1 = character_eisenstein(CHI_MINUS3, 1, 6, n)
    e3 = character_eisenstein(CHI_MINUS3, 3, -9, n)
    b_pattern_label = "b_n = (-1)^(n-1) chi_-3(n)"
    b_raw = _b_values(spec, n)
    mismatch = None
    for i, value in enumerate(b_raw):
        m = i + 1
        expected = (-1) ** (m - 1) * CHI_MINUS3(m)
        if value != expected:
            mismatch = (m, value, rational(expected))
            break
    if mismatch is None:
        b_check = IdentityCheck(b_pattern_label, len(b_raw), "pass")
    else:
        b_check = IdentityCheck(
            b_pattern_label, len(b_raw), "mismatch", *mismatch
        )
    checks = [
        verify_identity(
            psi_of_q(spec, n + 1).truncate(n),
            eta_quotient_as_series(
                EtaQuotient(((1, 3), (6, 9), (2, -3), (3, -9))), n
            ),
            n,
            "psi(q) = eta(q)^3 eta(q^6)^9/(eta(q^2)^3 eta(q^3)^9)",
        ),
        verify_identity(
            g1_of_q(spec, n),
            eta_quotient_as_series(
                EtaQuotient(((2, 1), (3, 6), (1, -2), (6, -3))), n
            ),
            n,
            "g1(psi(q)) = eta(q^2) eta(q^3)^6/(eta(q)^2 eta(q^6)^3)",
        ),
        verify_identity(
            g1_of_q(spec, n),
            (e1 + 2 * e1.rescale(2).truncate(n)) / 3,
            n,
            "g1(psi(q)) = (E_{1,chi_-3}(q) + 2 E_{1,chi_-3}(q^2))/3",
        ),
        verify_identity(
            weight3_series(spec, n),
            (e3 + 8 * e3.rescale(2).truncate(n)) / 9,
            n,
            "q dlog(Q) = (E_{3,chi_-3}(q) + 8 E_{3,chi_-3}(q^2))/9",
        ),
        b_check,
    ]
    return checks


_SUITES = {
    1: _suite_example_1,
    2: _suite_example_2,
    3: _suite_example_3,
    4: _suite_example_4,
    5: _suite_example_5,
    6: _suite_example_6,
}


def identity_suite(example, order: int) -> SuiteReport:
    """Compare pipeline psi(q), g1(psi(q)), and the weight-3 series against
    the example's closed forms, coefficientwise to the given order."""
    entry = resolve_example(example)
    if order < 2:
        raise ValueError("order must be at least 2")
    checks = _SUITES[entry.example_id](entry.spec, order)
    return SuiteReport(entry.example_id, order, tuple(checks))
