"""q-expansions: mirror-map reversion, weight-3 coefficients, instanton numbers.

The chain is

    psi(q)          reversion of the mirror map q(psi)
    weight3(q)      g1(psi(q)) * (q/psi(q)) * dpsi/dq, constant term 1
    b_n             Lambert extraction (weight 2) from weight3
    Q(q)            alpha * q * prod (1-q^n)^(n b_n)
    q(Q)            reversion of Q(q)
    a_n             Lambert extraction (weight 3) from 1 + Q d/dQ log(q(Q)/ (alpha Q)),
                    cross-checked against the product form alpha*q = Q * prod (1-Q^n)^(n^2 a_n)

Every stage is exact rational arithmetic.  Stages are memoized per
(spec, order) so one reversion of psi and one of Q serve a whole table; a
stage that needs psi one order deeper (the derivative term) asks for
order + 1 explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from ._rational import ONE, QQ, ZERO, is_integral, rational
from .picard_fuchs import RecurrenceSpec, frobenius, mirror_map
from .series_core import TruncatedSeries


class RouteMismatchError(ArithmeticError):
    """The two independent instanton-number extractions disagreed."""


class UnsupportedExampleError(ValueError):
    """The requested normalization constant is not defined for this spec."""


@lru_cache(maxsize=None)
def psi_of_q(spec: RecurrenceSpec, order: int) -> TruncatedSeries:
    """psi as a series in q: the reversion of the mirror map (psi(q(x)) = x)."""
    if order < 1:
        raise ValueError("order must be at least 1")
    return mirror_map(spec, order).revert()


@lru_cache(maxsize=None)
def g1_of_q(spec: RecurrenceSpec, order: int) -> TruncatedSeries:
    """The holomorphic solution pulled back along psi(q).

    psi is requested one order deep (order + 1) so that this stage shares
    a single cached reversion with weight3_series.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    psi = psi_of_q(spec, order + 1).truncate(order)
    return frobenius(spec, order).g1.compose(psi)


@lru_cache(maxsize=None)
def weight3_series(spec: RecurrenceSpec, order: int) -> TruncatedSeries:
    """g1(psi(q)) * (q/psi(q)) * dpsi/dq; constant term 1.

    dpsi/dq costs one extra order of psi, so psi is computed to order + 1
    (the memo cache makes the deeper call shared, not repeated).
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    psi = psi_of_q(spec, order + 1)
    unit = psi.shift(-1).truncate(order)  # psi/q, unit series
    return g1_of_q(spec, order) * unit.invert() * psi.derive().truncate(order)


def lambert_extract(series: TruncatedSeries, weight: int) -> list:
    """Solve s = 1 - sum_N (sum_{k|N} k^w t_k) x^N for t_1..t_N.

    Triangular and exact: t_N = (-[x^N]s - sum_{k|N, k<N} k^w t_k) / N^w.
    Entry i of the result is t_{i+1}.
    """
    if series[0] != ONE:
        raise ValueError("extraction requires constant term 1")
    if weight < 0:
        raise ValueError("weight must be non-negative")
    n_max = series.order
    t = [ZERO] * (n_max + 1)
    for n in range(1, n_max + 1):
        acc = -series[n]
        for d in range(1, n):
            if n % d == 0:
                acc -= d**weight * t[d]
        t[n] = acc / n**weight
    return t[1:]


def product_one_minus_powers(exponents: Sequence, order: int) -> TruncatedSeries:
    """prod_{n>=1} (1 - x^n)^(e_n) with e_n = exponents[n-1], truncated at order.

    Built as exp(sum e_n log(1 - x^n)); the factor for n only contributes
    from order n on, so exponents beyond the order are ignored exactly.
    """
    logs = [ZERO] * (order + 1)
    for n in range(1, min(len(exponents), order) + 1):
        e = rational(exponents[n - 1])
        if e:
            for j in range(n, order + 1, n):
                logs[j] -= e * n / j
    return TruncatedSeries(logs).exp()


@lru_cache(maxsize=None)
def _b_values(spec: RecurrenceSpec, order: int) -> tuple:
    return tuple(lambert_extract(weight3_series(spec, order), 2))


def b_table(spec: RecurrenceSpec, order: int) -> list:
    """b_1..b_N; plain ints when all are integral, exact rationals otherwise."""
    raw = _b_values(spec, order)
    if all(is_integral(v) for v in raw):
        return [int(v) for v in raw]
    return list(raw)


@lru_cache(maxsize=None)
def bigQ_of_q(spec: RecurrenceSpec, order: int) -> TruncatedSeries:
    """Q(q) = alpha * q * prod_{n>=1} (1 - q^n)^(n b_n), truncated at order."""
    if order < 1:
        raise ValueError("order must be at least 1")
    b = _b_values(spec, order - 1) if order > 1 else ()
    exponents = [n * b[n - 1] for n in range(1, len(b) + 1)]
    unit = product_one_minus_powers(exponents, order - 1)
    return (spec.alpha * unit).shift(1)


@lru_cache(maxsize=None)
def q_of_bigQ(spec: RecurrenceSpec, order: int) -> TruncatedSeries:
    """q as a series in Q: the reversion of bigQ_of_q."""
    return bigQ_of_q(spec, order).revert()


@lru_cache(maxsize=None)
def instanton_growth(spec: RecurrenceSpec, order: int) -> TruncatedSeries:
    """Q d/dQ log q(Q), i.e. 1 - sum_n a_n n^3 Q^n/(1-Q^n), as a series in Q."""
    if order < 1:
        raise ValueError("order must be at least 1")
    unit = (spec.alpha * q_of_bigQ(spec, order + 1)).shift(-1)
    return unit.log().xdx() + 1


def instanton_from_lambert(spec: RecurrenceSpec, order: int) -> list:
    """a_1..a_N from weight-3 Lambert extraction of the growth series."""
    return lambert_extract(instanton_growth(spec, order), 3)


def instanton_from_product(spec: RecurrenceSpec, order: int) -> list:
    """a_1..a_N from alpha*q = Q * prod (1-Q^n)^(n^2 a_n).

    Taking logs gives log(alpha q(Q)/Q) = sum_n n^2 a_n log(1-Q^n); the
    exponents e_n = n^2 a_n satisfy the triangular system
    e_j = (-j*[Q^j]log - sum_{n|j, n<j} n e_n) / j.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    logs = (spec.alpha * q_of_bigQ(spec, order + 1)).shift(-1).log()
    e = [ZERO] * (order + 1)
    out = []
    for j in range(1, order + 1):
        acc = -j * logs[j]
        for d in range(1, j):
            if j % d == 0:
                acc -= d * e[d]
        e[j] = acc / j
        out.append(e[j] / (j * j))
    return out


@lru_cache(maxsize=None)
def _a_values(spec: RecurrenceSpec, order: int) -> tuple:
    lambert_route = instanton_from_lambert(spec, order)
    product_route = instanton_from_product(spec, order)
    for i, (x, y) in enumerate(zip(lambert_route, product_route)):
        if x != y:
            raise RouteMismatchError(
                f"a_{i + 1} differs between extraction routes: {x} vs {y}"
            )
    return tuple(lambert_route)


def a_table(spec: RecurrenceSpec, order: int) -> list:
    """a_1..a_N; both extraction routes must agree (RouteMismatchError if not).

    Plain ints when all are integral, exact rationals otherwise.
    """
    raw = _a_values(spec, order)
    if all(is_integral(v) for v in raw):
        return [int(v) for v in raw]
    return list(raw)


@dataclass(frozen=True)
class ExpansionTable:
    """A full (b_n, a_n) table with integrality flags.

    b and a hold plain integers when the corresponding flag is set and are
    None otherwise; raw_b and raw_a always hold the exact rationals.
    """

    spec: RecurrenceSpec
    order: int
    raw_b: tuple
    raw_a: tuple
    b_integral: bool
    a_integral: bool
    b: tuple | None
    a: tuple | None


def expansion_table(spec: RecurrenceSpec, order: int) -> ExpansionTable:
    """Compute b_1..b_N and a_1..a_N with integrality flags in one pass."""
    raw_b = _b_values(spec, order)
    raw_a = _a_values(spec, order)
    b_integral = all(is_integral(v) for v in raw_b)
    a_integral = all(is_integral(v) for v in raw_a)
    return ExpansionTable(
        spec=spec,
        order=order,
        raw_b=raw_b,
        raw_a=raw_a,
        b_integral=b_integral,
        a_integral=a_integral,
        b=tuple(int(v) for v in raw_b) if b_integral else None,
        a=tuple(int(v) for v in raw_a) if a_integral else None,
    )


def lmw_expansion(spec: RecurrenceSpec, order: int) -> TruncatedSeries:
    """kappa * (1 - sum_n a_n n^3 Q^n/(1-Q^n)) as a series in Q."""
    if spec.kappa is None:
        raise UnsupportedExampleError(
            "no normalization constant kappa is defined for this spec"
        )
    return spec.kappa * instanton_growth(spec, order)
