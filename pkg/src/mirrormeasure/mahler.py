"""Numerical Mahler measures of F_t = t - P(x, y, 1)/(xy).

Three routes to m(F_t) = (2 pi)^{-2} integral of log|F_t| over the unit torus:

  * series:     log|t| - Re sum_{n>=1} c_n t^{-n} / n, valid for
                |t| > torus_sup_bound(P), with a geometric tail bound;
  * quadrature: periodic trapezoid rule on an M x M roots-of-unity grid
                (geometrically convergent for analytic integrands);
  * product:    -(1/nu) log|Q| with Q evaluated at psi = t^{-nu} through the
                exact q-expansion pipeline (registry examples, real t only).

This is the only module that leaves exact rational arithmetic.  All floats
are mpmath extended-precision reals/complexes; the working mantissa defaults
to 128 bits and can be set per call or via MIRRORMEASURE_PRECISION.
Summations run in a fixed order (mpmath.fsum over a deterministic grid
enumeration), so results are bit-for-bit reproducible at a given precision.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

import mpmath
from mpmath import mp

from ._rational import rational
from .laurent import LaurentPoly, cn_sequence, torus_sup_bound
from .picard_fuchs import RecurrenceSpec, mirror_map, resolve_example
from .qexpansion import bigQ_of_q

PRECISION_ENV = "MIRRORMEASURE_PRECISION"
DEFAULT_PRECISION_BITS = 128


class DomainNotCertifiedError(ValueError):
    """|t| does not exceed the torus bound: series convergence uncertified."""


class UnreliableEvaluationError(ArithmeticError):
    """Truncated-series evaluation whose terms are not decaying."""


def precision_bits(precision: int | None = None) -> int:
    """Resolve the working mantissa: explicit argument, else environment,
    else the 128-bit default; at least 53 bits."""
    if precision is None:
        precision = int(os.environ.get(PRECISION_ENV, DEFAULT_PRECISION_BITS))
    precision = int(precision)
    if precision < 53:
        raise ValueError("precision below 53 bits is not supported")
    return precision


def _to_mpf(value) -> mpmath.mpf:
    """Exact rational (or int) to mpf at the current working precision."""
    q = rational(value)
    return mpmath.mpf(int(q.numerator)) / mpmath.mpf(int(q.denominator))


def _to_number(t):
    """Accept int/str/mpf/mpc/float for t; rationals go through exactly."""
    if isinstance(t, (mpmath.mpf, mpmath.mpc)):
        return +t
    try:
        return _to_mpf(t)
    except (TypeError, ValueError):
        return mpmath.mpmathify(t)


def series_tail_bound(poly: LaurentPoly, t, order: int, precision: int | None = None):
    """Geometric bound on the dropped series tail: with rho = bound/|t| < 1,
    |sum_{n>N} c_n t^{-n}/n| <= rho^{N+1} / ((N+1)(1-rho))."""
    bits = precision_bits(precision)
    with mp.workprec(bits):
        tv = _to_number(t)
        rho = _to_mpf(torus_sup_bound(poly)) / abs(tv)
        if rho >= 1:
            raise DomainNotCertifiedError(
                f"|t| = {mpmath.nstr(abs(tv), 8)} does not exceed the torus bound"
            )
        return +(rho ** (order + 1) / ((order + 1) * (1 - rho)))


def mahler_series(poly: LaurentPoly, t, order: int = 80, precision: int | None = None):
    """m(F_t) = log|t| - Re sum_{n=1}^{N} c_n t^{-n}/n.

    Refuses when |t| <= torus_sup_bound(P), since |c_n| <= bound^n is then
    no longer a convergence certificate (the quadrature route still works).
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    bits = precision_bits(precision)
    bound = torus_sup_bound(poly)
    with mp.workprec(bits):
        tv = _to_number(t)
        if not abs(tv) > _to_mpf(bound):
            raise DomainNotCertifiedError(
                f"|t| = {mpmath.nstr(abs(tv), 8)} does not exceed the torus bound "
                f"{bound}; the series for m(F_t) is not certified to converge"
            )
        cs = cn_sequence(poly, order)
        inv = 1 / tv
        power = mpmath.mpf(1)
        terms = []
        for n in range(1, order + 1):
            power = power * inv
            if cs[n]:
                terms.append(_to_mpf(cs[n]) * power / n)
        total = mpmath.fsum(terms, absolute=False)
        return +(mpmath.log(abs(tv)) - mpmath.re(total))


@dataclass(frozen=True)
class QuadratureValue:
    """One trapezoid evaluation: value, grid, smallest |F_t| seen, floor."""

    value: object
    grid: int
    min_abs: object
    floor: object
    warning: str | None = None


def mahler_quadrature(
    poly: LaurentPoly,
    t,
    grid: int = 128,
    precision: int | None = None,
    floor=None,
) -> QuadratureValue:
    """Mean of log|F_t| over the M x M grid of roots of unity.

    The uniform grid is the periodic trapezoid rule, geometrically
    convergent when F_t has no torus zeros.  Any grid point with |F_t|
    below the floor (default 2^(-bits/2)) triggers a singularity warning on
    the result; the value is still returned, with no accuracy claim.
    """
    if grid < 1:
        raise ValueError("grid must be at least 1")
    bits = precision_bits(precision)
    terms = poly.two_variable_form()
    with mp.workprec(bits):
        tv = _to_number(t)
        floor_v = (
            mpmath.mpf(2) ** -(bits // 2) if floor is None else mpmath.mpf(floor)
        )
        if not terms:
            value = mpmath.log(abs(tv))
            min_abs = abs(tv)
        else:
            # Group P(x,y,1)/(xy) = sum_a x^a * g_a(y); precompute g_a rows.
            by_a: dict[int, list] = {}
            for (a, b), c in sorted(terms.items()):
                by_a.setdefault(a, []).append((b, _to_mpf(c)))
            roots = [mpmath.expjpi(mpmath.mpf(2 * j) / grid) for j in range(grid)]
            rows = {
                a: [
                    mpmath.fsum((c * roots[(b * k) % grid] for b, c in col), absolute=False)
                    for k in range(grid)
                ]
                for a, col in by_a.items()
            }
            a_exponents = sorted(rows)
            logs = []
            min_abs = mpmath.inf
            for j in range(grid):
                xpow = {a: roots[(a * j) % grid] for a in a_exponents}
                for k in range(grid):
                    f = tv - mpmath.fsum(
                        (xpow[a] * rows[a][k] for a in a_exponents), absolute=False
                    )
                    af = abs(f)
                    if af < min_abs:
                        min_abs = af
                    logs.append(mpmath.log(af) if af else -mpmath.inf)
            value = mpmath.fsum(logs, absolute=False) / (grid * grid)
        warning = None
        if min_abs < floor_v:
            warning = (
                f"grid point with |F_t| = {mpmath.nstr(min_abs, 8)} below the floor "
                f"{mpmath.nstr(floor_v, 8)}: integrand nearly singular, "
                "quadrature accuracy not certified"
            )
        return QuadratureValue(+value, grid, +min_abs, +floor_v, warning)


@lru_cache(maxsize=None)
def _bigq_of_psi(spec: RecurrenceSpec, order: int):
    """Q as a series in psi: Q(q) composed with the mirror map."""
    return bigQ_of_q(spec, order).compose(mirror_map(spec, order))


def _evaluate_decaying(series, x):
    """Horner evaluation with an empirical decay certificate.

    Requires the last magnitudes |c_k x^k| to be decreasing; the tail beyond
    the truncation is then estimated geometrically from the final ratio.
    Raises UnreliableEvaluationError when the terms are not decaying.
    """
    terms = []
    power = mpmath.mpf(1)
    for k in range(series.order + 1):
        c = series[k]
        terms.append((_to_mpf(c) * power) if c else mpmath.mpf(0))
        power = power * x
    magnitudes = [abs(v) for v in terms if v]
    if len(magnitudes) < 3:
        return mpmath.fsum(terms, absolute=False), mpmath.mpf(0)
    tail = magnitudes[-3:]
    ratios = [tail[i + 1] / tail[i] for i in range(2) if tail[i]]
    worst = max(ratios) if ratios else mpmath.mpf(0)
    if worst >= 1:
        raise UnreliableEvaluationError(
            "truncated series terms are not decaying at this argument; "
            "the evaluation point is outside the empirical convergence region"
        )
    estimate = tail[-1] * worst / (1 - worst) if worst else mpmath.mpf(0)
    return mpmath.fsum(terms, absolute=False), +estimate


@dataclass(frozen=True)
class MahlerCrossCheck:
    """Triple cross-check of the Mahler measure for a registry example."""

    example_id: int
    t: object
    order: int
    grid: int
    series_value: object
    quadrature_value: object
    bigq_value: object
    series_tail: object
    bigq_tail_estimate: object
    max_pairwise_difference: object
    quadrature: QuadratureValue


def mahler_vs_bigQ(
    example,
    t,
    order: int = 80,
    grid: int = 128,
    precision: int | None = None,
) -> MahlerCrossCheck:
    """Compare the series value, quadrature value, and -(1/nu) log|Q| at
    psi = t^(-nu) for one registry example; real t above the bound only."""
    entry = resolve_example(example)
    spec = entry.spec
    from .laurent import parse_poly

    poly = parse_poly(entry.polynomial)
    bits = precision_bits(precision)
    with mp.workprec(bits):
        tv = _to_number(t)
        if isinstance(tv, mpmath.mpc):
            raise ValueError("the product route is restricted to real t")
        bound = _to_mpf(torus_sup_bound(poly))
        if not tv > bound:
            raise DomainNotCertifiedError(
                f"t = {mpmath.nstr(tv, 8)} does not exceed the torus bound "
                f"{torus_sup_bound(poly)}"
            )
        series_v = mahler_series(poly, tv, order, bits)
        quad = mahler_quadrature(poly, tv, grid, bits)
        psi_value = tv ** (-spec.nu)
        bigq_series = _bigq_of_psi(spec, order)
        bigq_at, tail_est = _evaluate_decaying(bigq_series, psi_value)
        bigq_v = -mpmath.log(abs(bigq_at)) / spec.nu
        tail = series_tail_bound(poly, tv, order, bits)
        diffs = [
            abs(series_v - quad.value),
            abs(series_v - bigq_v),
            abs(quad.value - bigq_v),
        ]
        return MahlerCrossCheck(
            example_id=entry.example_id,
            t=+tv,
            order=order,
            grid=grid,
            series_value=series_v,
            quadrature_value=quad.value,
            bigq_value=+bigq_v,
            series_tail=tail,
            bigq_tail_estimate=tail_est,
            max_pairwise_difference=+max(diffs),
            quadrature=quad,
        )


@dataclass(frozen=True)
class QuadratureReport:
    """Series/quadrature pair for one polynomial and parameter value."""

    t: object
    domain_certified: bool
    series_value: object
    quadrature_value: object
    grid_size: int
    abs_difference: object
    warnings: tuple = ()


def mahler_report(
    poly: LaurentPoly,
    t,
    order: int = 80,
    grid: int = 128,
    precision: int | None = None,
) -> QuadratureReport:
    """Quadrature always; the series route when the domain is certified,
    downgrading an uncertified domain to a warning instead of an error."""
    bits = precision_bits(precision)
    with mp.workprec(bits):
        tv = _to_number(t)
        bound = torus_sup_bound(poly)
        certified = bool(abs(tv) > _to_mpf(bound))
        warnings = []
        quad = mahler_quadrature(poly, tv, grid, bits)
        if quad.warning:
            warnings.append(quad.warning)
        series_v = None
        difference = None
        if certified:
            series_v = mahler_series(poly, tv, order, bits)
            difference = +abs(series_v - quad.value)
        else:
            warnings.append(
                f"domain not certified (torus bound {bound}): series route skipped"
            )
        return QuadratureReport(
            t=+tv,
            domain_certified=certified,
            series_value=series_v,
            quadrature_value=quad.value,
            grid_size=grid,
            abs_difference=difference,
            warnings=tuple(warnings),
        )
