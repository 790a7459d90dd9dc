"""Second-order recurrences, Frobenius solutions, and the mirror map.

A recurrence triple (A, B, lam) encodes the operator

    L = theta (1 - A*psi + B*psi^2) theta + psi (B*psi - lam),
    theta = psi d/dpsi,

whose coefficient recursion is

    (m+1)^2 u_{m+1} = (A m^2 + A m + lam) u_m - B m^2 u_{m-1},
    u_0 = 1, u_{-1} = 0.

The holomorphic solution g1 = sum u_m psi^m and its logarithmic partner
g2 = g1 log(psi) + h are produced in one pass by running the same recursion
over dual numbers a + b*eps with eps^2 = 0, which differentiates the index
shift m -> m + eps exactly.  The mirror map is q = psi exp(h/g1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ._rational import ONE, QQ, ZERO, is_rational, rational
from .series_core import TruncatedSeries


class DualNumber:
    """a + b*eps with eps^2 = 0; exact rational components."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = rational(a)
        self.b = rational(b)

    def __repr__(self) -> str:
        return f"DualNumber({self.a}, {self.b})"

    def __eq__(self, other) -> bool:
        if isinstance(other, DualNumber):
            return self.a == other.a and self.b == other.b
        if is_rational(other):
            return self.a == rational(other) and not self.b
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    @staticmethod
    def _coerce(value) -> "DualNumber | None":
        if isinstance(value, DualNumber):
            return value
        if is_rational(value):
            return DualNumber(value)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DualNumber(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return DualNumber(-self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DualNumber(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DualNumber(o.a - self.a, o.b - self.b)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DualNumber(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.a:
            raise ZeroDivisionError("dual number with zero real part")
        real = self.a / o.a
        return DualNumber(real, (self.b - real * o.b) / o.a)


@dataclass(frozen=True)
class RecurrenceSpec:
    """One recurrence triple plus the bookkeeping the expansions need.

    nu is the diagonal step (c_{nu*m} = u_m), alpha the sign in the
    weight-3 product normalization, kappa the optional scaling constant for
    the growth expansion (None when no value is defined for the spec).
    """

    A: int
    B: int
    lam: int
    nu: int = 1
    alpha: int = -1
    kappa: int | None = None
    polynomial_id: str | None = None

    def __post_init__(self):
        for name in ("A", "B", "lam", "nu"):
            if not isinstance(getattr(self, name), int):
                raise TypeError(f"{name} must be an integer")
        if self.nu < 1:
            raise ValueError("nu must be a positive integer")
        if self.alpha not in (1, -1):
            raise ValueError("alpha must be +1 or -1")
        if self.kappa is not None and not isinstance(self.kappa, int):
            raise TypeError("kappa must be an integer or None")


@dataclass(frozen=True)
class FrobeniusPair:
    """Holomorphic solution g1 and the log partner tail h (g2 = g1 log psi + h)."""

    g1: TruncatedSeries
    h: TruncatedSeries


def u_sequence(spec: RecurrenceSpec, m_max: int) -> list:
    """[u_0, ..., u_M] of the recurrence; exact rationals (integral or not)."""
    if m_max < 0:
        raise ValueError("m_max must be non-negative")
    values = [ONE]
    prev = ZERO
    for m in range(m_max):
        cur = values[-1]
        num = (spec.A * m * m + spec.A * m + spec.lam) * cur - spec.B * m * m * prev
        values.append(num / ((m + 1) * (m + 1)))
        prev = cur
    return values


def frobenius(spec: RecurrenceSpec, order: int) -> FrobeniusPair:
    """Both Frobenius solutions to the given psi-order in a single recursion.

    Substituting m -> m + eps into the index-shifted recursion and expanding
    to first order in eps gives, for m >= 1,

        u_m(eps) = [(A m(m-1) + lam + eps A(2m-1)) u_{m-1}(eps)
                    - (B (m-1)^2 + eps 2B(m-1)) u_{m-2}(eps)] / (m^2 + eps 2m),

    whose eps-components are the coefficients of h.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    A, B, lam = spec.A, spec.B, spec.lam
    values = [DualNumber(1)]
    prev = DualNumber(0)
    for m in range(1, order + 1):
        cur = values[-1]
        num = DualNumber(A * m * (m - 1) + lam, A * (2 * m - 1)) * cur
        if B:
            num = num - DualNumber(B * (m - 1) ** 2, 2 * B * (m - 1)) * prev
        values.append(num / DualNumber(m * m, 2 * m))
        prev = cur
    return FrobeniusPair(
        g1=TruncatedSeries([d.a for d in values]),
        h=TruncatedSeries([d.b for d in values]),
    )


def ode_residual(
    spec: RecurrenceSpec, series: TruncatedSeries, use_log_partner: bool = False
) -> TruncatedSeries:
    """Apply L to a candidate power-series solution; zero means annihilated.

    With use_log_partner=True the input is read as the tail h of
    g2 = g1 log(psi) + h and the residual includes the cross terms
    p theta(g1) + theta(p g1) that log(psi) produces, so a correct h again
    yields the zero series.
    """
    n = series.order
    p = TruncatedSeries([1, -spec.A, spec.B], n)
    r = TruncatedSeries([0, -spec.lam, spec.B], n)
    residual = (p * series.xdx()).xdx() + r * series
    if use_log_partner:
        g1 = frobenius(spec, n).g1
        residual = residual + p * g1.xdx() + (p * g1).xdx()
    return residual


def mirror_map(spec: RecurrenceSpec, order: int) -> TruncatedSeries:
    """q(psi) = psi * exp(h/g1) as a series in psi (zero constant term)."""
    if order < 1:
        raise ValueError("order must be at least 1")
    pair = frobenius(spec, order)
    return ((pair.h / pair.g1).exp().shift(1)).truncate(order)


@dataclass(frozen=True)
class ConsistencyReport:
    """Outcome of matching diagonal coefficients against recurrence values."""

    passed: bool
    order_checked: int
    first_mismatch: tuple | None = None  # (n, diagonal value, recurrence value)


def check_consistency(poly, spec: RecurrenceSpec, order: int) -> ConsistencyReport:
    """Verify c_n == u_{n/nu} (and c_n == 0 off the nu-grid) for n <= order."""
    from .laurent import cn_sequence

    if order < 0:
        raise ValueError("order must be non-negative")
    cs = cn_sequence(poly, order)
    us = u_sequence(spec, order // spec.nu)
    for n in range(order + 1):
        expected = us[n // spec.nu] if n % spec.nu == 0 else ZERO
        if cs[n] != expected:
            return ConsistencyReport(False, order, (n, cs[n], expected))
    return ConsistencyReport(True, order)


def search_triples(
    a_range: tuple, b_range: tuple, lam_range: tuple, depth: int
) -> list:
    """All integer triples (A, B, lam) in the inclusive ranges whose u_1..u_M
    are integers.  Integrality is tested with exact integer divisions, so no
    rational arithmetic is spent on rejected triples.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    out = []
    for A in range(a_range[0], a_range[1] + 1):
        for B in range(b_range[0], b_range[1] + 1):
            for lam in range(lam_range[0], lam_range[1] + 1):
                prev, cur = 0, 1
                ok = True
                for m in range(depth):
                    num = (A * m * m + A * m + lam) * cur - B * m * m * prev
                    den = (m + 1) * (m + 1)
                    if num % den:
                        ok = False
                        break
                    prev, cur = cur, num // den
                if ok:
                    out.append((A, B, lam))
    return out


@dataclass(frozen=True)
class RegistryEntry:
    """A worked example: polynomial text, its recurrence spec, and aliases."""

    example_id: int
    dynkin: str | None
    polynomial: str
    spec: RecurrenceSpec


REGISTRY: tuple[RegistryEntry, ...] = (
    RegistryEntry(
        1,
        "E8",
        "X^2 + Y^3 + Z^6",
        RecurrenceSpec(A=432, B=0, lam=60, nu=6, alpha=-1, kappa=-1,
                       polynomial_id="X^2 + Y^3 + Z^6"),
    ),
    RegistryEntry(
        2,
        "E7",
        "X^2 + Y^4 + Z^4",
        RecurrenceSpec(A=64, B=0, lam=12, nu=4, alpha=-1, kappa=-2,
                       polynomial_id="X^2 + Y^4 + Z^4"),
    ),
    RegistryEntry(
        3,
        "E6",
        "X^2*Y + Y^2*Z + Z^2*X",
        RecurrenceSpec(A=27, B=0, lam=6, nu=3, alpha=-1, kappa=-3,
                       polynomial_id="X^2*Y + Y^2*Z + Z^2*X"),
    ),
    RegistryEntry(
        4,
        "E5",
        "(X + Y)*(X*Y + Z^2)",
        RecurrenceSpec(A=16, B=0, lam=4, nu=2, alpha=-1, kappa=-4,
                       polynomial_id="(X + Y)*(X*Y + Z^2)"),
    ),
    RegistryEntry(
        5,
        None,
        "(X + Y + Z)*(X + Z)*(Y + Z)",
        RecurrenceSpec(A=11, B=-1, lam=3, nu=1, alpha=-1, kappa=None,
                       polynomial_id="(X + Y + Z)*(X + Z)*(Y + Z)"),
    ),
    RegistryEntry(
        6,
        None,
        "(X + Y)*(Y + Z)*(Z + X)",
        RecurrenceSpec(A=7, B=-8, lam=2, nu=1, alpha=-1, kappa=None,
                       polynomial_id="(X + Y)*(Y + Z)*(Z + X)"),
    ),
)

_REGISTRY_LOOKUP: dict = {}
for _entry in REGISTRY:
    _REGISTRY_LOOKUP[_entry.example_id] = _entry
    _REGISTRY_LOOKUP[str(_entry.example_id)] = _entry
    _REGISTRY_LOOKUP[f"#{_entry.example_id}"] = _entry
    if _entry.dynkin:
        _REGISTRY_LOOKUP[_entry.dynkin.upper()] = _entry


def resolve_example(key) -> RegistryEntry:
    """Look up a registry entry by number (1-6, int or str, '#3') or label ('E6')."""
    if isinstance(key, RegistryEntry):
        return key
    if isinstance(key, str):
        key = key.strip().upper()
    entry = _REGISTRY_LOOKUP.get(key)
    if entry is None:
        labels = ", ".join(e.dynkin for e in REGISTRY if e.dynkin)
        raise KeyError(f"unknown example {key!r}: use 1-6 or one of {labels}")
    return entry
