"""Exact rational scalars shared by every module.

gmpy2.mpq is used when available (markedly faster once numerators reach
hundreds of digits); plain fractions.Fraction otherwise.  Both types are
arbitrary precision, always normalized with positive denominator, and print
as "p/q" in lowest terms.

Floats are rejected everywhere: a binary float carries rounding error and
must never leak into exact series arithmetic.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as _mpq

    RATIONAL_BACKEND = "gmpy2"
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _mpq = Fraction
    RATIONAL_BACKEND = "fractions"

QQ = _mpq
_RATIONAL_TYPES = (int, type(_mpq(0)), Fraction)


def rational(value) -> QQ:
    """Coerce an int, Fraction, QQ, or string like "3/4" to a QQ value."""
    if isinstance(value, _RATIONAL_TYPES):
        return _mpq(value)
    if isinstance(value, str):
        return _mpq(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def is_rational(value) -> bool:
    """True for values accepted as exact scalars (ints and rationals)."""
    return isinstance(value, _RATIONAL_TYPES)


def is_integral(value) -> bool:
    """True when the rational value is an integer."""
    return rational(value).denominator == 1


ZERO = rational(0)
ONE = rational(1)
