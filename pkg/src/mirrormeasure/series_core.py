"""Truncated power series with exact rational coefficients.

A TruncatedSeries holds the coefficients c_0..c_N of a formal power series
known exactly through order N.  The order bound is explicit and travels with
the value: every binary operation truncates to the smaller operand order, and
nothing ever silently extends precision.  Coefficients are exact rationals;
floats are rejected on input.

Composition and reversion use Horner evaluation and Newton iteration; the
remaining operations are the usual O(N^2) triangular recurrences.
"""

from __future__ import annotations

from typing import Iterable

from ._rational import ONE, QQ, ZERO, is_rational, rational


class TruncatedSeries:
    """f = sum_{k=0}^{order} c_k x^k + O(x^{order+1})."""

    __slots__ = ("_c",)

    def __init__(self, coefficients: Iterable, order: int | None = None):
        c = [rational(v) for v in coefficients]
        if order is not None:
            if order < 0:
                raise ValueError("order bound must be >= 0")
            if len(c) > order + 1:
                del c[order + 1 :]
            else:
                c.extend([ZERO] * (order + 1 - len(c)))
        elif not c:
            raise ValueError("need at least one coefficient or an explicit order")
        self._c = tuple(c)

    @classmethod
    def constant(cls, value, order: int) -> "TruncatedSeries":
        return cls([value], order)

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls([ZERO], order)

    @classmethod
    def identity(cls, order: int) -> "TruncatedSeries":
        """The series x."""
        if order < 1:
            raise ValueError("the identity series needs order >= 1")
        return cls([ZERO, ONE], order)

    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coefficients(self) -> tuple:
        return self._c

    def __getitem__(self, k: int) -> QQ:
        if not 0 <= k <= self.order:
            raise IndexError(f"coefficient {k} outside known range 0..{self.order}")
        return self._c[k]

    def is_zero(self) -> bool:
        return not any(self._c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self._c[:8])
        tail = ", ..." if self.order >= 8 else ""
        return f"TruncatedSeries([{head}{tail}], order={self.order})"

    # -- order bookkeeping ------------------------------------------------

    def truncate(self, order: int) -> "TruncatedSeries":
        """Forget coefficients above the given (not larger) order."""
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        if order == self.order:
            return self
        return TruncatedSeries(self._c[: order + 1])

    def pad(self, order: int) -> "TruncatedSeries":
        """Zero-extend to a higher order.

        This asserts that the unknown coefficients are zero, which is not a
        truncation inverse; it is only sound where the tail is provably
        irrelevant (as in the Newton update inside revert).
        """
        if order < self.order:
            raise ValueError(f"pad target {order} below current order {self.order}")
        return TruncatedSeries(self._c + (ZERO,) * (order - self.order))

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by x^k.

        Upward shifts extend the order bound by k (those coefficients are
        genuinely determined); downward shifts require the low k coefficients
        to vanish and reduce the bound by k.
        """
        if k >= 0:
            return TruncatedSeries((ZERO,) * k + self._c)
        k = -k
        if k > self.order:
            raise ValueError("shift below order 0")
        if any(self._c[:k]):
            raise ValueError(f"cannot divide by x^{k}: low coefficients are nonzero")
        return TruncatedSeries(self._c[k:])

    def rescale(self, k: int) -> "TruncatedSeries":
        """Substitute x -> x^k for integer k >= 1, keeping the order bound."""
        if k < 1:
            raise ValueError("rescale factor must be a positive integer")
        if k == 1:
            return self
        out = [ZERO] * (self.order + 1)
        for j in range(self.order // k + 1):
            out[j * k] = self._c[j]
        return TruncatedSeries(out)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            n = min(self.order, other.order)
            return TruncatedSeries(
                [self._c[k] + other._c[k] for k in range(n + 1)]
            )
        if is_rational(other):
            c = list(self._c)
            c[0] = c[0] + rational(other)
            return TruncatedSeries(c)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-v for v in self._c])

    def __sub__(self, other):
        if isinstance(other, TruncatedSeries) or is_rational(other):
            return self.__add__(-other if isinstance(other, TruncatedSeries) else -rational(other))
        return NotImplemented

    def __rsub__(self, other):
        if is_rational(other):
            return (-self).__add__(rational(other))
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            n = min(self.order, other.order)
            a, b = self._c, other._c
            out = [ZERO] * (n + 1)
            for i in range(n + 1):
                ai = a[i]
                if ai:
                    for j in range(n + 1 - i):
                        out[i + j] += ai * b[j]
            return TruncatedSeries(out)
        if is_rational(other):
            r = rational(other)
            return TruncatedSeries([r * v for v in self._c])
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * other.invert()
        if is_rational(other):
            r = rational(other)
            if r == 0:
                raise ZeroDivisionError("division of a series by zero")
            return TruncatedSeries([v / r for v in self._c])
        return NotImplemented

    def __rtruediv__(self, other):
        if is_rational(other):
            return rational(other) * self.invert()
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.invert() ** (-n)
        result = TruncatedSeries.constant(ONE, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- inverse, exp, log, powers ------------------------------------------

    def invert(self) -> "TruncatedSeries":
        """Multiplicative inverse; requires a nonzero constant term."""
        if self._c[0] == 0:
            raise ValueError("inversion needs a nonzero constant term")
        n = self.order
        inv0 = ONE / self._c[0]
        g = [inv0]
        c = self._c
        for k in range(1, n + 1):
            s = ZERO
            for j in range(1, k + 1):
                if c[j]:
                    s += c[j] * g[k - j]
            g.append(-s * inv0)
        return TruncatedSeries(g)

    def exp(self) -> "TruncatedSeries":
        """Formal exponential; requires constant term 0."""
        if self._c[0] != 0:
            raise ValueError("exp needs constant term 0")
        n = self.order
        f = self._c
        g = [ONE] + [ZERO] * n
        for k in range(1, n + 1):
            s = ZERO
            for j in range(1, k + 1):
                if f[j]:
                    s += j * f[j] * g[k - j]
            g[k] = s / k
        return TruncatedSeries(g)

    def log(self) -> "TruncatedSeries":
        """Formal logarithm; requires constant term 1."""
        if self._c[0] != 1:
            raise ValueError("log needs constant term 1")
        n = self.order
        f = self._c
        l = [ZERO] * (n + 1)
        for k in range(1, n + 1):
            s = ZERO
            for j in range(1, k):
                if f[k - j]:
                    s += j * l[j] * f[k - j]
            l[k] = (k * f[k] - s) / k
        return TruncatedSeries(l)

    def pow_rational(self, r) -> "TruncatedSeries":
        """f^r = exp(r * log f) for rational r; requires constant term 1."""
        if self._c[0] != 1:
            raise ValueError("rational powers need constant term 1")
        return (self.log() * rational(r)).exp()

    # -- calculus -----------------------------------------------------------

    def derive(self) -> "TruncatedSeries":
        """d/dx; the order bound drops by one."""
        if self.order == 0:
            raise ValueError("derivative of an order-0 series retains no known terms")
        return TruncatedSeries([k * self._c[k] for k in range(1, self.order + 1)])

    def xdx(self) -> "TruncatedSeries":
        """The operator x d/dx; the order bound is preserved."""
        return TruncatedSeries([k * v for k, v in enumerate(self._c)])

    # -- composition and reversion -------------------------------------------

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """f(g(x)) by Horner evaluation; g must have constant term 0."""
        if inner._c[0] != 0:
            raise ValueError("composition needs inner constant term 0")
        n = min(self.order, inner.order)
        f = self._c[: n + 1]
        g = inner.truncate(n)
        result = TruncatedSeries.constant(f[n], n)
        for k in range(n - 1, -1, -1):
            result = result * g + f[k]
        return result

    def revert(self) -> "TruncatedSeries":
        """Compositional inverse g with f(g(x)) = x + O(x^{N+1}).

        Requires f(0) = 0 and f'(0) != 0.  Newton iteration doubles the
        number of correct coefficients each round; each update divides the
        residual (valuation >= 2) by f'(g), so the padded top coefficient of
        the inverted derivative never reaches the orders that are kept.
        """
        n = self.order
        if n < 1 or self._c[0] != 0:
            raise ValueError("reversion needs constant term 0 and order >= 1")
        if self._c[1] == 0:
            raise ValueError("reversion needs a nonzero linear coefficient")
        g = TruncatedSeries([ZERO, ONE / self._c[1]])
        correct = 1
        while correct < n:
            target = min(2 * correct, n)
            f = self.truncate(target)
            gp = g.pad(target)
            err = f.compose(gp) - TruncatedSeries.identity(target)
            dinv = f.derive().compose(gp.truncate(target - 1)).invert().pad(target)
            g = gp - err * dinv
            correct = target
        return g


# Free-function aliases matching the contract vocabulary.

def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f * g


def series_invert(f: TruncatedSeries) -> TruncatedSeries:
    return f.invert()


def series_exp(f: TruncatedSeries) -> TruncatedSeries:
    return f.exp()


def series_log(f: TruncatedSeries) -> TruncatedSeries:
    return f.log()


def series_revert(f: TruncatedSeries) -> TruncatedSeries:
    return f.revert()


def series_pow_rational(f: TruncatedSeries, r) -> TruncatedSeries:
    return f.pow_rational(r)


def series_derive(f: TruncatedSeries) -> TruncatedSeries:
    return f.derive()


def series_xdx(f: TruncatedSeries) -> TruncatedSeries:
    return f.xdx()
