"""Laurent polynomials and their diagonal power coefficients.

The central quantity is c_n, the coefficient of X^n Y^n Z^n in P^n.  Dividing
P by the diagonal monomial XYZ turns this into the constant term of G^n with
G = P/(XYZ), which is computed by iterated sparse multiplication; partial
monomials that can no longer reach exponent zero within the remaining steps
are pruned.  All coefficients are exact rationals.

The canonical internal form is three-variable (the parser always produces
it); two-variable polynomials are accepted for direct use, and the
substitution Z = 1 feeds the torus computations.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from ._rational import ONE, QQ, ZERO, is_rational, rational


class LaurentParseError(ValueError):
    """Syntax or vocabulary error in polynomial text, with a position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


class LaurentPoly:
    """Finite sum of monomials c * X^i Y^j Z^k with integer exponents.

    Exponents may be negative.  All exponent vectors in one polynomial have
    the same length (2 or 3 variables).
    """

    __slots__ = ("_terms", "_nvars")

    def __init__(self, terms: Mapping | None = None, nvars: int = 3):
        if nvars not in (2, 3):
            raise ValueError("polynomials live in 2 or 3 variables")
        clean: dict[tuple, QQ] = {}
        if terms:
            for vec, coeff in terms.items():
                v = tuple(int(e) for e in vec)
                if len(v) != nvars:
                    raise ValueError(
                        f"exponent vector {v} has length {len(v)}, expected {nvars}"
                    )
                c = clean.get(v, ZERO) + rational(coeff)
                if c:
                    clean[v] = c
                elif v in clean:
                    del clean[v]
        self._terms = clean
        self._nvars = nvars

    @property
    def nvars(self) -> int:
        return self._nvars

    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._nvars == other._nvars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._nvars, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return "LaurentPoly(0)"
        names = "XYZ"[: self._nvars]
        parts = []
        for vec in sorted(self._terms, reverse=True):
            c = self._terms[vec]
            mono = "*".join(
                f"{names[i]}^{e}" if e != 1 else names[i]
                for i, e in enumerate(vec)
                if e
            )
            parts.append(f"{c}*{mono}" if mono else str(c))
        return f"LaurentPoly({' + '.join(parts)})"

    # -- ring structure ------------------------------------------------------

    def _check_compatible(self, other: "LaurentPoly") -> None:
        if self._nvars != other._nvars:
            raise ValueError("cannot combine polynomials in different variable counts")

    def __add__(self, other):
        if isinstance(other, LaurentPoly):
            self._check_compatible(other)
            out = dict(self._terms)
            for vec, c in other._terms.items():
                s = out.get(vec, ZERO) + c
                if s:
                    out[vec] = s
                elif vec in out:
                    del out[vec]
            return LaurentPoly(out, self._nvars)
        if is_rational(other):
            return self + LaurentPoly({(0,) * self._nvars: other}, self._nvars)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({v: -c for v, c in self._terms.items()}, self._nvars)

    def __sub__(self, other):
        if isinstance(other, LaurentPoly):
            return self + (-other)
        if is_rational(other):
            return self + (-rational(other))
        return NotImplemented

    def __rsub__(self, other):
        if is_rational(other):
            return (-self) + rational(other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            self._check_compatible(other)
            out: dict[tuple, QQ] = {}
            for va, ca in self._terms.items():
                for vb, cb in other._terms.items():
                    w = tuple(x + y for x, y in zip(va, vb))
                    s = out.get(w, ZERO) + ca * cb
                    if s:
                        out[w] = s
                    elif w in out:
                        del out[w]
            return LaurentPoly(out, self._nvars)
        if is_rational(other):
            r = rational(other)
            if not r:
                return LaurentPoly(None, self._nvars)
            return LaurentPoly(
                {v: r * c for v, c in self._terms.items()}, self._nvars
            )
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("negative powers are only defined for monomials")
            [(vec, c)] = self._terms.items()
            return LaurentPoly(
                {tuple(e * n for e in vec): rational(c) ** n}, self._nvars
            )
        result = LaurentPoly({(0,) * self._nvars: ONE}, self._nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- torus-related forms ---------------------------------------------------

    def substitute_z_one(self) -> "LaurentPoly":
        """Set Z = 1, merging terms; result is a two-variable polynomial."""
        if self._nvars == 2:
            return self
        out: dict[tuple, QQ] = {}
        for (i, j, _k), c in self._terms.items():
            w = (i, j)
            s = out.get(w, ZERO) + c
            if s:
                out[w] = s
            elif w in out:
                del out[w]
        return LaurentPoly(out, 2)

    def two_variable_form(self) -> dict:
        """Terms of P(x, y, 1)/(xy), the polynomial subtracted from t in F_t."""
        flat = self.substitute_z_one()
        return {(i - 1, j - 1): c for (i, j), c in flat._terms.items()}


# -- parsing --------------------------------------------------------------

_VAR_INDEX = {"X": 0, "Y": 1, "Z": 2}


def _tokenize(text: str) -> list[tuple]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha():
            up = ch.upper()
            if up not in _VAR_INDEX:
                raise LaurentParseError(f"unknown variable {ch!r}", i)
            tokens.append(("var", _VAR_INDEX[up], i))
            i += 1
            continue
        if ch in "+-*^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise LaurentParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    """Recursive descent over: expr := term ((+|-) term)*;
    term := signed (('*'? signed))*; signed := [+-]* power;
    power := atom ('^' integer)?; atom := INT | VAR | '(' expr ')'.
    """

    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple:
        return self.tokens[self.pos]

    def advance(self) -> tuple:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> LaurentPoly:
        poly = self.expr()
        kind, _, where = self.peek()
        if kind != "end":
            raise LaurentParseError("unexpected trailing input", where)
        return poly

    def expr(self) -> LaurentPoly:
        poly = self.term()
        while True:
            kind = self.peek()[0]
            if kind == "+":
                self.advance()
                poly = poly + self.term()
            elif kind == "-":
                self.advance()
                poly = poly - self.term()
            else:
                return poly

    def term(self) -> LaurentPoly:
        poly = self.signed()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.advance()
                poly = poly * self.signed()
            elif kind in ("int", "var", "("):
                poly = poly * self.signed()
            else:
                return poly

    def signed(self) -> LaurentPoly:
        sign = 1
        while self.peek()[0] in ("+", "-"):
            if self.advance()[0] == "-":
                sign = -sign
        poly = self.power()
        return poly if sign == 1 else -poly

    def power(self) -> LaurentPoly:
        poly = self.atom()
        if self.peek()[0] == "^":
            _, _, where = self.advance()
            exponent = self.integer_exponent()
            if exponent < 0 and len(poly.terms()) != 1:
                raise LaurentParseError("negative power of a non-monomial", where)
            poly = poly**exponent
        return poly

    def integer_exponent(self) -> int:
        kind, value, where = self.advance()
        if kind == "int":
            return value
        if kind == "-":
            kind2, value2, where2 = self.advance()
            if kind2 != "int":
                raise LaurentParseError("expected integer exponent", where2)
            return -value2
        if kind == "(":
            inner = self.integer_exponent()
            kind2, _, where2 = self.advance()
            if kind2 != ")":
                raise LaurentParseError("expected ')'", where2)
            return inner
        raise LaurentParseError("expected integer exponent", where)

    def atom(self) -> LaurentPoly:
        kind, value, where = self.advance()
        if kind == "int":
            return LaurentPoly({(0, 0, 0): value})
        if kind == "var":
            vec = [0, 0, 0]
            vec[value] = 1
            return LaurentPoly({tuple(vec): ONE})
        if kind == "(":
            poly = self.expr()
            kind2, _, where2 = self.advance()
            if kind2 != ")":
                raise LaurentParseError("expected ')'", where2)
            return poly
        raise LaurentParseError("expected a number, variable, or '('", where)


def parse_poly(text: str) -> LaurentPoly:
    """Parse polynomial text in X, Y, Z (case-insensitive) to expanded form.

    Supported syntax: + - * ^ ( ), implicit multiplication by juxtaposition,
    integer coefficients, integer exponents (negative exponents only on
    monomials).
    """
    return _Parser(text).parse()


# -- diagonal coefficients ---------------------------------------------------


def _diagonal_shift(poly: LaurentPoly) -> dict:
    """Terms of P divided by the diagonal monomial (all exponents minus 1)."""
    return {tuple(e - 1 for e in vec): c for vec, c in poly.terms().items()}


def power_coefficient(poly: LaurentPoly, n: int) -> QQ:
    """Coefficient c_n of X^n Y^n Z^n in P^n (diagonal of every variable).

    Iterated multiplication over the shifted polynomial G = P/(XYZ), keeping
    only partial monomials that can still reach exponent zero after the
    remaining factors: with k factors left, a partial exponent e in a
    variable whose per-factor increments lie in [lo, hi] must satisfy
    e + k*lo <= 0 <= e + k*hi.
    """
    if n < 0:
        raise ValueError("power must be non-negative")
    if n == 0:
        return ONE
    if poly.is_zero():
        return ZERO
    shifted = _diagonal_shift(poly)
    nv = poly.nvars
    items = list(shifted.items())
    lo = [min(vec[v] for vec in shifted) for v in range(nv)]
    hi = [max(vec[v] for vec in shifted) for v in range(nv)]
    acc = {(0,) * nv: ONE}
    for step in range(1, n + 1):
        remaining = n - step
        low_ok = [remaining * l for l in lo]
        high_ok = [remaining * h for h in hi]
        nxt: dict[tuple, QQ] = {}
        for vec, c in acc.items():
            for mv, mc in items:
                w = tuple(a + b for a, b in zip(vec, mv))
                if all(w[v] + low_ok[v] <= 0 <= w[v] + high_ok[v] for v in range(nv)):
                    s = nxt.get(w, ZERO) + c * mc
                    if s:
                        nxt[w] = s
                    elif w in nxt:
                        del nxt[w]
        if not nxt:
            return ZERO
        acc = nxt
    return acc.get((0,) * nv, ZERO)


def cn_sequence(poly: LaurentPoly, n_max: int) -> list:
    """The diagonal coefficients [c_0, ..., c_N] in one shared power iteration.

    G^k is carried as a sparse exponent map and its constant term read off at
    every step, so the whole sequence costs one length-N product chain.  When
    P is homogeneous of diagonal degree (every shifted exponent vector sums
    to zero) the last variable is projected away, which keeps the dense
    examples quick.
    """
    if n_max < 0:
        raise ValueError("order must be non-negative")
    out = [ONE]
    if n_max == 0:
        return out
    if poly.is_zero():
        return out + [ZERO] * n_max
    shifted = _diagonal_shift(poly)
    if all(sum(vec) == 0 for vec in shifted) and poly.nvars > 1:
        shifted = {vec[:-1]: c for vec, c in shifted.items()}
    nv = len(next(iter(shifted)))
    items = list(shifted.items())
    lo = [min(vec[v] for vec in shifted) for v in range(nv)]
    hi = [max(vec[v] for vec in shifted) for v in range(nv)]
    zero_key = (0,) * nv
    acc = {zero_key: ONE}
    for step in range(1, n_max + 1):
        remaining = n_max - step
        low_ok = [remaining * l for l in lo]
        high_ok = [remaining * h for h in hi]
        nxt: dict[tuple, QQ] = {}
        for vec, c in acc.items():
            for mv, mc in items:
                w = tuple(a + b for a, b in zip(vec, mv))
                if all(w[v] + low_ok[v] <= 0 <= w[v] + high_ok[v] for v in range(nv)):
                    s = nxt.get(w, ZERO) + c * mc
                    if s:
                        nxt[w] = s
                    elif w in nxt:
                        del nxt[w]
        if not nxt:
            out.extend([ZERO] * (n_max - step + 1))
            return out
        acc = nxt
        out.append(acc.get(zero_key, ZERO))
    return out


def torus_sup_bound(poly: LaurentPoly) -> QQ:
    """Sum of |coefficients| of P(x,y,1)/(xy): bounds max |P/(xy)| on |x|=|y|=1."""
    return sum((abs(c) for c in poly.two_variable_form().values()), ZERO)
