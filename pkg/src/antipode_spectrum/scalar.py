"""Scalar backends and the literal grammar.

Three kinds of scalar flow through the package:

* CycNum       exact element of Q(zeta_n)           (cyclotomic backend)
* FactoredValue  factored rational function of torus parameters (symbolic)
* complex / NumericScalar  tolerance-tagged floats  (numeric backend)

Literals follow the grammar

    rational ::= int[/int]
    atom     ::= rational | "z"["^"int] | ("L" | "L1" | "L2" | ...)["^"int]
    expr     ::= usual + - * / with parentheses

"z" is zeta_order for the declared field order.  Parsing produces a
LaurentPoly; helpers narrow it to a CycNum, a FactoredValue or a complex
number depending on the backend.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cyclotomic import CycNum
from .errors import DivisionByZero, NotFactorable, ParseError
from .symbolic import FactoredContext, FactoredValue, LaurentPoly

DEFAULT_TOLERANCE = 1e-9


class NumericScalar:
    """A complex value with an explicit comparison tolerance."""

    __slots__ = ("value", "tolerance")

    def __init__(self, value, tolerance: float = DEFAULT_TOLERANCE):
        self.value = complex(value)
        self.tolerance = float(tolerance)
        if self.tolerance < 0:
            raise ValueError("tolerance must be nonnegative")

    def _val(self, other):
        if isinstance(other, NumericScalar):
            return other.value, max(self.tolerance, other.tolerance)
        return complex(other), self.tolerance

    def __eq__(self, other):
        v, tol = self._val(other)
        return abs(self.value - v) <= tol

    def __add__(self, other):
        v, tol = self._val(other)
        return NumericScalar(self.value + v, tol)

    __radd__ = __add__

    def __sub__(self, other):
        v, tol = self._val(other)
        return NumericScalar(self.value - v, tol)

    def __mul__(self, other):
        v, tol = self._val(other)
        return NumericScalar(self.value * v, tol)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v, tol = self._val(other)
        if v == 0:
            raise DivisionByZero("numeric division by zero")
        return NumericScalar(self.value / v, tol)

    def __bool__(self):
        return abs(self.value) > self.tolerance

    def __repr__(self):
        return f"NumericScalar({self.value}, tol={self.tolerance})"


# -- spec-facing operation wrappers -------------------------------------------

def cyc_arithmetic(a: CycNum, b: CycNum, op: str) -> CycNum:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def galois_conjugate(a: CycNum) -> CycNum:
    return a.conjugate()


def factored_combine(a: FactoredValue, b: FactoredValue, op: str) -> FactoredValue:
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


# -- canonical merge / sort keys ----------------------------------------------

def _round_digits(tol: float) -> int:
    if tol <= 0:
        return 12
    return max(1, min(12, int(round(-math.log10(tol)))))


def canonical_key(x, tol: float = DEFAULT_TOLERANCE):
    """Hashable, sortable key identifying a scalar up to canonical equality.

    Keys are only compared within a single backend per run.
    """
    if hasattr(x, "canonical_key"):
        return x.canonical_key(tol)
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, CycNum):
        if x.is_rational():
            x = x.rational_value()  # field-independent key for rationals
        else:
            return ("cyc", x.field.order, x.sort_key())
    if isinstance(x, FactoredValue):
        return ("fac", x.sort_key())
    if isinstance(x, NumericScalar):
        x = x.value
    if isinstance(x, Fraction):
        return ("cyc", 1, ((x.numerator, x.denominator),))
    v = complex(x)
    d = _round_digits(tol)
    re = round(v.real, d) + 0.0  # normalize -0.0
    im = round(v.imag, d) + 0.0
    return ("num", re, im)


def numeric_value(x, lam: tuple = ()) -> complex:
    """Standard-embedding complex value of any scalar kind."""
    if isinstance(x, CycNum):
        return x.complex_value()
    if isinstance(x, FactoredValue):
        return x.complex_value(lam)
    if isinstance(x, NumericScalar):
        return x.value
    if isinstance(x, Fraction):
        return complex(x)
    return complex(x)


# -- literal tokenizer / parser ------------------------------------------------

class _Tok:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind = kind
        self.text = text
        self.pos = pos


def _tokenize(s: str):
    toks = []
    i, n = 0, len(s)
    while i < n:
        c = s[i]
        if c.isspace():
            i += 1
            continue
        if c in "+-*/^()":
            toks.append(_Tok(c, c, i))
            i += 1
            continue
        if c.isdigit() or (c == "." and i + 1 < n and s[i + 1].isdigit()):
            j = i
            seen_dot = False
            while j < n and (s[j].isdigit() or (s[j] == "." and not seen_dot)):
                seen_dot = seen_dot or s[j] == "."
                j += 1
            # scientific exponent
            if j < n and s[j] in "eE" and (j + 1 < n and (s[j + 1].isdigit() or s[j + 1] in "+-")):
                k = j + 2 if s[j + 1] in "+-" else j + 1
                if k < n and s[k].isdigit():
                    while k < n and s[k].isdigit():
                        k += 1
                    j = k
            toks.append(_Tok("num", s[i:j], i))
            i = j
            continue
        if c in ("z", "L"):
            j = i + 1
            if c == "L":
                while j < n and s[j].isdigit():
                    j += 1
            toks.append(_Tok("name", s[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", location=f"offset {i}")
    toks.append(_Tok("end", "", n))
    return toks


class _Parser:
    """Recursive descent over the literal grammar, evaluating into either a
    LaurentPoly or a FactoredValue (after a non-monomial division)."""

    def __init__(self, s: str, ctx: FactoredContext):
        self.src = s
        self.toks = _tokenize(s)
        self.i = 0
        self.ctx = ctx

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind):
        t = self.next()
        if t.kind != kind:
            raise ParseError(f"expected {kind!r}, found {t.text!r}", location=f"offset {t.pos}")
        return t

    def _signed_int(self) -> int:
        neg = False
        if self.peek().kind == "-":
            self.next()
            neg = True
        t = self.expect("num")
        if "." in t.text or "e" in t.text or "E" in t.text:
            raise ParseError("exponent must be an integer", location=f"offset {t.pos}")
        v = int(t.text)
        return -v if neg else v

    def parse(self):
        v = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ParseError(f"trailing input {t.text!r}", location=f"offset {t.pos}")
        return v

    def expr(self):
        v = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.next().kind
            w = self.term()
            v = self._add(v, w) if op == "+" else self._add(v, self._neg(w))
        return v

    def term(self):
        v = self.unary()
        while self.peek().kind in ("*", "/"):
            op = self.next().kind
            w = self.unary()
            v = self._mul(v, w) if op == "*" else self._div(v, w)
        return v

    def unary(self):
        if self.peek().kind == "-":
            self.next()
            return self._neg(self.unary())
        return self.primary()

    def primary(self):
        t = self.next()
        ctx = self.ctx
        if t.kind == "(":
            v = self.expr()
            self.expect(")")
            if self.peek().kind == "^":
                self.next()
                v = self._pow(v, self._signed_int())
            return v
        if t.kind == "num":
            try:
                q = Fraction(t.text)
            except ValueError:
                raise ParseError(f"bad number {t.text!r}", location=f"offset {t.pos}")
            return LaurentPoly.constant(ctx, ctx.field.from_rational(q))
        if t.kind == "name":
            e = 1
            if self.peek().kind == "^":
                self.next()
                e = self._signed_int()
            if t.text == "z":
                return LaurentPoly.constant(ctx, ctx.field.zeta(e))
            index = 0 if t.text == "L" else int(t.text[1:]) - 1
            if index < 0 or index >= ctx.nvars:
                raise ParseError(
                    f"torus variable {t.text} out of range (nvars={ctx.nvars})",
                    location=f"offset {t.pos}",
                )
            return LaurentPoly.variable(ctx, index, e)
        raise ParseError(f"unexpected token {t.text!r}", location=f"offset {t.pos}")

    # arithmetic over the LaurentPoly | FactoredValue union
    def _neg(self, v):
        if isinstance(v, LaurentPoly):
            return -v
        return FactoredValue(v.ctx, -v.constant, v.monomial, dict(v.factors))

    def _to_poly(self, v) -> LaurentPoly:
        if isinstance(v, LaurentPoly):
            return v
        try:
            return v.expand()
        except NotFactorable:
            raise ParseError("cannot add or subtract factored quotients")

    def _to_factored(self, v) -> FactoredValue:
        if isinstance(v, FactoredValue):
            return v
        try:
            return FactoredValue.from_laurent(v)
        except NotFactorable as e:
            raise ParseError(str(e))
        except DivisionByZero:
            raise ParseError("zero denominator or zero factored value")

    def _add(self, a, b):
        return self._to_poly(a) + self._to_poly(b)

    def _mul(self, a, b):
        if isinstance(a, LaurentPoly) and isinstance(b, LaurentPoly):
            return a * b
        return self._to_factored(a) * self._to_factored(b)

    def _div(self, a, b):
        if isinstance(b, LaurentPoly):
            if b.is_zero():
                raise ParseError("division by zero")
            if len(b.terms) == 1:
                m, c = next(iter(b.terms.items()))
                if isinstance(a, LaurentPoly):
                    inv = LaurentPoly.constant(self.ctx, c.inverse()).scale_monomial(
                        tuple(-x for x in m)
                    )
                    return a * inv
        return self._to_factored(a) / self._to_factored(b)

    def _pow(self, a, e: int):
        if e >= 0:
            out = LaurentPoly.constant(self.ctx, self.ctx.field.one())
            for _ in range(e):
                out = self._mul(out, a)
            return out
        return self._to_factored(a) ** e


def parse_literal(s: str, order: int, nvars: int = 0):
    """Parse a scalar literal over Q(zeta_order) with nvars torus variables.

    Returns a LaurentPoly or a FactoredValue (only when a division by a
    non-monomial occurred).
    """
    ctx = FactoredContext(order, nvars)
    return _Parser(s, ctx).parse()


def count_torus_vars(s: str) -> int:
    """Highest torus-variable index mentioned in a literal (bare L counts as 1)."""
    best = 0
    for t in _tokenize(s):
        if t.kind == "name" and t.text.startswith("L"):
            best = max(best, 1 if t.text == "L" else int(t.text[1:]))
    return best


def literal_to_cycnum(s: str, order: int) -> CycNum:
    v = parse_literal(s, order, nvars=0)
    if isinstance(v, FactoredValue):
        if not v.is_constant():
            raise ParseError(f"literal {s!r} is not a plain field element")
        return v.constant
    const = v.terms.get(v.ctx.zero_exp(), v.ctx.field.zero())
    if len(v.terms) > (1 if const else 0):
        raise ParseError(f"literal {s!r} mentions torus variables")
    return const


def literal_to_factored(s: str, order: int, nvars: int) -> FactoredValue:
    v = parse_literal(s, order, nvars)
    if isinstance(v, FactoredValue):
        return v
    try:
        return FactoredValue.from_laurent(v)
    except NotFactorable as e:
        raise ParseError(str(e))
    except DivisionByZero:
        raise ParseError(f"literal {s!r} is zero")


def literal_to_complex(s: str, order: int) -> complex:
    return literal_to_cycnum(s, order).complex_value()
