"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are polynomials in zeta reduced modulo the n-th cyclotomic
polynomial Phi_n, with Fraction coefficients.  Reduction mod Phi_n (rather
than mod x^n - 1) makes the coefficient vector a canonical form, so equality
and hashing are structural.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache

from .errors import DivisionByZero, FieldMismatch


def _trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _trim(out)


def _poly_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _trim(out)


def _poly_divmod(a, b):
    # exact division over Q; b trimmed and nonzero
    a = [Fraction(x) for x in a]
    if len(a) < len(b):
        return [], _trim(a)
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    inv_lead = Fraction(1) / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv_lead
        if c:
            q[i] = c
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return _trim(q), _trim(a)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Coefficients of Phi_n (low degree first), by iterated exact division
    of x^n - 1 by Phi_d over the proper divisors d of n."""
    if n < 1:
        raise ValueError("order must be positive")
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            q, r = _poly_divmod(num, list(cyclotomic_polynomial(d)))
            assert not r, f"Phi_{d} must divide x^{n}-1"
            num = q
    return tuple(num)


class CycField:
    """The field Q(zeta_n) in the power basis 1, zeta, ..., zeta^(phi(n)-1)."""

    _instances: dict = {}

    def __new__(cls, order: int):
        inst = cls._instances.get(order)
        if inst is None:
            inst = super().__new__(cls)
            inst._init(order)
            cls._instances[order] = inst
        return inst

    def _init(self, order):
        self.order = order
        self.modulus = cyclotomic_polynomial(order)
        self.degree = len(self.modulus) - 1
        xdeg = tuple(-c for c in self.modulus[:-1])  # x^degree mod Phi_n
        pows = []
        v = [Fraction(0)] * self.degree
        v[0] = Fraction(1)
        for _ in range(order):
            pows.append(tuple(v))
            top = v[-1]
            v = [Fraction(0)] + v[:-1]
            if top:
                v = [c + top * r for c, r in zip(v, xdeg)]
        self._zeta_pows = pows  # zeta^e reduced, e = 0..order-1

    def __repr__(self):
        return f"CycField({self.order})"

    def __reduce__(self):  # pickling support: fields are interned singletons
        return (CycField, (self.order,))

    def zero(self) -> "CycNum":
        return CycNum(self, (Fraction(0),) * self.degree)

    def one(self) -> "CycNum":
        return self.from_rational(1)

    def from_rational(self, q) -> "CycNum":
        v = [Fraction(0)] * self.degree
        v[0] = Fraction(q)
        return CycNum(self, tuple(v))

    def zeta(self, e: int = 1) -> "CycNum":
        return CycNum(self, self._zeta_pows[e % self.order])

    def reduce(self, coeffs) -> "CycNum":
        """Reduce an arbitrary-length coefficient list mod Phi_n, using
        x^e = zeta^(e mod n) for the overflow exponents."""
        out = [Fraction(c) for c in coeffs[: self.degree]]
        out += [Fraction(0)] * (self.degree - len(out))
        for e in range(self.degree, len(coeffs)):
            c = coeffs[e]
            if c:
                row = self._zeta_pows[e % self.order]
                out = [a + Fraction(c) * b for a, b in zip(out, row)]
        return CycNum(self, tuple(out))


class CycNum:
    """An element of Q(zeta_n); immutable, canonical coefficient vector."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: CycField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    def _coerce(self, other):
        if isinstance(other, CycNum):
            if other.field is not self.field:
                raise FieldMismatch(
                    f"orders {self.field.order} and {other.field.order}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.order, self.coeffs))
        return self._hash

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycNum(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycNum(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        d = self.field.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        prod[i + j] += x * y
        return self.field.reduce(prod)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if not self:
            raise DivisionByZero("inverse of zero cyclotomic number")
        # extended Euclid against Phi_n; gcd is a nonzero constant since
        # Phi_n is irreducible over Q
        r0, r1 = list(self.field.modulus), _trim([Fraction(c) for c in self.coeffs])
        t0, t1 = [], [Fraction(1)]
        while r1:
            q, r = _poly_divmod(r0, r1)
            t = _poly_sub(t0, _poly_mul(q, t1))
            r0, r1, t0, t1 = r1, r, t1, t
        c = r0[0]
        return self.field.reduce([x / c for x in t0])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conjugate(self) -> "CycNum":
        """Galois conjugation zeta -> zeta^-1 (complex conjugation under the
        standard embedding); a ring involution fixing Q."""
        n = self.field.order
        acc = [Fraction(0)] * self.field.degree
        for k, c in enumerate(self.coeffs):
            if c:
                row = self.field._zeta_pows[(-k) % n]
                acc = [a + c * b for a, b in zip(acc, row)]
        return CycNum(self.field, tuple(acc))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def is_real(self) -> bool:
        return self.conjugate() == self

    def embed(self, target: CycField) -> "CycNum":
        """Image under zeta_m -> zeta_n^(n/m); requires m | n."""
        m, n = self.field.order, target.order
        if self.field is target:
            return self
        if n % m:
            raise FieldMismatch(f"Q(zeta_{m}) does not embed in Q(zeta_{n})")
        step = n // m
        acc = [Fraction(0)] * target.degree
        for k, c in enumerate(self.coeffs):
            if c:
                row = target._zeta_pows[(k * step) % n]
                acc = [a + c * b for a, b in zip(acc, row)]
        return CycNum(target, tuple(acc))

    def complex_value(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.field.order)
        return sum(float(c) * z**k for k, c in enumerate(self.coeffs) if c)

    def sort_key(self):
        return tuple((c.numerator, c.denominator) for c in self.coeffs)

    def __repr__(self):
        return f"CycNum({self.field.order}; {self})"

    def __str__(self):
        if not self:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                term = f"{mag}z^{k}" if k > 1 else f"{mag}z"
                parts.append(term if c > 0 else f"-{term}")
        s = parts[0]
        for p in parts[1:]:
            s += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return s
