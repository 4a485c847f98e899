"""Residue arithmetic at a prime of the parameter ring.

`QuotientDomain` is Q[u]/p for a prime ideal p, with canonical
representatives given by normal forms against the reduced Groebner
basis of p. `ResidueField` is its fraction field k(p); elements are
numerator/denominator pairs of normal forms. Fractions are never
globally normalized (canonical forms in k(p) are expensive); equality
is the relation a/b = c/d iff ad - bc lies in p. Only a cheap rational
content/sign normalization keeps representatives small.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .groebner import Ideal, normal_form
from .poly import Polynomial


class QuotientDomain:
    """Q[u]/p with p given by its reduced Groebner basis over Q."""

    __slots__ = ("ring", "ideal", "gb")

    def __init__(self, ideal: Ideal):
        self.ring = ideal.ring
        self.ideal = ideal
        self.gb = ideal.groebner()
        if len(self.gb) == 1 and self.gb[0].is_constant():
            raise ValueError("modulus is the unit ideal")

    def nf(self, f):
        """Canonical representative; zero iff f lies in the modulus."""
        if not self.gb or not f:
            return f
        return normal_form(f, self.gb)

    def contains(self, f):
        return not self.nf(f)

    def __eq__(self, other):
        return isinstance(other, QuotientDomain) and self.ideal == other.ideal

    def __hash__(self):
        return hash(self.ideal)

    def __repr__(self):
        return f"<{self.ring!r} mod {self.ideal!r}>"


def _fraction_content(p):
    """gcd of the rational coefficients of p (0 for the zero polynomial)."""
    num = 0
    den = 1
    for c in p.coeffs.values():
        num = gcd(num, c.numerator)
        den = lcm(den, c.denominator)
    if num == 0:
        return Fraction(0)
    return Fraction(num, den)


class ResidueFraction:
    """An element of k(p), stored as num/den with both in normal form."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den, normalized=False):
        dom = field.domain
        if not normalized:
            num = dom.nf(num)
            den = dom.nf(den)
            if not den:
                raise ZeroDivisionError("denominator lies in the modulus")
            num, den = _reduce_pair(num, den)
        self.field = field
        self.num = num
        self.den = den

    def __bool__(self):
        return bool(self.num)

    def _coerce(self, other):
        if isinstance(other, ResidueFraction):
            if other.field != self.field:
                raise ValueError("mixed residue fields")
            return other
        return self.field.coerce(other)

    def __add__(self, other):
        other = self._coerce(other)
        f = self.field
        num = self.num * other.den + other.num * self.den
        return ResidueFraction(f, num, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return ResidueFraction(self.field, -self.num, self.den, normalized=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return ResidueFraction(self.field, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def invert(self):
        if not self.num:
            raise ZeroDivisionError("inverting the zero class")
        return ResidueFraction(self.field, self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).invert()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.invert()

    def __pow__(self, n):
        out = self.field.one
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        cross = self.num * other.den - other.num * self.den
        return self.field.domain.contains(cross)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        raise TypeError("residue fractions are unhashable (relational equality)")

    def __str__(self):
        if self.den.is_constant() and self.den.const_value() == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return str(self)


def _reduce_pair(num, den):
    """Divide out the shared rational content; make den's lc positive."""
    if not num:
        one = den.ring.one()
        return num, one
    if num.coeffs == den.coeffs:
        one = den.ring.one()
        return one, one
    c = _fraction_content(den)
    cn = _fraction_content(num)
    g_num = gcd(cn.numerator, c.numerator)
    g_den = lcm(cn.denominator, c.denominator)
    g = Fraction(g_num, g_den)
    if g != 1:
        num = num / g
        den = den / g
    if den.lc() < 0:
        num = -num
        den = -den
    return num, den


class ResidueField:
    """The fraction field of Q[u]/p."""

    def __init__(self, domain: QuotientDomain):
        self.domain = domain
        self.name = f"Frac({domain.ring.field.name}[{','.join(domain.ring.names)}]/p)"
        one = domain.ring.one()
        self.zero = ResidueFraction(self, domain.ring.zero(), one, normalized=True)
        self.one = ResidueFraction(self, one, one, normalized=True)

    def coerce(self, v):
        if isinstance(v, ResidueFraction):
            if v.field != self:
                raise ValueError("element of a different residue field")
            return v
        if isinstance(v, (int, Fraction)):
            return ResidueFraction(self, self.domain.ring.const(Fraction(v)), self.domain.ring.one())
        if isinstance(v, Polynomial):
            return self.from_poly(v)
        raise TypeError(f"cannot coerce {v!r} into {self.name}")

    def from_poly(self, num, den=None):
        den = self.domain.ring.one() if den is None else den
        return ResidueFraction(self, num, den)

    def __eq__(self, other):
        return isinstance(other, ResidueField) and self.domain == other.domain

    def __hash__(self):
        return hash(self.domain)

    def __repr__(self):
        return self.name
