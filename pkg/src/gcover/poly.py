"""Sparse multivariate polynomials over an exact coefficient field.

A polynomial is a dict mapping exponent tuples to nonzero field
elements, tied to a :class:`PolyRing` (field, variable names, term
order). Values are immutable by convention: no operation mutates an
existing polynomial. Coefficient fields are duck-typed; elements must
support ``+ - * /``, unary ``-``, ``==`` and truthiness (nonzero), and
the field object supplies ``zero``, ``one`` and ``coerce``.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError, RingMismatchError, ZeroPolynomialError
from .orders import GREVLEX, TermOrder


class RationalField:
    """The rational numbers; elements are `fractions.Fraction` values."""

    name = "QQ"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, v):
        if isinstance(v, Fraction):
            return v
        if isinstance(v, int):
            return Fraction(v)
        raise TypeError(f"cannot coerce {v!r} into QQ")

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class PolyRing:
    """A polynomial ring: coefficient field, named variables, term order."""

    __slots__ = ("field", "names", "order", "nvars", "index")

    def __init__(self, field, names, order: TermOrder = GREVLEX):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.field = field
        self.names = names
        self.nvars = len(names)
        self.order = order
        self.index = {n: i for i, n in enumerate(names)}

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.field == other.field
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.names, self.order))

    def __repr__(self):
        return f"{self.field.name}[{','.join(self.names)}; {self.order.name}]"

    def with_order(self, order):
        """Sibling ring over the same variables under a different order."""
        return PolyRing(self.field, self.names, order)

    # -- constructors -------------------------------------------------

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return Polynomial(self, {(0,) * self.nvars: self.field.one})

    def const(self, c):
        c = self.field.coerce(c) if not _is_elem(self.field, c) else c
        if not c:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name):
        i = self.index[name] if isinstance(name, str) else name
        exp = [0] * self.nvars
        exp[i] = 1
        return Polynomial(self, {tuple(exp): self.field.one})

    def monomial(self, exp, c=None):
        c = self.field.one if c is None else c
        if not c:
            return self.zero()
        return Polynomial(self, {tuple(exp): c})

    def poly(self, coeffs):
        """Build a polynomial from a dict, pruning zero coefficients."""
        return Polynomial(self, {e: c for e, c in coeffs.items() if c})

    def parse(self, text):
        return parse_poly(self, text)

    def convert(self, p):
        """Re-home a polynomial from a ring with the same variable names."""
        if p.ring.names != self.names:
            raise RingMismatchError(f"cannot convert between {p.ring!r} and {self!r}")
        if p.ring.field == self.field:
            return Polynomial(self, dict(p.coeffs))
        coeffs = {}
        for e, c in p.coeffs.items():
            c2 = self.field.coerce(c)
            if c2:
                coeffs[e] = c2
        return Polynomial(self, coeffs)


def _is_elem(field, v):
    # cheap duck test: rationals are Fractions, residue fractions know their field
    if isinstance(field, RationalField):
        return isinstance(v, Fraction)
    return getattr(v, "field", None) == field


class Polynomial:
    __slots__ = ("ring", "coeffs", "_terms")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = coeffs
        self._terms = None

    # -- basic queries ------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def support(self):
        """Exponents in descending term order (cached)."""
        if self._terms is None:
            self._terms = sorted(self.coeffs, key=self.ring.order.key, reverse=True)
        return self._terms

    def lt(self):
        if not self.coeffs:
            raise ZeroPolynomialError("leading term of 0 is undefined")
        return self.support()[0]

    def lc(self):
        return self.coeffs[self.lt()]

    def lm(self):
        t = self.lt()
        return t, self.coeffs[t]

    def leading_data(self):
        """(leading term, leading coefficient, leading monomial)."""
        t = self.lt()
        c = self.coeffs[t]
        return t, c, Polynomial(self.ring, {t: c})

    def coeff(self, exp):
        return self.coeffs.get(tuple(exp), self.ring.field.zero)

    def total_degree(self):
        if not self.coeffs:
            return -1
        return max(sum(e) for e in self.coeffs)

    def degree_in(self, i):
        if not self.coeffs:
            return -1
        return max(e[i] for e in self.coeffs)

    def is_constant(self):
        return all(not any(e) for e in self.coeffs)

    def const_value(self):
        if not self.coeffs:
            return self.ring.field.zero
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.coeffs.values()))

    def variables(self):
        """Indices of variables that actually occur."""
        used = set()
        for e in self.coeffs:
            for i, k in enumerate(e):
                if k:
                    used.add(i)
        return sorted(used)

    def is_homogeneous_in(self, indices):
        degs = {sum(e[i] for i in indices) for e in self.coeffs}
        return len(degs) <= 1

    # -- arithmetic ----------------------------------------------------

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatchError(f"mixed rings {self.ring!r} and {other.ring!r}")

    def __add__(self, other):
        other = self._coerce_operand(other)
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce_operand(other)
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce_operand(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        if len(self.coeffs) > len(other.coeffs):
            a, b = other, self
        else:
            a, b = self, other
        out = {}
        for e1, c1 in a.coeffs.items():
            for e2, c2 in b.coeffs.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                c = c1 * c2
                s = out.get(e)
                if s is None:
                    if c:
                        out[e] = c
                else:
                    s = s + c
                    if s:
                        out[e] = s
                    else:
                        del out[e]
        return Polynomial(self.ring, out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        field = self.ring.field
        if not _is_elem(field, c):
            c = field.coerce(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: c * v for e, v in self.coeffs.items()})

    def __truediv__(self, c):
        if isinstance(c, Polynomial):
            c = c.const_value()
        field = self.ring.field
        if not _is_elem(field, c):
            c = field.coerce(c)
        return Polynomial(self.ring, {e: v / c for e, v in self.coeffs.items()})

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def _coerce_operand(self, other):
        if isinstance(other, Polynomial):
            return other
        return self.ring.const(other)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if other == 0:
                return self.is_zero()
            other = self.ring.const(other)
        if self.ring != other.ring:
            return False
        # subtract rather than compare dicts: residue-field coefficients
        # are non-canonical and compare relationally
        return (self - other).is_zero()

    def __ne__(self, other):
        return not self.__eq__(other)

    # -- term-level helpers --------------------------------------------

    def mul_term(self, exp, c=None):
        """Multiply by c * x^exp."""
        exp = tuple(exp)
        c = self.ring.field.one if c is None else c
        if not c:
            return self.ring.zero()
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(e, exp)): v * c for e, v in self.coeffs.items()},
        )

    def div_term(self, exp):
        """Exactly divide by the power product x^exp; error if any term fails."""
        exp = tuple(exp)
        out = {}
        for e, v in self.coeffs.items():
            d = tuple(a - b for a, b in zip(e, exp))
            if any(x < 0 for x in d):
                raise ValueError(f"term {_fmt_term(self.ring, e)} not divisible by {_fmt_term(self.ring, exp)}")
            out[d] = v
        return Polynomial(self.ring, out)

    def monic(self):
        return self / self.lc()

    def derivative(self, i):
        out = {}
        for e, v in self.coeffs.items():
            k = e[i]
            if k:
                e2 = e[:i] + (k - 1,) + e[i + 1 :]
                c = v * self.ring.field.coerce(k)
                if c:
                    out[e2] = c
        return Polynomial(self.ring, out)

    def evaluate(self, assignment):
        """Substitute field constants for some variables (index -> value).

        The result lives in the same ring with those exponents zeroed.
        """
        field = self.ring.field
        vals = {i: (v if _is_elem(field, v) else field.coerce(v)) for i, v in assignment.items()}
        out = {}
        for e, c in self.coeffs.items():
            factor = field.one
            e2 = list(e)
            for i, v in vals.items():
                k = e[i]
                if k:
                    factor = factor * v**k
                    e2[i] = 0
            c2 = c * factor
            if not c2:
                continue
            key = tuple(e2)
            s = out.get(key)
            if s is None:
                out[key] = c2
            else:
                s = s + c2
                if s:
                    out[key] = s
                else:
                    del out[key]
        return Polynomial(self.ring, out)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"<{format_poly(self)}>"

    def sort_key(self):
        """Deterministic key: descending support with coefficient strings."""
        return tuple((self.ring.order.key(e), str(self.coeffs[e])) for e in self.support())


# ---------------------------------------------------------------------------
# text format
#
# Canonical output lists terms in descending order: `u1*x^2 - 3/2*x + 1`.
# The grammar below reads that back (and more): + - * / ^, parentheses,
# integer and a/b rational literals; '/' is only allowed by a constant.
# ---------------------------------------------------------------------------


def _fmt_coeff(c):
    s = str(c)
    return s


def _fmt_term(ring, exp):
    parts = []
    for name, k in zip(ring.names, exp):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts) if parts else "1"


def format_poly(p):
    if not p.coeffs:
        return "0"
    ring = p.ring
    rational = isinstance(ring.field, RationalField)
    chunks = []
    for e in p.support():
        c = p.coeffs[e]
        term = _fmt_term(ring, e)
        if rational:
            neg = c < 0
            mag = -c if neg else c
            if term == "1":
                body = _fmt_coeff(mag)
            elif mag == 1:
                body = term
            else:
                body = f"{_fmt_coeff(mag)}*{term}"
            sign = "-" if neg else "+"
        else:
            cs = str(c)
            if term == "1":
                body = f"({cs})"
            elif cs == "1":
                body = term
            else:
                body = f"({cs})*{term}"
            sign = "+"
        chunks.append((sign, body))
    sign0, body0 = chunks[0]
    out = ("-" if sign0 == "-" else "") + body0
    for sign, body in chunks[1:]:
        out += f" {sign} {body}"
    return out


_SYMBOLS = "+-*/^()"


def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _SYMBOLS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", column=i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, ring, tokens):
        self.ring = ring
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", column=tok[2])
        return tok

    def parse(self):
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"trailing input {tok[1]!r}", column=tok[2])
        return p

    def expr(self):
        kind = self.peek()[0]
        negate = False
        if kind in "+-":
            negate = self.next()[0] == "-"
        p = self.term()
        if negate:
            p = -p
        while self.peek()[0] in "+-":
            op = self.next()[0]
            q = self.term()
            p = p - q if op == "-" else p + q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[0] in "*/":
            op = self.next()
            q = self.unary()
            if op[0] == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise ParseError("division only by a nonzero constant", column=op[2])
                p = p / q.const_value()
        return p

    def unary(self):
        if self.peek()[0] == "-":
            self.next()
            return -self.unary()
        return self.power()

    def power(self):
        p = self.atom()
        if self.peek()[0] == "^":
            tok = self.next()
            e = self.expect("int")
            return p ** int(e[1])
        return p

    def atom(self):
        tok = self.next()
        if tok[0] == "int":
            return self.ring.const(int(tok[1]))
        if tok[0] == "name":
            if tok[1] not in self.ring.index:
                raise ParseError(f"unknown variable {tok[1]!r}", column=tok[2])
            return self.ring.var(tok[1])
        if tok[0] == "(":
            p = self.expr()
            self.expect(")")
            return p
        raise ParseError(f"unexpected token {tok[1]!r}", column=tok[2])


def parse_poly(ring, text):
    return _Parser(ring, _tokenize(text)).parse()
