"""Constructible subsets of the parameter space Spec Q[u].

A locally closed piece is V(a) minus V(b) for ideals a, b, both only
meaningful up to radical; a constructible set is a finite union of
pieces. The unit ideal as open part means "subtract nothing" and as
closed part means the empty set. Emptiness of a piece is decided by
radical membership of the open part's generators in the closed part.
"""

from __future__ import annotations

from .groebner import Ideal
from .minprimes import PrimeIdeal, minimal_primes


def _normed(ideal):
    gb = ideal.groebner()
    out = Ideal(ideal.ring, gb)
    out._gb = gb
    return out


def _product_ideal(b, c):
    ring = b.ring
    if b.is_unit():
        return c
    if c.is_unit():
        return b
    if b.is_zero() or c.is_zero():
        return Ideal.zero(ring)
    return Ideal(ring, [f * g for f in b.gens for g in c.gens])


class LocallyClosedPiece:
    """V(closed) minus V(open_); immutable."""

    __slots__ = ("closed", "open_", "_empty")

    def __init__(self, closed: Ideal, open_: Ideal):
        self.closed = closed
        self.open_ = open_
        self._empty = None

    @classmethod
    def closed_set(cls, ideal):
        return cls(ideal, Ideal.unit(ideal.ring))

    def ring(self):
        return self.closed.ring

    def is_empty(self):
        if self._empty is None:
            if self.closed.is_unit():
                self._empty = True
            elif self.open_.is_zero():
                self._empty = True
            else:
                self._empty = all(self.closed.radical_contains(g) for g in self.open_.gens)
        return self._empty

    def intersect(self, other):
        return LocallyClosedPiece(
            _normed(self.closed + other.closed), _product_ideal(self.open_, other.open_)
        )

    def minus(self, other):
        """Set difference against another piece, as a list of pieces."""
        a, b = self.closed, self.open_
        c, d = other.closed, other.open_
        return [
            LocallyClosedPiece(a, _product_ideal(b, c)),
            LocallyClosedPiece(_normed(a + d), b),
        ]

    def contains_point(self, point):
        """point: dict var-index -> Fraction covering all ring variables."""
        for g in self.closed.gens:
            if g.evaluate(point):
                return False
        for g in self.open_.gens:
            if g.evaluate(point):
                return True
        return False

    def contains_generic_point(self, prime: PrimeIdeal):
        """Membership of the generic point of V(prime)."""
        if not all(prime.contains(g) for g in self.closed.gens):
            return False
        return not all(prime.contains(g) for g in self.open_.gens)

    def key(self):
        return (self.closed.key(), self.open_.key())

    def __repr__(self):
        return f"<V({', '.join(str(g) for g in self.closed.gens)}) \\ V({', '.join(str(g) for g in self.open_.gens)})>"


class ConstructibleSet:
    """Finite union of locally closed pieces."""

    __slots__ = ("ring", "pieces")

    def __init__(self, ring, pieces):
        self.ring = ring
        self.pieces = tuple(p for p in pieces if not p.is_empty())

    @classmethod
    def whole_space(cls, ring):
        return cls(ring, [LocallyClosedPiece(Ideal.zero(ring), Ideal.unit(ring))])

    @classmethod
    def empty(cls, ring):
        return cls(ring, [])

    @classmethod
    def from_piece(cls, piece):
        return cls(piece.ring(), [piece])

    def is_empty(self):
        return not self.pieces

    def union(self, other):
        return ConstructibleSet(self.ring, list(self.pieces) + list(other.pieces))

    def intersect(self, other):
        out = []
        for p in self.pieces:
            for q in other.pieces:
                out.append(p.intersect(q))
        return ConstructibleSet(self.ring, out)

    def difference(self, other):
        pieces = list(self.pieces)
        for q in other.pieces:
            nxt = []
            for p in pieces:
                nxt.extend(x for x in p.minus(q) if not x.is_empty())
            pieces = nxt
            if not pieces:
                break
        return ConstructibleSet(self.ring, pieces)

    def contains_set(self, other):
        return other.difference(self).is_empty()

    def equals(self, other):
        return self.contains_set(other) and other.contains_set(self)

    def contains_point(self, point):
        return any(p.contains_point(point) for p in self.pieces)

    def contains_generic_point(self, prime):
        return any(p.contains_generic_point(prime) for p in self.pieces)

    def closure_primes(self):
        """Minimal primes of the closure, as a canonically sorted list."""
        collected = {}
        for piece in self.pieces:
            for p in minimal_primes(piece.closed):
                # keep the component only if the piece meets it generically
                if not all(p.contains(g) for g in piece.open_.gens):
                    collected.setdefault(p.key(), p)
        primes = list(collected.values())
        keep = []
        for p in primes:
            minimal = True
            for q in primes:
                if q.key() != p.key() and all(p.contains(g) for g in q.gens):
                    minimal = False
                    break
            if minimal:
                keep.append(p)
        return sorted(keep, key=lambda p: p.key())

    def closure(self):
        return ConstructibleSet(
            self.ring, [LocallyClosedPiece.closed_set(p.ideal) for p in self.closure_primes()]
        )

    def key(self):
        return tuple(sorted(p.key() for p in self.pieces))

    def __repr__(self):
        if not self.pieces:
            return "<empty set>"
        return " u ".join(repr(p) for p in self.pieces)


def largest_open_inside(prime: PrimeIdeal, target: ConstructibleSet):
    """The union of all open subsets of Z = V(prime) contained in target.

    Computed as Z minus closure(Z minus target); the result is a single
    locally closed piece with closed part ``prime``.
    """
    ring = prime.ideal.ring
    z = ConstructibleSet.from_piece(LocallyClosedPiece.closed_set(prime.ideal))
    outside = z.difference(target)
    comps = outside.closure_primes()
    if not comps:
        open_ = Ideal.unit(ring)
    else:
        open_ = comps[0].ideal
        for q in comps[1:]:
            open_ = open_.intersect(q.ideal)
        open_ = _normed(open_)
    return LocallyClosedPiece(prime.ideal, open_)
