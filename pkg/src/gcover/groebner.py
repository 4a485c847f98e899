"""Buchberger engine over a coefficient field, plus ideal operations.

The engine computes reduced Groebner bases with the two classical pair
criteria (coprime leading terms, chain criterion) and a queue ordered
by the term order of the pair lcm. Reduced bases are unique for a given
ideal and order, so every consumer of this module sees deterministic,
scheduling-independent output.

All functions optionally thread "tag" companions through the same
linear combinations as the polynomials themselves. Callers use this to
remember how basis elements decompose over the original generators
(the cover module tracks the ideal-vs-modulus split this way).
"""

from __future__ import annotations

from .errors import RingMismatchError
from .orders import GREVLEX, BlockOrder
from .poly import Polynomial, PolyRing


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def normal_form(f, basis, with_quotients=False):
    """Full division: f = sum(q_i g_i) + r with no term of r reducible.

    Reducers are chosen first-match in list order, making the result a
    deterministic function of (f, basis). Against a Groebner basis the
    remainder is the canonical normal form.
    """
    ring = f.ring
    lts = []
    lcs = []
    for g in basis:
        t = g.lt()
        lts.append(t)
        lcs.append(g.coeffs[t])
    quots = [{} for _ in basis] if with_quotients else None
    rem = {}
    work = dict(f.coeffs)
    order_key = ring.order.key
    while work:
        t = max(work, key=order_key)
        c = work.pop(t)
        for i, lt_g in enumerate(lts):
            if _divides(lt_g, t):
                shift = tuple(a - b for a, b in zip(t, lt_g))
                factor = c / lcs[i]
                if with_quotients:
                    q = quots[i]
                    prev = q.get(shift)
                    q[shift] = factor if prev is None else prev + factor
                    if not q[shift]:
                        del q[shift]
                g = basis[i]
                for e, v in g.coeffs.items():
                    if e == lt_g:
                        continue
                    key = tuple(a + b for a, b in zip(e, shift))
                    s = work.get(key)
                    s = -factor * v if s is None else s - factor * v
                    if s:
                        work[key] = s
                    elif key in work:
                        del work[key]
                break
        else:
            rem[t] = c
    r = Polynomial(ring, rem)
    if with_quotients:
        return [Polynomial(ring, q) for q in quots], r
    return r


def _combine_tags(tags, quots, start):
    out = start
    for tag, q in zip(tags, quots):
        if q and tag:
            out = out - q * tag
    return out


def s_polynomial(f, g):
    tf, tg = f.lt(), g.lt()
    m = _lcm(tf, tg)
    a = f.mul_term(tuple(x - y for x, y in zip(m, tf))) / f.lc()
    b = g.mul_term(tuple(x - y for x, y in zip(m, tg))) / g.lc()
    return a - b


def _s_pair_with_tag(f, ftag, g, gtag):
    tf, tg = f.lt(), g.lt()
    m = _lcm(tf, tg)
    sa = tuple(x - y for x, y in zip(m, tf))
    sb = tuple(x - y for x, y in zip(m, tg))
    ca, cb = f.lc(), g.lc()
    s = f.mul_term(sa) / ca - g.mul_term(sb) / cb
    tag = None
    if ftag is not None:
        tag = ftag.mul_term(sa) / ca - gtag.mul_term(sb) / cb
    return s, tag


def buchberger(gens, tags=None):
    """Reduced Groebner basis of <gens>, elements monic, ascending by lt.

    With ``tags`` (one companion polynomial per generator, or None
    entries), returns (basis, basis_tags) where each tag went through
    exactly the same combinations as its polynomial.
    """
    track = tags is not None
    items = []
    for k, g in enumerate(gens):
        if g:
            items.append((g, tags[k] if track else None))
    if not items:
        return ([], []) if track else []
    ring = items[0][0].ring
    zero_tag = ring.zero() if track else None

    G = []
    Gtags = []
    lts = []
    pairs = set()

    def add(g, tag):
        k = len(G)
        G.append(g)
        Gtags.append(tag if tag is not None else zero_tag)
        lts.append(g.lt())
        for i in range(k):
            pairs.add((i, k))

    for g, tag in items:
        add(g, tag)

    order_key = ring.order.key

    def pair_key(p):
        i, j = p
        return (order_key(_lcm(lts[i], lts[j])), i, j)

    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        ti, tj = lts[i], lts[j]
        # coprime criterion
        if all(a == 0 or b == 0 for a, b in zip(ti, tj)):
            continue
        # chain criterion: some k with lt_k | lcm and both cross pairs settled
        m = _lcm(ti, tj)
        skip = False
        for k in range(len(G)):
            if k == i or k == j:
                continue
            if _divides(lts[k], m):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in pairs and b not in pairs:
                    skip = True
                    break
        if skip:
            continue
        s, stag = _s_pair_with_tag(G[i], Gtags[i], G[j], Gtags[j])
        if track:
            quots, r = normal_form(s, G, with_quotients=True)
            rtag = _combine_tags(Gtags, quots, stag)
        else:
            r = normal_form(s, G)
            rtag = None
        if r:
            add(r, rtag)

    # minimalize: keep elements whose lt is not divisible by another kept lt
    idx = sorted(range(len(G)), key=lambda k: order_key(lts[k]))
    kept = []
    for k in idx:
        if not any(_divides(lts[j], lts[k]) for j in kept):
            kept.append(k)
    basis = [G[k] for k in kept]
    btags = [Gtags[k] for k in kept]

    # interreduce tails and scale monic; one sweep suffices because
    # reducedness of an element only depends on the (fixed) lts of the others
    reduced = []
    rtags = []
    for k in range(len(basis)):
        others = basis[:k] + basis[k + 1 :]
        if track:
            quots, r = normal_form(basis[k], others, with_quotients=True)
            tag = _combine_tags(btags[:k] + btags[k + 1 :], quots, btags[k])
        else:
            r = normal_form(basis[k], others)
            tag = None
        c = r.lc()
        reduced.append(r / c)
        if track:
            rtags.append(tag / c)
    pairs_sorted = sorted(range(len(reduced)), key=lambda k: order_key(reduced[k].lt()))
    basis = [reduced[k] for k in pairs_sorted]
    btags = [rtags[k] for k in pairs_sorted] if track else []
    if track:
        return basis, btags
    return basis


class Ideal:
    """An ideal given by generators, with a cached reduced Groebner basis."""

    __slots__ = ("ring", "gens", "_gb", "_radical_cache")

    def __init__(self, ring, gens):
        self.ring = ring
        clean = []
        for g in gens:
            if isinstance(g, str):
                g = ring.parse(g)
            if g.ring != ring:
                raise RingMismatchError("generator from a different ring")
            if g:
                clean.append(g)
        self.gens = tuple(clean)
        self._gb = None
        self._radical_cache = {}

    @classmethod
    def zero(cls, ring):
        return cls(ring, [])

    @classmethod
    def unit(cls, ring):
        return cls(ring, [ring.one()])

    def groebner(self):
        if self._gb is None:
            self._gb = buchberger(list(self.gens))
        return self._gb

    def is_zero(self):
        return not self.groebner()

    def is_unit(self):
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def contains(self, f):
        if not f:
            return True
        return not normal_form(f, self.groebner())

    def reduce(self, f):
        return normal_form(f, self.groebner())

    def __add__(self, other):
        if isinstance(other, Ideal):
            return Ideal(self.ring, list(self.gens) + list(other.gens))
        return Ideal(self.ring, list(self.gens) + [other])

    def __eq__(self, other):
        if not isinstance(other, Ideal) or self.ring != other.ring:
            return False
        a = [str(g) for g in self.groebner()]
        b = [str(g) for g in other.groebner()]
        return a == b

    def __hash__(self):
        return hash((self.ring.names, tuple(str(g) for g in self.groebner())))

    def __repr__(self):
        return "<ideal " + ", ".join(str(g) for g in self.gens) + ">"

    def key(self):
        """Canonical sort key: the reduced basis rendered as strings."""
        return tuple(str(g) for g in self.groebner())

    # -- the toolbox ----------------------------------------------------

    def _extended(self, tag="t"):
        """Ring with one fresh variable, eliminated first by a block order."""
        ring = self.ring
        name = tag
        k = 0
        while name in ring.index:
            name = f"{tag}{k}"
            k += 1
        names = ring.names + (name,)
        n = ring.nvars
        order = BlockOrder([((n,), GREVLEX), (tuple(range(n)), ring.order)])
        ext = PolyRing(ring.field, names, order)
        return ext, n

    def _lift(self, ext, f):
        return Polynomial(ext, {e + (0,): c for e, c in f.coeffs.items()})

    def _drop(self, ext, f):
        ring = self.ring
        return Polynomial(ring, {e[:-1]: c for e, c in f.coeffs.items()})

    def radical_contains(self, f):
        """f in sqrt(ideal), decided by the Rabinowitsch trick."""
        if not f:
            return True
        key = str(f)
        hit = self._radical_cache.get(key)
        if hit is not None:
            return hit
        ext, n = self._extended()
        t = ext.var(n)
        gens = [self._lift(ext, g) for g in self.gens]
        gens.append(ext.one() - t * self._lift(ext, f))
        gb = buchberger(gens)
        ans = len(gb) == 1 and gb[0].is_constant()
        self._radical_cache[key] = ans
        return ans

    def saturation(self, f):
        """(I : f^infinity) via one Rabinowitsch elimination."""
        if not f:
            return Ideal(self.ring, list(self.gens))
        ext, n = self._extended()
        t = ext.var(n)
        gens = [self._lift(ext, g) for g in self.gens]
        gens.append(ext.one() - t * self._lift(ext, f))
        gb = buchberger(gens)
        kept = [self._drop(ext, g) for g in gb if g.degree_in(n) == 0]
        return Ideal(self.ring, kept)

    def intersect(self, other):
        """I cap J via the t / (1-t) trick."""
        ext, n = self._extended()
        t = ext.var(n)
        one_minus_t = ext.one() - t
        gens = [t * self._lift(ext, g) for g in self.gens]
        gens += [one_minus_t * self._lift(ext, g) for g in other.gens]
        gb = buchberger(gens)
        kept = [self._drop(ext, g) for g in gb if g.degree_in(n) == 0]
        return Ideal(self.ring, kept)

    def quotient(self, other):
        """Ideal quotient (I : J) for finitely generated J."""
        if not other.gens:
            return Ideal.unit(self.ring)  # (I : 0) is everything
        result = None
        for f in other.gens:
            part = self._quotient_single(f)
            result = part if result is None else result.intersect(part)
        return result

    def _quotient_single(self, f):
        if not f:
            return Ideal.unit(self.ring)
        meet = self.intersect(Ideal(self.ring, [f]))
        gens = []
        for g in meet.gens:
            q, r = divide_exact(g, f)
            if r:
                raise ArithmeticError("intersection with principal ideal not divisible")
            gens.append(q)
        return Ideal(self.ring, gens)

    def eliminate(self, drop):
        """Generators of I cap k[names outside drop] (in the same ring).

        ``drop`` is an iterable of variable names or indices to eliminate.
        """
        ring = self.ring
        drop_ix = tuple(sorted(ring.index[d] if isinstance(d, str) else d for d in drop))
        keep_ix = tuple(i for i in range(ring.nvars) if i not in drop_ix)
        order = BlockOrder([(drop_ix, GREVLEX), (keep_ix, GREVLEX)])
        elim_ring = ring.with_order(order)
        gens = [elim_ring.convert(g) for g in self.gens]
        gb = buchberger(gens)
        kept = []
        for g in gb:
            if all(g.degree_in(i) == 0 for i in drop_ix):
                kept.append(ring.convert(g))
        return Ideal(ring, kept)


def divide_exact(f, g):
    """Single-divisor division; returns (quotient, remainder)."""
    return _single_division(f, g)


def _single_division(f, g):
    ring = f.ring
    lt_g = g.lt()
    lc_g = g.coeffs[lt_g]
    q = {}
    rem = {}
    work = dict(f.coeffs)
    order_key = ring.order.key
    while work:
        t = max(work, key=order_key)
        c = work.pop(t)
        if _divides(lt_g, t):
            shift = tuple(a - b for a, b in zip(t, lt_g))
            factor = c / lc_g
            q[shift] = q.get(shift, ring.field.zero) + factor
            if not q[shift]:
                del q[shift]
            for e, v in g.coeffs.items():
                if e == lt_g:
                    continue
                key = tuple(a + b for a, b in zip(e, shift))
                s = work.get(key)
                s = -factor * v if s is None else s - factor * v
                if s:
                    work[key] = s
                elif key in work:
                    del work[key]
        else:
            rem[t] = c
    return Polynomial(ring, q), Polynomial(ring, rem)
