"""Minimal associated primes of ideals in Q[u].

The decomposition splits on factorable generators and on zero divisors
exposed by saturation, then certifies primality of the surviving
candidates when an elementary argument closes: the zero ideal, ideals
whose reduced basis consists of linear substitutions plus at most one
irreducible polynomial (the quotient is then a polynomial ring over Q
or a domain of the form Q[v...]/<irreducible>). Candidates outside
these cases are returned flagged ``presumed`` rather than guessed at;
downstream reports propagate the flag.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import FactorLimitError
from .factor import factor, is_irreducible
from .groebner import Ideal


@dataclass(frozen=True)
class PrimeIdeal:
    """A (certified or presumed) prime of the parameter ring."""

    ideal: Ideal
    certified: bool = True

    @property
    def gens(self):
        return self.ideal.groebner()

    def contains(self, f):
        return self.ideal.contains(f)

    def key(self):
        return self.ideal.key()

    def __repr__(self):
        tag = "" if self.certified else " (presumed)"
        return f"<prime {', '.join(str(g) for g in self.gens)}{tag}>"


def _linear_split(gb):
    """Split a reduced basis into linear-substitution elements and the rest.

    A linear substitution has a degree-1 leading term; under the graded
    order used for parameter rings the whole element is then affine
    linear, and reducedness keeps every other element free of its lead
    variable.
    """
    linear, rest = [], []
    for g in gb:
        if sum(g.lt()) == 1:
            linear.append(g)
        else:
            rest.append(g)
    return linear, rest


def certify_prime(ideal):
    """Sound, incomplete primality check for an ideal of Q[u]."""
    gb = ideal.groebner()
    if not gb:
        return True
    if len(gb) == 1 and gb[0].is_constant():
        return False  # unit ideal
    _, rest = _linear_split(gb)
    if not rest:
        return True
    if len(rest) == 1:
        try:
            return is_irreducible(rest[0])
        except FactorLimitError:
            return False
    return False


def _distinct_factors(g):
    try:
        _, parts = factor(g)
    except FactorLimitError:
        return None
    seen = {}
    for p, _ in parts:
        seen.setdefault(str(p), p)
    return list(seen.values())


def minimal_primes(ideal):
    """Minimal primes over the radical of ``ideal``; [] for the unit ideal.

    The returned list is pairwise incomparable and canonically sorted.
    """
    ring = ideal.ring
    if ideal.is_unit():
        return []
    work = [ideal]
    found = []
    seen = set()
    while work:
        J = work.pop()
        gb = J.groebner()
        if len(gb) == 1 and gb[0].is_constant():
            continue
        key = tuple(str(g) for g in gb)
        if key in seen:
            continue
        seen.add(key)
        J = Ideal(ring, gb)

        # split on the first generator with a nontrivial factorization
        split = None
        for g in gb:
            parts = _distinct_factors(g)
            if parts is None:
                continue
            if len(parts) > 1:
                split = parts
                break
            if len(parts) == 1 and parts[0].total_degree() < g.total_degree():
                split = parts  # repeated factor: replacing g shrinks the radical
                break
        if split:
            for f in split:
                work.append(J + f)
            continue

        if certify_prime(J):
            found.append(PrimeIdeal(J, True))
            continue

        # zero-divisor hunt: saturate by irreducible factors of per-variable
        # leading coefficients; a proper split means f was a zero divisor
        cands = _zero_divisor_candidates(J, gb)
        did_split = False
        for f in cands:
            if J.contains(f):
                continue
            sat = J.saturation(f)
            if sat == J:
                continue
            plus = J + f
            if plus == J:
                continue
            work.append(sat)
            work.append(plus)
            did_split = True
            break
        if did_split:
            continue

        found.append(PrimeIdeal(J, False))

    return _minimalize(found)


def _zero_divisor_candidates(J, gb):
    ring = J.ring
    cands = []
    seen = set()
    for g in gb:
        for v in g.variables():
            d = g.degree_in(v)
            lead = {e: c for e, c in g.coeffs.items() if e[v] == d}
            lc = ring.poly({e[:v] + (0,) + e[v + 1 :]: c for e, c in lead.items()})
            if lc.is_constant():
                continue
            parts = _distinct_factors(lc)
            for p in parts or []:
                s = str(p)
                if s not in seen:
                    seen.add(s)
                    cands.append(p)
    return cands


def _minimalize(primes):
    out = []
    by_key = {}
    for p in primes:
        by_key.setdefault(p.key(), p)
    items = list(by_key.values())
    for p in items:
        redundant = False
        for q in items:
            if q is p or q.key() == p.key():
                continue
            # V(p) inside V(q) iff q's generators all lie in p
            if all(p.contains(g) for g in q.gens) and not all(q.contains(g) for g in p.gens):
                redundant = True
                break
        if not redundant:
            out.append(p)
    # identical-variety duplicates: keep the canonically smallest key
    dedup = {}
    for p in out:
        dedup.setdefault(p.key(), p)
    return sorted(dedup.values(), key=lambda p: p.key())
