"""Canonical irreducible Groebner covers of a locally closed target set.

The construction is a recursion on closures: decompose the closure of
the uncovered remainder into irreducible components, take on each
component the largest open parametric subset with generic leading
terms, intersect with the largest open subset of the component inside
the target, and subtract. Closures strictly decrease, so the recursion
terminates; the resulting family is irreducible, small and locally
maximal, and it is the unique such cover. Homogeneous ideals admit the
coarser canonical cover by leading-term classes, which this module
produces by merging strata of the canonical irreducible cover.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .constructible import ConstructibleSet, LocallyClosedPiece, largest_open_inside
from .errors import InternalConsistencyError
from .factor import poly_content
from .groebner import Ideal
from .parametric import ParamRing, Stratum, z_gen
from .poly import Polynomial


@dataclass
class GroebnerCover:
    pring: ParamRing
    target: ConstructibleSet
    strata: list  # Stratum, ordered by generation index
    flags: dict | None = None
    report: list = field(default_factory=list)

    def presumed_primes(self):
        out = []
        for s in self.strata:
            if s.presumed:
                out.append(s.prime)
        return out


def canonical_cover(target: ConstructibleSet, gens, pring: ParamRing, reverse_primes=False):
    """The unique irreducible, small, locally maximal cover of the target.

    ``reverse_primes`` only permutes the per-round component order; the
    output strata are the same sets either way (uniqueness), which the
    test suite exercises.
    """
    if target.is_empty():
        raise ValueError("target set is empty")
    strata = []
    current = target
    round_i = 0
    prev_primes = None
    while not current.is_empty():
        round_i += 1
        primes = current.closure_primes()
        if reverse_primes:
            primes = list(reversed(primes))
        if prev_primes is not None:
            _assert_closure_decreased(prev_primes, primes)
        prev_primes = primes
        emitted = []
        for j, p in enumerate(primes, start=1):
            s = z_gen(p, gens, pring)
            if s is None:
                continue
            inside = largest_open_inside(p, target)
            piece = LocallyClosedPiece(
                p.ideal, _product(s.piece.open_, inside.open_)
            )
            if piece.is_empty():
                continue
            emitted.append(
                Stratum(piece, p, s.leading_terms, s.gb, s.presumed, index=(round_i, j))
            )
        if not emitted:
            raise InternalConsistencyError("recursion made no progress on a nonempty set")
        strata.extend(emitted)
        covered = ConstructibleSet(pring.uring, [s.piece for s in emitted])
        current = current.difference(covered)
    return GroebnerCover(pring, target, strata)


def _product(a, b):
    from .constructible import _product_ideal

    return _product_ideal(a, b)


def _assert_closure_decreased(old, new):
    # containment: every new component lies inside some old one; given
    # that, equality would force identical minimal decompositions
    for p in new:
        if not any(all(p.contains(g) for g in q.gens) for q in old):
            raise InternalConsistencyError("closure failed to decrease")
    if sorted(p.key() for p in new) == sorted(q.key() for q in old):
        raise InternalConsistencyError("closure did not strictly decrease")


# ---------------------------------------------------------------------------
# certification
# ---------------------------------------------------------------------------


def certify_cover(cover: GroebnerCover, gens, pring: ParamRing):
    """Check coverage, smallness and local maximality; fill cover.flags.

    Smallness uses the generic-point criterion: two distinct strata with
    one inside the other's closure must be disjoint. Local maximality is
    the recomputation identity: each stratum equals the generic
    parametric subset of its component intersected with the largest open
    subset of the component inside the target.
    """
    report = []
    strata = cover.strata
    target = cover.target

    union = ConstructibleSet(pring.uring, [s.piece for s in strata])
    coverage = union.equals(target)
    if not coverage:
        report.append("coverage: union of strata differs from the target set")

    small = True
    for a in strata:
        for b in strata:
            if a is b:
                continue
            # a inside closure(b)?
            if all(a.prime.contains(g) for g in b.prime.gens):
                meet = a.piece.intersect(b.piece)
                if not meet.is_empty():
                    small = False
                    report.append(
                        f"small: strata {a.index} and {b.index} overlap inside a closure"
                    )

    locally_maximal = True
    for s in strata:
        z = z_gen(s.prime, gens, pring)
        if z is None:
            locally_maximal = False
            report.append(f"locally maximal: stratum {s.index} lost its generic subset")
            continue
        inside = largest_open_inside(s.prime, target)
        expected = LocallyClosedPiece(s.prime.ideal, _product(z.piece.open_, inside.open_))
        if not _piece_equal(s.piece, expected):
            locally_maximal = False
            report.append(f"locally maximal: stratum {s.index} fails the recomputation identity")

    presumed = sorted({p.key() for p in cover.presumed_primes()})
    flags = {
        "coverage": coverage,
        "irreducible": True,
        "small": small,
        "locally_maximal": locally_maximal,
        "conditional_on_primality": [", ".join(k) for k in presumed],
    }
    cover.flags = flags
    cover.report = report
    return flags, report


def _piece_equal(a, b):
    A = ConstructibleSet.from_piece(a)
    B = ConstructibleSet.from_piece(b)
    return A.equals(B)


def _sections_equal(sa, sb, prime):
    """Equality of two section families at the generic point of the stratum."""
    if tuple(sa.lt) != tuple(sb.lt):
        return False
    terms = set()
    for c in sa.charts:
        terms.update(c.nums)
    for c in sb.charts:
        terms.update(c.nums)
    for t in terms:
        for ca in sa.charts:
            for cb in sb.charts:
                na = ca.nums.get(t)
                nb = cb.nums.get(t)
                if na is None and nb is None:
                    continue
                left = na * cb.den if na is not None else None
                right = nb * ca.den if nb is not None else None
                if left is None:
                    cross = right
                elif right is None:
                    cross = left
                else:
                    cross = left - right
                if not prime.contains(cross):
                    return False
    return True


def strata_equivalent(a: Stratum, b: Stratum):
    """Same piece (up to radical), same leading terms, same sections."""
    if a.prime.key() != b.prime.key():
        return False
    if sorted(map(tuple, a.leading_terms)) != sorted(map(tuple, b.leading_terms)):
        return False
    if not _piece_equal(a.piece, b.piece):
        return False
    ga = sorted(a.gb, key=lambda s: tuple(s.lt))
    gb_ = sorted(b.gb, key=lambda s: tuple(s.lt))
    return all(_sections_equal(x, y, a.prime) for x, y in zip(ga, gb_))


def covers_equivalent(c1: GroebnerCover, c2: GroebnerCover):
    """Set identity of strata, ignoring generation order."""
    if len(c1.strata) != len(c2.strata):
        return False
    unmatched = list(c2.strata)
    for s in c1.strata:
        hit = None
        for t in unmatched:
            if strata_equivalent(s, t):
                hit = t
                break
        if hit is None:
            return False
        unmatched.remove(hit)
    return True


# ---------------------------------------------------------------------------
# the homogeneous (projective) cover
# ---------------------------------------------------------------------------


def is_homogeneous(gens, pring: ParamRing):
    x_ix = tuple(range(pring.nparams, pring.nparams + pring.nx))
    return all(g.is_homogeneous_in(x_ix) for g in gens)


@dataclass
class MergedStratum:
    leading_terms: list
    strata: list  # the canonical strata sharing this leading-term set
    region: ConstructibleSet
    locally_closed: bool


def homogeneous_cover(target: ConstructibleSet, gens, pring: ParamRing):
    """Canonical cover by leading-term classes (homogeneous ideals only).

    Strata of the canonical irreducible cover that share their leading
    terms merge into one parametric class; each merged class must itself
    be locally closed, which is re-checked here and raised as an internal
    error if violated.
    """
    if not is_homogeneous(gens, pring):
        raise ValueError("generators are not homogeneous in the main variables")
    base = canonical_cover(target, gens, pring)
    groups = {}
    for s in base.strata:
        key = tuple(sorted(map(tuple, s.leading_terms)))
        groups.setdefault(key, []).append(s)
    merged = []
    for key in sorted(groups):
        members = groups[key]
        region = ConstructibleSet(pring.uring, [s.piece for s in members])
        closure = region.closure()
        boundary = closure.difference(region)
        reopened = closure.difference(boundary.closure())
        ok = region.equals(reopened)
        if not ok:
            raise InternalConsistencyError(
                "a merged leading-term class is not locally closed"
            )
        merged.append(MergedStratum([list(t) for t in key], members, region, ok))
    return base, merged


# ---------------------------------------------------------------------------
# comprehensive Groebner basis
# ---------------------------------------------------------------------------


def comprehensive_gb(cover: GroebnerCover, gens, pring: ParamRing):
    """A finite subset of I whose specialization is a Groebner basis at
    every point of the target.

    Every chart of every stratum contributes its joint-ring
    representative, shifted back into I by the tracked modulus
    companion; membership in I is verified exactly.
    """
    joint = pring.joint
    ideal = Ideal(joint, list(gens))
    out = {}
    for s in cover.strata:
        for sec in s.gb:
            for chart in sec.charts:
                p = chart.raw - chart.raw_tag
                if not p:
                    raise InternalConsistencyError("chart lift collapsed to zero")
                c = poly_content(p)
                if p.lc() < 0:
                    c = -c
                p = p / c
                if not ideal.contains(p):
                    raise InternalConsistencyError("chart lift escaped the ideal")
                out.setdefault(str(p), p)
    return [out[k] for k in sorted(out)]
