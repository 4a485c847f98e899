"""Parametric structure of an ideal I in Q[u][x].

Everything here revolves around one computational device: ideals of
A[x] = Q[u][x] are represented inside the joint ring Q[u, x] under a
product order whose x-block dominates. The x-leading term of a joint
polynomial is the leading term over A, and the full u-coefficient of
that x-term is the leading coefficient over A. A Groebner basis of
I + a*A[x] in the joint ring then exposes, for the extension of I to
(A/a)[x]:

  * its attained leading terms,
  * the ideal of leading coefficients at each term,
  * and hence the singular ideal, whose vanishing locus is exactly the
    set of unlucky primes.

Strata carry their fibre bases as multi-chart fraction sections: each
coefficient is a list of (numerator, denominator) pairs over Q[u]/p
agreeing on overlaps, with the chart denominators jointly nonvanishing
on the stratum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .constructible import LocallyClosedPiece
from .errors import InternalConsistencyError
from .groebner import Ideal, buchberger
from .minprimes import PrimeIdeal
from .orders import GREVLEX, BlockOrder, TermOrder
from .poly import Polynomial, PolyRing, QQ
from .residue import QuotientDomain, ResidueField


class ParamRing:
    """Ambient data: parameters u, variables x, and the joint ring views."""

    def __init__(self, params, xvars, x_order: TermOrder = GREVLEX):
        params = tuple(params)
        xvars = tuple(xvars)
        if set(params) & set(xvars):
            raise ValueError("parameter and variable names overlap")
        self.params = params
        self.xvars = xvars
        self.nparams = len(params)
        self.nx = len(xvars)
        self.x_order = x_order
        u_ix = tuple(range(self.nparams))
        x_ix = tuple(range(self.nparams, self.nparams + self.nx))
        joint_order = BlockOrder([(x_ix, x_order), (u_ix, GREVLEX)])
        self.joint = PolyRing(QQ, params + xvars, joint_order)
        self.uring = PolyRing(QQ, params, GREVLEX)
        self.xring = PolyRing(QQ, xvars, x_order)

    def __repr__(self):
        return f"<Q[{','.join(self.params)}][{','.join(self.xvars)}]; {self.x_order.name}>"

    # -- exponent plumbing ----------------------------------------------

    def x_part(self, exp):
        return exp[self.nparams :]

    def u_part(self, exp):
        return exp[: self.nparams]

    def embed_u(self, upoly):
        pad = (0,) * self.nx
        return Polynomial(self.joint, {e + pad: c for e, c in upoly.coeffs.items()})

    def embed_x(self, xexp):
        return (0,) * self.nparams + tuple(xexp)

    def to_upoly(self, p):
        """Project a joint polynomial with trivial x-part into Q[u]."""
        out = {}
        for e, c in p.coeffs.items():
            if any(self.x_part(e)):
                raise ValueError("polynomial involves the x variables")
            out[self.u_part(e)] = c
        return Polynomial(self.uring, out)

    def x_terms(self, p):
        """x-exponent -> u-coefficient, for a joint polynomial."""
        out = {}
        for e, c in p.coeffs.items():
            xk = self.x_part(e)
            out.setdefault(xk, {})[self.u_part(e)] = c
        return {xk: Polynomial(self.uring, d) for xk, d in out.items()}

    def from_x_terms(self, terms):
        out = {}
        for xk, upoly in terms.items():
            for ue, c in upoly.coeffs.items():
                out[tuple(ue) + tuple(xk)] = c
        return Polynomial(self.joint, out)

    def lt_x(self, p):
        """Leading x-term of a joint polynomial (the leading term over A)."""
        best = None
        for e in p.coeffs:
            xk = self.x_part(e)
            if best is None or self.x_order.compare(xk, best) > 0:
                best = xk
        if best is None:
            raise ValueError("zero polynomial")
        return best

    def lc_x(self, p):
        """Leading coefficient over A: the u-polynomial at the leading x-term."""
        t = self.lt_x(p)
        return self.x_coeff(p, t)

    def x_coeff(self, p, xexp):
        xexp = tuple(xexp)
        out = {}
        for e, c in p.coeffs.items():
            if self.x_part(e) == xexp:
                out[self.u_part(e)] = c
        return Polynomial(self.uring, out)

    def fmt_x_term(self, xexp):
        parts = []
        for name, k in zip(self.xvars, xexp):
            if k == 1:
                parts.append(name)
            elif k:
                parts.append(f"{name}^{k}")
        return "*".join(parts) if parts else "1"

    # -- specialization ---------------------------------------------------

    def specialize(self, p, point):
        """Evaluate the parameters at a rational point; lands in Q[x]."""
        point = [Fraction(v) for v in point]
        if len(point) != self.nparams:
            raise ValueError("point dimension does not match the parameter count")
        out = {}
        for e, c in p.coeffs.items():
            val = c
            for v, k in zip(point, self.u_part(e)):
                if k:
                    val *= v**k
            if not val:
                continue
            xk = self.x_part(e)
            s = out.get(xk, Fraction(0)) + val
            if s:
                out[xk] = s
            elif xk in out:
                del out[xk]
        return Polynomial(self.xring, out)

    def specialize_ideal(self, gens, point):
        return [self.specialize(g, point) for g in gens]

    def fibre_field(self, prime: PrimeIdeal):
        dom = QuotientDomain(prime.ideal)
        field = ResidueField(dom)
        ring = PolyRing(field, self.xvars, self.x_order)
        return field, ring

    def generic_specialize(self, p, field, ring):
        """Map a joint polynomial into k(p)[x] at the generic point."""
        out = {}
        for xk, upoly in self.x_terms(p).items():
            c = field.from_poly(upoly)
            if c:
                out[xk] = c
        return Polynomial(ring, out)


def fibre_groebner(gens, prime, pring):
    """Reduced Groebner basis of the fibre ideal over k(p)."""
    field, ring = pring.fibre_field(prime)
    mapped = [pring.generic_specialize(g, field, ring) for g in gens]
    return buchberger([g for g in mapped if g]), field, ring


# ---------------------------------------------------------------------------
# pseudo-division
# ---------------------------------------------------------------------------


def pseudo_divide(f, divisors, pring, modulus=None):
    """Fraction-free division over A = Q[u] (or A/a when ``modulus`` is given).

    Returns (c, quotients, remainder) with c*f = sum(q_j g_j) + r, where
    c is a product of leading coefficients of the divisors, no term of r
    is divisible by any leading x-term of the divisors, and every
    reduction step multiplies only by ring elements (which is what makes
    the representation stable under specialization).
    """
    joint = pring.joint
    if modulus is not None:
        nf = modulus.nf

        def reduce_joint(p):
            return pring.from_x_terms({xk: nf(up) for xk, up in pring.x_terms(p).items()})

    else:

        def reduce_joint(p):
            return p

    div_data = []
    for g in divisors:
        g2 = reduce_joint(g)
        if not g2:
            div_data.append(None)
            continue
        t = pring.lt_x(g2)
        lc_u = pring.lc_x(g2)
        div_data.append((t, lc_u, pring.embed_u(lc_u), g2))

    c = pring.uring.one()
    quots = [joint.zero() for _ in divisors]
    r = joint.zero()
    h = reduce_joint(f)
    x_order = pring.x_order

    while h:
        # the largest x-term of h divisible by some divisor's leading x-term
        best = None
        best_j = None
        for e in h.coeffs:
            xk = pring.x_part(e)
            if best is not None and x_order.compare(xk, best) <= 0:
                continue
            for j, dd in enumerate(div_data):
                if dd is not None and all(a <= b for a, b in zip(dd[0], xk)):
                    best = xk
                    best_j = j
                    break
        if best is None:
            r = r + h
            break
        t = best
        j = best_j
        tj, lcj_u, lcj_joint, gj = div_data[j]
        a = pring.x_coeff(h, t)
        shift = pring.embed_x(tuple(x - y for x, y in zip(t, tj)))
        # multiply the whole bookkeeping state by lc(g_j)
        c = c * lcj_u
        if modulus is not None:
            c = modulus.nf(c)
        quots = [q * lcj_joint for q in quots]
        r = r * lcj_joint
        step = pring.embed_u(a).mul_term(shift)
        h = h * lcj_joint - step * gj
        h = reduce_joint(h)
        quots[j] = quots[j] + step
    return c, quots, r


# ---------------------------------------------------------------------------
# Groebner data of the extension of I to (A/a)[x]
# ---------------------------------------------------------------------------


@dataclass
class RingGBElement:
    poly: Polynomial  # joint-ring representative
    tag: Polynomial  # the a*A[x] component: poly - tag lies in I
    tau: tuple  # leading x-term
    lam: Polynomial  # x-leading coefficient in Q[u], reduced mod a


class RingGB:
    """Groebner data of I + a*A[x] read through the joint ring."""

    def __init__(self, pring, modulus_ideal, elements):
        self.pring = pring
        self.modulus = modulus_ideal
        self.elements = elements

    def leading_terms(self):
        """Minimal generating set of the attained leading x-terms."""
        taus = sorted({e.tau for e in self.elements}, key=self.pring.x_order.key)
        minimal = []
        for t in taus:
            if not any(all(a <= b for a, b in zip(s, t)) for s in minimal):
                minimal.append(t)
        return minimal

    def candidates(self, t):
        t = tuple(t)
        return [e for e in self.elements if e.tau == t]


def ring_gb(gens, modulus_ideal, pring):
    """Joint-ring Groebner basis of I + a*A[x], purged and tagged.

    Elements whose x-leading coefficient vanishes mod a carry no
    information about the extension of I and are dropped; in a reduced
    basis these are exactly the pure-parameter elements of a.
    """
    joint = pring.joint
    if modulus_ideal.is_unit():
        return RingGB(pring, modulus_ideal, [])  # the zero ring carries nothing
    inputs = []
    tags = []
    for g in gens:
        inputs.append(g)
        tags.append(joint.zero())
    for g in modulus_ideal.gens:
        lifted = pring.embed_u(g)
        inputs.append(lifted)
        tags.append(lifted)
    gb, gtags = buchberger(inputs, tags=tags)
    dom = QuotientDomain(modulus_ideal) if modulus_ideal.gens else None
    elements = []
    for g, tag in zip(gb, gtags):
        tau = pring.lt_x(g)
        lam = pring.lc_x(g)
        if dom is not None:
            lam = dom.nf(lam)
        if not lam:
            continue
        elements.append(RingGBElement(g, tag, tau, lam))
    return RingGB(pring, modulus_ideal, elements)


def lc_ideal(rgb: RingGB, t):
    """Ideal of leading coefficients at the x-term t, as an ideal of Q[u].

    Generated by the x-leading coefficients of the basis elements whose
    leading x-term divides t (their shifts attain leading term t).
    """
    t = tuple(t)
    gens = [e.lam for e in rgb.elements if all(a <= b for a, b in zip(e.tau, t))]
    return Ideal(rgb.pring.uring, gens)


def singular_ideal(gens, modulus_ideal, pring, leading_terms=None):
    """Product of the lc-ideals over the minimal leading terms (mod a).

    With no attained leading terms (zero extension) the product is empty
    and the unit ideal is returned: every prime is then lucky. The
    radical is never taken; consumers treat the result up to radical.
    """
    rgb = ring_gb(gens, modulus_ideal, pring)
    return singular_ideal_from(rgb, leading_terms)


def singular_ideal_from(rgb: RingGB, leading_terms=None):
    uring = rgb.pring.uring
    T = rgb.leading_terms() if leading_terms is None else leading_terms
    if not T:
        return Ideal.unit(uring)
    gen_lists = []
    for t in T:
        lc = lc_ideal(rgb, t)
        if not lc.gens:
            return Ideal.zero(uring)
        gen_lists.append(list(lc.gens))
    prods = [uring.one()]
    for lst in gen_lists:
        prods = [p * g for p in prods for g in lst]
    return Ideal(uring, prods)


def is_lucky(prime: PrimeIdeal, gens, modulus_ideal, pring):
    """True iff the singular ideal of the extension is not inside the prime."""
    for g in modulus_ideal.gens:
        if not prime.contains(g):
            raise ValueError("prime does not contain the modulus ideal")
    J = singular_ideal(gens, modulus_ideal, pring)
    return not all(prime.contains(g) for g in J.gens)


# ---------------------------------------------------------------------------
# strata and sections
# ---------------------------------------------------------------------------


@dataclass
class Chart:
    """One fraction presentation of a section: tail/den on D(den)."""

    den: Polynomial  # in Q[u], not in p
    nums: dict  # x-exponent -> numerator in Q[u]
    raw: Polynomial  # the joint-ring element behind the chart
    raw_tag: Polynomial  # its a*A[x]-component (raw - raw_tag lies in I)


@dataclass
class SectionPoly:
    """A monic fibre basis element whose tail coefficients are sections."""

    lt: tuple  # leading x-term
    charts: list


@dataclass
class Stratum:
    piece: LocallyClosedPiece
    prime: PrimeIdeal
    leading_terms: list
    gb: list  # list of SectionPoly
    presumed: bool
    index: tuple | None = None

    def lt_key(self, pring):
        return tuple(sorted(pring.x_order.key(t) for t in self.leading_terms))


def _joint_nonvanishing_closed(prime, dens, piece, uring):
    """Is V(p + <dens>) disjoint from the piece?"""
    closed = Ideal(uring, list(prime.gens) + [d for d in dens])
    probe = LocallyClosedPiece(closed, piece.open_)
    return probe.is_empty()


def z_gen(prime: PrimeIdeal, gens, pring):
    """The largest open parametric subset of Z = V(p) with generic leading terms.

    Returns a Stratum, or None when that subset is empty (possible only
    for presumed primes; an honest prime always admits a nonempty one).
    Chart construction follows the constructive gluing argument: for
    each minimal leading term pick basis elements with nonvanishing
    leading coefficient, pseudo-reduce against the representatives of
    the other leading terms, and keep adding charts in ascending
    denominator degree until the chart denominators jointly avoid the
    whole stratum.
    """
    uring = pring.uring
    dom = QuotientDomain(prime.ideal)
    fib, field, fring = fibre_groebner(gens, prime, pring)
    rgb = ring_gb(gens, prime.ideal, pring)

    if not fib:
        piece = LocallyClosedPiece(prime.ideal, Ideal.unit(uring))
        return Stratum(piece, prime, [], [], not prime.certified)

    T = [g.lt() for g in fib]
    J = singular_ideal_from(rgb, leading_terms=T)
    open_gens = list(prime.gens) + list(J.gens)
    piece = LocallyClosedPiece(prime.ideal, Ideal(uring, open_gens))
    if piece.is_empty():
        return None

    all_cands = {tuple(t): rgb.candidates(t) for t in T}
    for t, cands in all_cands.items():
        if not cands:
            raise InternalConsistencyError(
                f"no basis element attains leading term {pring.fmt_x_term(t)}"
            )

    sections = []
    for t in T:
        cands = sorted(
            all_cands[tuple(t)],
            key=lambda e: (e.lam.total_degree(), str(e.lam), str(e.poly)),
        )
        others = [e for s in T if tuple(s) != tuple(t) for e in all_cands[tuple(s)]]
        charts = []
        dens = []
        for cand in cands:
            if dens and _joint_nonvanishing_closed(prime, dens, piece, uring):
                break
            # pseudo-reduce over Q[u] itself: the identity then holds exactly,
            # so the remainder minus its companion stays inside I
            c, quots, r = pseudo_divide(cand.poly, [e.poly for e in others], pring)
            if not r:
                continue
            rtag = pring.embed_u(c) * cand.tag
            for q, e in zip(quots, others):
                if q:
                    rtag = rtag - q * e.tag
            den = dom.nf(pring.lc_x(r))
            if not den:
                raise InternalConsistencyError("pseudo-remainder lost its leading coefficient")
            nums = {}
            for xk, up in pring.x_terms(r).items():
                if xk == tuple(t):
                    continue
                up = dom.nf(up)
                if up:
                    nums[xk] = up
            key = (str(den), tuple(sorted((xk, str(n)) for xk, n in nums.items())))
            if any(key == k for k, _ in charts):
                continue
            charts.append((key, Chart(den, nums, r, rtag)))
            dens.append(den)
        if not dens or not _joint_nonvanishing_closed(prime, dens, piece, uring):
            raise InternalConsistencyError(
                f"chart denominators do not cover the stratum at {pring.fmt_x_term(t)}"
            )
        sections.append(SectionPoly(tuple(t), [c for _, c in charts]))

    return Stratum(piece, prime, [tuple(t) for t in T], sections, not prime.certified)


def is_parametric(piece: LocallyClosedPiece, gens, pring):
    """Does the piece admit a global parametrization of the fibre bases?

    Equivalent, by the luckiness characterization, to the piece avoiding
    the singular variety of the extension of I to its closure.
    """
    if piece.is_empty():
        raise ValueError("emptiness has no parametric meaning")
    from .constructible import ConstructibleSet

    uring = pring.uring
    comps = ConstructibleSet.from_piece(piece).closure_primes()
    a_ideal = comps[0].ideal
    for q in comps[1:]:
        a_ideal = a_ideal.intersect(q.ideal)
    J = singular_ideal(gens, a_ideal, pring)
    unlucky = LocallyClosedPiece.closed_set(Ideal(uring, list(a_ideal.gens) + list(J.gens)))
    return piece.intersect(unlucky).is_empty()
