"""Independent oracles for strata and covers.

The verifier never reads the caches of the construction pipeline: for a
sampled rational point it specializes the original generators, runs
Buchberger over Q from scratch, and compares the reduced basis and its
leading terms against the evaluated chart sections. The generic-point
comparison (exact, always available) recomputes the fibre basis over
the residue field and checks every chart coefficient by
cross-multiplication; rational sampling is corroboration on top, with
an explicit generic-only fallback when no rational point is found.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .factor import factor
from .groebner import buchberger
from .minprimes import PrimeIdeal
from .parametric import ParamRing, Stratum, fibre_groebner
from .poly import Polynomial


@dataclass(frozen=True)
class SamplePlan:
    points_per_stratum: int = 10
    coordinate_bound: int = 20
    seed: int = 0
    attempts: int = 400


@dataclass
class StratumReport:
    index: tuple | None
    points: list
    generic_only: bool
    generic_ok: bool
    mismatches: list = field(default_factory=list)

    @property
    def ok(self):
        return self.generic_ok and not self.mismatches

    def to_json(self):
        return {
            "index": list(self.index) if self.index else None,
            "points": [[str(v) for v in pt] for pt in self.points],
            "generic_only": self.generic_only,
            "generic_ok": self.generic_ok,
            "mismatches": self.mismatches,
            "ok": self.ok,
        }


def _rational_roots(upoly, var_index):
    """Rational roots of a univariate polynomial, via its linear factors."""
    _, parts = factor(upoly)
    roots = []
    for p, _ in parts:
        if p.total_degree() == 1 and p.degree_in(var_index) == 1:
            # a*v + b = 0
            a = b = Fraction(0)
            for e, c in p.coeffs.items():
                if e[var_index] == 1:
                    a = c
                else:
                    b = c
            roots.append(-b / a)
    return roots


def sample_points(piece, plan: SamplePlan, uring):
    """Rational points on the piece: closed part solved triangularly,
    free parameters randomized, open part required nonvanishing.

    Returns (points, generic_only); an empty list with generic_only True
    means the search budget ran out, never a silent failure.
    """
    rng = random.Random(plan.seed)
    n = uring.nvars
    gb = piece.closed.groebner()
    points = []
    seen = set()
    for _ in range(plan.attempts):
        if len(points) >= plan.points_per_stratum:
            break
        assignment = {}
        ok = True
        # solve variables from the lex-last upwards: at each step pick the
        # pending generators that involve exactly one unknown variable
        remaining = list(gb)
        while remaining and ok:
            progressed = False
            for g in list(remaining):
                unknown = [v for v in g.variables() if v not in assignment]
                if not unknown:
                    if g.evaluate(assignment):
                        ok = False
                    remaining.remove(g)
                    progressed = True
                    continue
                if len(unknown) == 1:
                    v = unknown[0]
                    h = g.evaluate(assignment)
                    if not h:
                        remaining.remove(g)
                        progressed = True
                        continue
                    roots = _rational_roots(h, v)
                    if not roots:
                        ok = False
                    else:
                        assignment[v] = rng.choice(sorted(roots))
                        remaining.remove(g)
                    progressed = True
                    break
            if not progressed:
                # assign a random value to one unsolved variable and retry
                pending = sorted(
                    {v for g in remaining for v in g.variables() if v not in assignment}
                )
                if not pending:
                    break
                v = rng.choice(pending)
                assignment[v] = Fraction(rng.randint(-plan.coordinate_bound, plan.coordinate_bound))
        if not ok:
            continue
        for v in range(n):
            if v not in assignment:
                assignment[v] = Fraction(
                    rng.randint(-plan.coordinate_bound, plan.coordinate_bound)
                )
        pt = tuple(assignment[v] for v in range(n))
        if pt in seen:
            continue
        if piece.contains_point({i: val for i, val in enumerate(pt)}):
            seen.add(pt)
            points.append(pt)
    return points, not points


def evaluate_chart(section, chart, point, pring):
    """The chart's fibre polynomial at a rational point (den must not vanish)."""
    den = pring.specialize(pring.embed_u(chart.den), point).const_value()
    if not den:
        return None
    coeffs = {tuple(section.lt): Fraction(1)}
    for xk, num in chart.nums.items():
        val = pring.specialize(pring.embed_u(num), point).const_value()
        c = val / den
        if c:
            coeffs[tuple(xk)] = c
    return Polynomial(pring.xring, coeffs)


def check_stratum(stratum: Stratum, gens, pring: ParamRing, plan: SamplePlan):
    """Point-sampling and generic-point verification of one stratum."""
    points, generic_only = sample_points(stratum.piece, plan, pring.uring)
    mismatches = []

    for pt in points:
        direct = buchberger([g for g in pring.specialize_ideal(gens, pt) if g])
        direct_strs = sorted(str(g) for g in direct)
        expected = []
        for sec in stratum.gb:
            values = []
            for chart in sec.charts:
                val = evaluate_chart(sec, chart, pt, pring)
                if val is not None:
                    values.append(val)
            if not values:
                mismatches.append(
                    {
                        "point": [str(v) for v in pt],
                        "problem": f"no chart applies at {pring.fmt_x_term(sec.lt)}",
                    }
                )
                continue
            for other in values[1:]:
                if other != values[0]:
                    mismatches.append(
                        {
                            "point": [str(v) for v in pt],
                            "problem": "charts disagree",
                            "values": sorted(str(v) for v in values),
                        }
                    )
                    break
            expected.append(values[0])
        expected_strs = sorted(str(g) for g in expected)
        if expected_strs != direct_strs:
            mismatches.append(
                {
                    "point": [str(v) for v in pt],
                    "problem": "section values differ from the recomputed basis",
                    "expected": expected_strs,
                    "got": direct_strs,
                }
            )
            continue
        lt_direct = sorted(g.lt() for g in direct)
        lt_stored = sorted(tuple(t) for t in stratum.leading_terms)
        if lt_direct != lt_stored:
            mismatches.append(
                {
                    "point": [str(v) for v in pt],
                    "problem": "leading terms drift across the stratum",
                    "expected": [pring.fmt_x_term(t) for t in lt_stored],
                    "got": [pring.fmt_x_term(t) for t in lt_direct],
                }
            )

    generic_ok = _check_generic(stratum, gens, pring, mismatches)
    return StratumReport(stratum.index, points, generic_only, generic_ok, mismatches)


def _check_generic(stratum, gens, pring, mismatches):
    fib, fld, _ = fibre_groebner(gens, stratum.prime, pring)
    lt_fib = sorted(g.lt() for g in fib)
    lt_stored = sorted(tuple(t) for t in stratum.leading_terms)
    if lt_fib != lt_stored:
        mismatches.append(
            {
                "problem": "generic leading terms differ",
                "expected": [pring.fmt_x_term(t) for t in lt_stored],
                "got": [pring.fmt_x_term(t) for t in lt_fib],
            }
        )
        return False
    by_lt = {g.lt(): g for g in fib}
    ok = True
    for sec in stratum.gb:
        g = by_lt[tuple(sec.lt)]
        for chart in sec.charts:
            den = fld.from_poly(chart.den)
            terms = set(chart.nums) | {e for e in g.coeffs if e != tuple(sec.lt)}
            for t in terms:
                want = g.coeffs.get(tuple(t), fld.zero)
                have = fld.from_poly(chart.nums.get(tuple(t), pring.uring.zero()), chart.den) if chart.nums.get(tuple(t)) is not None else fld.zero
                if have != want:
                    mismatches.append(
                        {
                            "problem": "generic coefficient mismatch",
                            "term": pring.fmt_x_term(t),
                            "lt": pring.fmt_x_term(sec.lt),
                        }
                    )
                    ok = False
    return ok


def check_cover(cover, gens, pring, plan: SamplePlan):
    return [check_stratum(s, gens, pring, plan) for s in cover.strata]


def brute_force_lt_classes(gens, pring: ParamRing, radius=2):
    """Grid map leading-term-set -> points, by direct Buchberger per point.

    The grid is {-radius..radius}^m; the oracle for homogeneous merging
    and for affine caution cases.
    """
    values = [Fraction(k) for k in range(-radius, radius + 1)]
    out = {}
    def rec(prefix):
        if len(prefix) == pring.nparams:
            pt = tuple(prefix)
            gb = buchberger([g for g in pring.specialize_ideal(gens, pt) if g])
            key = frozenset(g.lt() for g in gb)
            out.setdefault(key, []).append(pt)
            return
        for v in values:
            rec(prefix + [v])
    rec([])
    return out
