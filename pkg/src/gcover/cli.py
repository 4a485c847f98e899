"""Command-line surface.

Problem files are line-oriented key:value text:

    params: u1, u2
    vars: x
    order: grevlex
    gen: u1*x
    gen: (u2^2-1)*x^2 + x
    target_closed: u1        # optional, 0+ lines
    target_open: u2          # optional, 0+ lines

Exit codes: 0 success, 1 certificate failure, 2 input error,
3 internal-consistency error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .constructible import ConstructibleSet, LocallyClosedPiece
from .cover import (
    GroebnerCover,
    canonical_cover,
    certify_cover,
    comprehensive_gb,
    homogeneous_cover,
)
from .errors import InternalConsistencyError, ParseError
from .groebner import Ideal
from .minprimes import PrimeIdeal, certify_prime, minimal_primes
from .orders import by_name
from .parametric import (
    Chart,
    ParamRing,
    SectionPoly,
    Stratum,
    fibre_groebner,
    pseudo_divide,
    ring_gb,
    singular_ideal_from,
    z_gen,
)
from .verify import SamplePlan, check_cover

SCHEMA_VERSION = 1


class Problem:
    def __init__(self, params, xvars, order_name, gen_texts, closed_texts, open_texts):
        self.order_name = order_name
        self.pring = ParamRing(params, xvars, by_name(order_name))
        self.gen_texts = gen_texts
        self.gens = [self.pring.joint.parse(t) for t in gen_texts]
        uring = self.pring.uring
        self.closed = Ideal(uring, [uring.parse(t) for t in closed_texts])
        if open_texts:
            self.open_ = Ideal(uring, [uring.parse(t) for t in open_texts])
        else:
            self.open_ = Ideal.unit(uring)
        self.target = ConstructibleSet.from_piece(LocallyClosedPiece(self.closed, self.open_))

    @property
    def params(self):
        return self.pring.params

    @property
    def xvars(self):
        return self.pring.xvars


def parse_problem(path, order_override=None):
    params = None
    xvars = None
    order_name = "grevlex"
    gens = []
    closed = []
    open_ = []
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as e:
        raise ParseError(f"cannot read problem file: {e}")
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError("expected 'key: value'", line=lineno)
        key, value = line.split(":", 1)
        key = key.strip()
        value = value.strip()
        try:
            if key == "params":
                params = tuple(v.strip() for v in value.split(",") if v.strip())
            elif key == "vars":
                xvars = tuple(v.strip() for v in value.split(",") if v.strip())
            elif key == "order":
                order_name = value
            elif key == "gen":
                gens.append(value)
            elif key == "target_closed":
                closed.append(value)
            elif key == "target_open":
                open_.append(value)
            else:
                raise ParseError(f"unknown key {key!r}", line=lineno)
        except ParseError:
            raise
        except ValueError as e:
            raise ParseError(str(e), line=lineno)
    if params is None or xvars is None:
        raise ParseError("problem file must declare 'params' and 'vars'")
    if not gens:
        raise ParseError("problem file declares no generators")
    if order_override:
        order_name = order_override
    try:
        return Problem(params, xvars, order_name, gens, closed, open_)
    except (ParseError, ValueError) as e:
        raise ParseError(str(e))


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _fmt_upoly(p):
    return str(p)


def _stratum_json(s: Stratum, pring):
    gb = []
    for sec in s.gb:
        coeff_terms = sorted({t for c in sec.charts for t in c.nums}, key=pring.x_order.key, reverse=True)
        coeffs = []
        for t in coeff_terms:
            charts = []
            for c in sec.charts:
                if t in c.nums:
                    charts.append({"num": _fmt_upoly(c.nums[t]), "den": _fmt_upoly(c.den)})
            coeffs.append({"term": pring.fmt_x_term(t), "charts": charts})
        gb.append(
            {
                "leading_term": pring.fmt_x_term(sec.lt),
                "chart_dens": [_fmt_upoly(c.den) for c in sec.charts],
                "coefficients": coeffs,
            }
        )
    return {
        "index": list(s.index) if s.index else None,
        "closed_gens": [_fmt_upoly(g) for g in s.prime.gens],
        "open_gens": [_fmt_upoly(g) for g in s.piece.open_.groebner()],
        "leading_terms": [pring.fmt_x_term(t) for t in s.leading_terms],
        "gb": gb,
        "presumed_primes": [] if s.prime.certified else [[_fmt_upoly(g) for g in s.prime.gens]],
    }


def cover_to_json(problem: Problem, cover: GroebnerCover, flags):
    return {
        "schema": SCHEMA_VERSION,
        "command": "cover",
        "order": problem.order_name,
        "params": list(problem.params),
        "vars": list(problem.xvars),
        "generators": [str(g) for g in problem.gens],
        "target": {
            "closed": [str(g) for g in problem.closed.gens],
            "open": [str(g) for g in problem.open_.gens],
        },
        "strata": [_stratum_json(s, problem.pring) for s in cover.strata],
        "flags": flags,
    }


def cover_from_json(data, problem: Problem):
    """Rebuild enough of a cover from its JSON to re-verify certificates."""
    pring = problem.pring
    uring = pring.uring
    strata = []
    for sj in data["strata"]:
        closed = Ideal(uring, [uring.parse(t) for t in sj["closed_gens"]])
        open_ = Ideal(uring, [uring.parse(t) for t in sj["open_gens"]]) if sj["open_gens"] else Ideal.unit(uring)
        presumed = bool(sj["presumed_primes"])
        prime = PrimeIdeal(closed, not presumed)
        piece = LocallyClosedPiece(closed, open_)
        gb = []
        for gj in sj["gb"]:
            lt = _parse_x_term(gj["leading_term"], pring)
            per_den = {}
            for cj in gj["coefficients"]:
                t = _parse_x_term(cj["term"], pring)
                for e in cj["charts"]:
                    per_den.setdefault(e["den"], {})[t] = uring.parse(e["num"])
            charts = []
            for den_text in gj["chart_dens"]:
                charts.append(
                    Chart(uring.parse(den_text), per_den.get(den_text, {}), None, None)
                )
            gb.append(SectionPoly(lt, charts))
        lts = [_parse_x_term(t, pring) for t in sj["leading_terms"]]
        strata.append(Stratum(piece, prime, lts, gb, presumed, tuple(sj["index"]) if sj["index"] else None))
    return GroebnerCover(pring, problem.target, strata)


def _parse_x_term(text, pring):
    p = pring.xring.parse(text)
    return p.lt()


def _dump_json(obj, path):
    text = json.dumps(obj, sort_keys=True, indent=1)
    if path == "-":
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _print_cover(problem, cover, flags, report):
    pring = problem.pring
    print(f"canonical cover: {len(cover.strata)} strata")
    for s in cover.strata:
        closed = ", ".join(str(g) for g in s.prime.gens) or "0"
        open_ = ", ".join(str(g) for g in s.piece.open_.groebner())
        print(f"[{s.index[0]},{s.index[1]}] V({closed}) \\ V({open_})")
        print(f"    leading terms: {', '.join(pring.fmt_x_term(t) for t in s.leading_terms) or '-'}")
        for sec in s.gb:
            charts = []
            for c in sec.charts:
                tail = " + ".join(
                    f"({c.nums[t]})/({c.den})*{pring.fmt_x_term(t)}"
                    for t in sorted(c.nums, key=pring.x_order.key, reverse=True)
                )
                charts.append(tail if tail else "0")
            lt = pring.fmt_x_term(sec.lt)
            print(f"    {lt} + tail; charts on D(den): {[str(c.den) for c in sec.charts]}")
            for c, tail in zip(sec.charts, charts):
                print(f"      D({c.den}): {lt}" + (f" + {tail}" if tail != "0" else ""))
        if s.presumed:
            print("    (closed part presumed prime, not certified)")
    print("flags:", json.dumps(flags, sort_keys=True))
    for line in report:
        print("certificate failure:", line)


def cmd_cover(args):
    problem = parse_problem(args.file, args.order)
    cover = canonical_cover(problem.target, problem.gens, problem.pring)
    flags, report = certify_cover(cover, problem.gens, problem.pring)
    _print_cover(problem, cover, flags, report)
    if args.json:
        _dump_json(cover_to_json(problem, cover, flags), args.json)
    ok = flags["coverage"] and flags["small"] and flags["locally_maximal"]
    return 0 if ok else 1


def cmd_hcover(args):
    problem = parse_problem(args.file, args.order)
    try:
        base, merged = homogeneous_cover(problem.target, problem.gens, problem.pring)
    except ValueError as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    flags, report = certify_cover(base, problem.gens, problem.pring)
    pring = problem.pring
    print(f"homogeneous cover: {len(merged)} leading-term classes")
    out = []
    for m in merged:
        lts = ", ".join(pring.fmt_x_term(t) for t in m.leading_terms) or "-"
        pieces = [
            {
                "closed_gens": [str(g) for g in p.piece.closed.groebner()],
                "open_gens": [str(g) for g in p.piece.open_.groebner()],
            }
            for p in m.strata
        ]
        print(f"lt {{{lts}}}: {len(m.strata)} piece(s), locally closed: {m.locally_closed}")
        out.append(
            {
                "leading_terms": [pring.fmt_x_term(t) for t in m.leading_terms],
                "pieces": pieces,
                "locally_closed": m.locally_closed,
            }
        )
    if args.json:
        _dump_json(
            {
                "schema": SCHEMA_VERSION,
                "command": "hcover",
                "classes": out,
                "flags": flags,
            },
            args.json,
        )
    return 0


def cmd_jideal(args):
    problem = parse_problem(args.file, args.order)
    pring = problem.pring
    a_ideal = problem.closed
    rgb = ring_gb(problem.gens, a_ideal, pring)
    if a_ideal.is_zero() or certify_prime(a_ideal):
        fib, _, _ = fibre_groebner(problem.gens, PrimeIdeal(a_ideal), pring)
        T = [g.lt() for g in fib]
    else:
        T = rgb.leading_terms()
    J = singular_ideal_from(rgb, leading_terms=T)
    print("singular ideal generators (product form, up to radical):")
    for g in J.groebner():
        print("  ", g)
    if args.json:
        _dump_json(
            {
                "schema": SCHEMA_VERSION,
                "command": "jideal",
                "modulus": [str(g) for g in a_ideal.gens],
                "leading_terms": [pring.fmt_x_term(t) for t in T],
                "generators": [str(g) for g in J.groebner()],
            },
            args.json,
        )
    return 0


def cmd_zgen(args):
    problem = parse_problem(args.file, args.order)
    pring = problem.pring
    primes = minimal_primes(problem.closed)
    if not primes:
        print("input error: the closed target is empty", file=sys.stderr)
        return 2
    out = []
    for p in primes:
        s = z_gen(p, problem.gens, pring)
        closed = ", ".join(str(g) for g in p.gens) or "0"
        if s is None:
            print(f"V({closed}): generic parametric subset is empty")
            out.append({"closed_gens": [str(g) for g in p.gens], "empty": True})
            continue
        print(f"V({closed}): piece {s.piece}")
        print(f"  leading terms: {', '.join(pring.fmt_x_term(t) for t in s.leading_terms) or '-'}")
        out.append(_stratum_json(s, pring))
    if args.json:
        _dump_json({"schema": SCHEMA_VERSION, "command": "zgen", "strata": out}, args.json)
    return 0


def cmd_pseudodiv(args):
    problem = parse_problem(args.file, args.order)
    pring = problem.pring
    f = pring.joint.parse(args.dividend)
    divisors = [pring.joint.parse(t) for t in args.divisor or []]
    if not divisors:
        print("input error: at least one --g divisor required", file=sys.stderr)
        return 2
    c, quots, r = pseudo_divide(f, divisors, pring)
    print("c =", c)
    for q, g in zip(quots, divisors):
        print(f"  quotient for ({g}): {q}")
    print("r =", r)
    if args.json:
        _dump_json(
            {
                "schema": SCHEMA_VERSION,
                "command": "pseudodiv",
                "c": str(c),
                "quotients": [str(q) for q in quots],
                "remainder": str(r),
            },
            args.json,
        )
    return 0


def cmd_specialize(args):
    problem = parse_problem(args.file, args.order)
    pring = problem.pring
    try:
        point = [Fraction(v.strip()) for v in args.point.split(",")]
        if len(point) != pring.nparams:
            raise ValueError(f"expected {pring.nparams} coordinates")
    except (ValueError, ZeroDivisionError) as e:
        print(f"input error: malformed point: {e}", file=sys.stderr)
        return 2
    from .groebner import buchberger

    specialized = pring.specialize_ideal(problem.gens, point)
    gb = buchberger([g for g in specialized if g])
    print("specialized generators:")
    for g in specialized:
        print("  ", g)
    print("reduced basis:")
    for g in gb:
        print("  ", g)
    if args.json:
        _dump_json(
            {
                "schema": SCHEMA_VERSION,
                "command": "specialize",
                "point": [str(v) for v in point],
                "generators": [str(g) for g in specialized],
                "reduced_basis": [str(g) for g in gb],
            },
            args.json,
        )
    return 0


def cmd_verify(args):
    problem = parse_problem(args.file, args.order)
    pring = problem.pring
    if args.cover_json:
        with open(args.cover_json, encoding="utf-8") as fh:
            cover = cover_from_json(json.load(fh), problem)
    else:
        cover = canonical_cover(problem.target, problem.gens, pring)
    flags, report = certify_cover(cover, problem.gens, pring)
    plan = SamplePlan(seed=args.seed)
    reports = check_cover(cover, problem.gens, pring, plan)
    ok = flags["coverage"] and flags["small"] and flags["locally_maximal"]
    for s, r in zip(cover.strata, reports):
        status = "ok" if r.ok else "MISMATCH"
        mode = "generic-only" if r.generic_only else f"{len(r.points)} points"
        print(f"stratum {s.index}: {mode}, {status}")
        for m in r.mismatches:
            print("   ", json.dumps(m, sort_keys=True))
        ok = ok and r.ok
    print("certificates:", json.dumps(flags, sort_keys=True))
    for line in report:
        print("certificate failure:", line)
    if args.json:
        _dump_json(
            {
                "schema": SCHEMA_VERSION,
                "command": "verify",
                "seed": args.seed,
                "flags": flags,
                "strata": [r.to_json() for r in reports],
                "ok": ok,
            },
            args.json,
        )
    return 0 if ok else 1


def build_parser():
    ap = argparse.ArgumentParser(
        prog="gcover",
        description="Parametric Groebner bases: singular ideals, generic strata and canonical covers.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", help="problem file")
        p.add_argument("--order", choices=["lex", "grlex", "grevlex"], help="term order override")
        p.add_argument("--seed", type=int, default=0, help="sampling seed")
        p.add_argument("--json", help="write a JSON report to this path ('-' for stdout)")

    p = sub.add_parser("cover", help="canonical irreducible Groebner cover")
    common(p)
    p.set_defaults(fn=cmd_cover)

    p = sub.add_parser("hcover", help="canonical cover by leading terms (homogeneous input)")
    common(p)
    p.set_defaults(fn=cmd_hcover)

    p = sub.add_parser("jideal", help="singular ideal of the extension to the closed target")
    common(p)
    p.set_defaults(fn=cmd_jideal)

    p = sub.add_parser("zgen", help="generic parametric subsets over the closed target's components")
    common(p)
    p.set_defaults(fn=cmd_zgen)

    p = sub.add_parser("pseudodiv", help="fraction-free division in Q[u][x]")
    common(p)
    p.add_argument("--f", dest="dividend", required=True, help="dividend")
    p.add_argument("--g", dest="divisor", action="append", help="divisor (repeatable)")
    p.set_defaults(fn=cmd_pseudodiv)

    p = sub.add_parser("specialize", help="evaluate the ideal at a rational parameter point")
    common(p)
    p.add_argument("--point", required=True, help="comma-separated rational coordinates")
    p.set_defaults(fn=cmd_specialize)

    p = sub.add_parser("verify", help="independent verification of a cover")
    common(p)
    p.add_argument("--cover-json", help="re-verify a cover from its JSON output")
    p.set_defaults(fn=cmd_verify)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    except InternalConsistencyError as e:
        print(f"internal consistency error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
