import random
from fractions import Fraction

import pytest

from gcover import ConstructibleSet, Ideal, ParamRing, canonical_cover

FIXDEFS = {
    "EX1": (("u1", "u2"), ("x",), ["u1*x", "(u2^2-1)*x^2 + x"]),
    "EX2": (
        ("u1", "u2", "u3", "u4"),
        ("x",),
        ["(u2*u3-u4*u1)*x", "u1*x^2+u2*x", "u3*x^2+u4*x"],
    ),
    "EX3": (("u",), ("x",), ["u*(u*x-1)", "(u*x-1)*x"]),
    "EX4": (("u1", "u2"), ("x", "y"), ["u1*x+u2", "u1*y^2-1"]),
    "EX5": (
        ("b11", "b12", "b21", "b22", "c1", "c2"),
        ("x1", "x2"),
        ["b11*x1+b12*x2-c1", "b21*x1+b22*x2-c2"],
    ),
}


def load_fixture(name):
    params, xvars, gen_texts = FIXDEFS[name]
    pring = ParamRing(params, xvars)
    gens = [pring.joint.parse(t) for t in gen_texts]
    return pring, gens


def whole(pring):
    return ConstructibleSet.whole_space(pring.uring)


@pytest.fixture(scope="session")
def covers():
    """Canonical covers of all five fixtures, computed once."""
    out = {}
    for name in FIXDEFS:
        pring, gens = load_fixture(name)
        out[name] = (pring, gens, canonical_cover(whole(pring), gens, pring))
    return out


# -- small exact linear algebra for independent oracles ---------------------


def gauss_eliminate(rows):
    """Row-reduce a list of Fraction lists; returns the nonzero rows."""
    rows = [list(r) for r in rows]
    out = []
    pivots = []
    for row in rows:
        for prow, pcol in zip(out, pivots):
            if row[pcol]:
                f = row[pcol] / prow[pcol]
                for k in range(len(row)):
                    row[k] -= f * prow[k]
        for col, v in enumerate(row):
            if v:
                out.append(row)
                pivots.append(col)
                break
    return out, pivots


def in_row_space(rows, vec):
    base, pivots = gauss_eliminate(rows)
    row = list(vec)
    for prow, pcol in zip(base, pivots):
        if row[pcol]:
            f = row[pcol] / prow[pcol]
            for k in range(len(row)):
                row[k] -= f * prow[k]
    return not any(row)


def monomials_up_to(nvars, degree):
    out = []

    def rec(prefix, left):
        if len(prefix) == nvars:
            out.append(tuple(prefix))
            return
        for k in range(left + 1):
            rec(prefix + [k], left - k)

    rec([], degree)
    return out


def poly_to_vector(p, monos):
    index = {m: i for i, m in enumerate(monos)}
    vec = [Fraction(0)] * len(monos)
    for e, c in p.coeffs.items():
        vec[index[e]] = c
    return vec


def membership_by_linear_algebra(f, gens, degree_slack=4):
    """f in <gens>, decided over a truncated monomial basis.

    Sound for 'yes'; complete once the slack covers the cofactor degrees,
    which it does for the desk-scale ideals used in the tests.
    """
    ring = f.ring
    D = max([f.total_degree()] + [g.total_degree() for g in gens]) + degree_slack
    monos = monomials_up_to(ring.nvars, D)
    rows = []
    for g in gens:
        d = g.total_degree()
        for m in monomials_up_to(ring.nvars, D - d):
            rows.append(poly_to_vector(g.mul_term(m), monos))
    return in_row_space(rows, poly_to_vector(f, monos))


def random_poly(rng, ring, max_degree=3, max_terms=4, bound=5):
    coeffs = {}
    for _ in range(rng.randint(1, max_terms)):
        e = []
        left = max_degree
        for _ in range(ring.nvars):
            k = rng.randint(0, left)
            e.append(k)
            left -= k
        c = Fraction(rng.randint(-bound, bound))
        if c:
            coeffs[tuple(e)] = coeffs.get(tuple(e), Fraction(0)) + c
    return ring.poly({e: c for e, c in coeffs.items() if c})
