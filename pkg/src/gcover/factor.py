"""Polynomial factorization over Q.

Univariate polynomials are factored by rational-root extraction plus a
Kronecker search: candidate factors of degree d are interpolated from
divisor tuples of the values at d+1 integer points and confirmed by
exact division. Multivariate polynomials are reduced to the univariate
case by Kronecker substitution u_i -> t^(D^i) with D exceeding every
per-variable degree, followed by subset recombination of the univariate
factors. Complete for the degrees this package meets; enumeration
budgets guard against pathological inputs (FactorLimitError) rather
than silently degrading.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd, isqrt, lcm

from .errors import FactorLimitError
from .poly import Polynomial, RationalField

_DIVISOR_TUPLE_CAP = 400_000
_UNI_FACTOR_CAP = 16
_TRIAL_DIVISION_CAP = 1_000_000


# ---------------------------------------------------------------------------
# dense univariate kernels (integer coefficient lists, low degree first)
# ---------------------------------------------------------------------------


def _zstrip(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _zmul(a, b):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _zstrip(out)


def _zeval(c, a):
    out = 0
    for x in reversed(c):
        out = out * a + x
    return out


def _zcontent(c):
    g = 0
    for x in c:
        g = gcd(g, x)
    return g


def _zprimitive(c):
    g = _zcontent(c)
    if g == 0:
        return []
    if c[-1] < 0:
        g = -g
    return [x // g for x in c]


def _qdivmod(a, b):
    """Division of Fraction lists; returns (quotient, remainder)."""
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    q = [Fraction(0)] * (max(len(a) - len(b) + 1, 0))
    while len(a) >= len(b) and any(a):
        while a and not a[-1]:
            a.pop()
        if len(a) < len(b):
            break
        k = len(a) - len(b)
        f = a[-1] / b[-1]
        q[k] = f
        for i, y in enumerate(b):
            a[k + i] -= f * y
        a.pop()
    while a and not a[-1]:
        a.pop()
    return q, a


def _zdivide_exact(a, b):
    """a // b when b divides a over Q (with integer inputs); else None."""
    if not a:
        return []
    q, r = _qdivmod(a, b)
    if r:
        return None
    out = []
    for x in q:
        if x.denominator != 1:
            return None
        out.append(x.numerator)
    return _zstrip(out)


def _zgcd(a, b):
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    while b and any(b):
        _, r = _qdivmod(a, b)
        a, b = b, [Fraction(x) for x in r]
    lead = a[-1]
    monic = [x / lead for x in a]
    den = 1
    for x in monic:
        den = lcm(den, x.denominator)
    return _zprimitive([int(x * den) for x in monic])


def _int_divisors(n):
    """All positive divisors of |n| (n != 0)."""
    n = abs(n)
    if n > _TRIAL_DIVISION_CAP**2:
        raise FactorLimitError(f"divisor enumeration on {n} too large")
    out = []
    i = 1
    while i <= isqrt(n):
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    out.sort()
    return out


def _uni_linear_factors(c):
    """Split off all rational-root linear factors q*t - p; returns (factors, rest)."""
    factors = []
    while len(c) > 2:
        if c[0] == 0:
            factors.append([0, 1])
            c = c[1:]
            continue
        found = False
        for q in _int_divisors(c[-1]):
            for p in _int_divisors(c[0]):
                for sp in (p, -p):
                    if gcd(sp, q) != 1:
                        continue
                    if _zeval(c, Fraction(sp, q)) == 0:
                        lin = _zprimitive([-sp, q])
                        rest = _zdivide_exact(c, lin)
                        factors.append(lin)
                        c = rest
                        found = True
                        break
                if found:
                    break
            if found:
                break
        if not found:
            break
    if len(c) == 2:
        fac = _zprimitive(c)
        factors.append(fac)
        c = [c[-1] // fac[-1]]
    return factors, c


def _interpolate(points):
    """Lagrange interpolation; Fraction coefficients, low degree first."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            new = [Fraction(0)] * (len(basis) + 1)
            for k, b in enumerate(basis):
                new[k] += b * (-xj)
                new[k + 1] += b
            basis = new
            denom *= xi - xj
        scale = yi / denom
        for k, b in enumerate(basis):
            coeffs[k] += b * scale
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _kronecker_degree_search(c, d):
    """Search for a primitive factor of degree exactly <= d (>=1); None if absent."""
    points = []
    a = 0
    while len(points) < d + 1:
        v = _zeval(c, a)
        if v != 0:
            points.append((a, v))
        a = -a if a > 0 else -a + 1
    div_lists = []
    total = 1
    for idx, (_, v) in enumerate(points):
        ds = _int_divisors(v)
        cand = ds if idx == 0 else [x for p in ds for x in (p, -p)]
        div_lists.append(cand)
        total *= len(cand)
        if total > _DIVISOR_TUPLE_CAP:
            raise FactorLimitError("Kronecker divisor search exceeded its budget")

    def rec(idx, chosen):
        if idx == len(points):
            pts = [(x, b) for (x, _), b in zip(points, chosen)]
            raw = _interpolate(pts)
            if len(raw) < 2:
                return None
            den = 1
            for x in raw:
                den = lcm(den, x.denominator)
            ic = _zprimitive([int(x * den) for x in raw])
            if len(ic) < 2:
                return None
            rest = _zdivide_exact(c, ic)
            if rest is not None:
                return ic, rest
            return None
        for b in div_lists[idx]:
            hit = rec(idx + 1, chosen + [b])
            if hit:
                return hit
        return None

    return rec(0, [])


def _uni_factor_squarefree(c):
    """Irreducible primitive factors of a primitive squarefree int poly."""
    out = []
    lin, c = _uni_linear_factors(c)
    out.extend(lin)
    while len(c) > 2:
        deg = len(c) - 1
        hit = None
        for d in range(2, deg // 2 + 1):
            hit = _kronecker_degree_search(c, d)
            if hit:
                break
        if hit is None:
            out.append(_zprimitive(c))
            return out
        fac, c = hit
        out.append(fac)
    if len(c) == 2:
        out.append(_zprimitive(c))
    return out


def _uni_factor_int(c):
    """All irreducible primitive factors (with repeats) of an int poly.

    The monomial part and the squarefree reduction are handled here, so
    the Kronecker search only ever sees squarefree input.
    """
    if len(_zstrip(list(c))) <= 1:
        return []
    c = _zprimitive(list(c))
    out = []
    k = 0
    while c[0] == 0:
        c = c[1:]
        k += 1
    out.extend([[0, 1]] * k)
    if len(c) <= 1:
        return out
    deriv = _zstrip([i * x for i, x in enumerate(c)][1:])
    g = _zgcd(c, deriv) if deriv else list(c)
    sqf = _zdivide_exact(c, g) if len(g) > 1 else list(c)
    irreducibles = _uni_factor_squarefree(sqf)
    for fac in irreducibles:
        rest = _zdivide_exact(c, fac)
        while rest is not None:
            out.append(fac)
            c = rest
            rest = _zdivide_exact(c, fac)
    return out


# ---------------------------------------------------------------------------
# multivariate layer
# ---------------------------------------------------------------------------


def _check_rational(ring):
    if not isinstance(ring.field, RationalField):
        raise TypeError("factorization is implemented over Q only")


def _to_dense(f, v):
    c = [Fraction(0)] * (f.degree_in(v) + 1)
    for e, val in f.coeffs.items():
        c[e[v]] += val
    return c


def _from_int_list(ring, v, c):
    coeffs = {}
    base = [0] * ring.nvars
    for k, x in enumerate(c):
        if x:
            e = list(base)
            e[v] = k
            coeffs[tuple(e)] = Fraction(x)
    return Polynomial(ring, coeffs)


def poly_content(f):
    """Rational content: gcd of the coefficients (positive)."""
    num, den = 0, 1
    for c in f.coeffs.values():
        num = gcd(num, c.numerator)
        den = lcm(den, c.denominator)
    return Fraction(num, den) if num else Fraction(0)


def try_divide(f, g):
    """Quotient f/g when g divides f exactly, else None."""
    from .groebner import divide_exact

    q, r = divide_exact(f, g)
    return None if r else q


def divide_poly_exact(f, g):
    q = try_divide(f, g)
    if q is None:
        raise ArithmeticError("exact division failed")
    return q


def _coeffs_in(f, v):
    """View f as univariate in v: degree -> coefficient polynomial."""
    out = {}
    for e, c in f.coeffs.items():
        k = e[v]
        e2 = e[:v] + (0,) + e[v + 1 :]
        slot = out.setdefault(k, {})
        slot[e2] = slot.get(e2, Fraction(0)) + c
    return {k: Polynomial(f.ring, {e: c for e, c in d.items() if c}) for k, d in out.items()}


def poly_gcd(f, g):
    """gcd over Q up to units, normalized integer-primitive with positive lead."""
    _check_rational(f.ring)
    if not f:
        return _normalize_primitive(g)
    if not g:
        return _normalize_primitive(f)
    used = sorted(set(f.variables()) | set(g.variables()))
    if not used:
        return f.ring.one()
    v = used[-1]
    if f.degree_in(v) == 0 or g.degree_in(v) == 0:
        # v occurs in only one of them: gcd divides the other's content in v
        fv = _content_in(f, v)
        gv = _content_in(g, v)
        return poly_gcd(fv, gv)
    cf, pf = _content_primitive_in(f, v)
    cg, pg = _content_primitive_in(g, v)
    d = poly_gcd(cf, cg)
    a, b = pf, pg
    while b:
        r = _prem(a, b, v)
        a, b = b, _content_primitive_in(r, v)[1] if r else a.ring.zero()
    return _normalize_primitive(d * _content_primitive_in(a, v)[1])


def _content_in(f, v):
    coeffs = _coeffs_in(f, v)
    out = f.ring.zero()
    for k in sorted(coeffs):
        out = poly_gcd(out, coeffs[k])
    return out


def _content_primitive_in(f, v):
    c = _content_in(f, v)
    if c.is_constant() and c.const_value() == 1:
        return c, f
    return c, divide_poly_exact(f, c)


def _prem(f, g, v):
    """Pseudo-remainder of f by g, both viewed as univariate in v."""
    dg = g.degree_in(v)
    gc = _coeffs_in(g, v)
    lcg = gc[dg]
    ring = f.ring
    while f and f.degree_in(v) >= dg:
        df = f.degree_in(v)
        fc = _coeffs_in(f, v)
        lcf = fc[df]
        shift = [0] * ring.nvars
        shift[v] = df - dg
        f = f * lcg - g.mul_term(tuple(shift)) * lcf
    return f


def _normalize_primitive(f):
    if not f:
        return f
    c = poly_content(f)
    if f.lc() < 0:
        c = -c
    return f / c


def squarefree_part(f):
    """Product of the distinct irreducible factors of a univariate f (monic)."""
    _check_rational(f.ring)
    if not f:
        raise ValueError("squarefree part of 0 is undefined")
    used = f.variables()
    if not used:
        return f.ring.one()
    if len(used) > 1:
        raise ValueError("squarefree_part expects a univariate polynomial")
    v = used[0]
    g = poly_gcd(f, f.derivative(v))
    out = divide_poly_exact(f, g)
    return out.monic()


def multivariate_squarefree_part(f):
    g = f
    for v in f.variables():
        g = poly_gcd(g, f.derivative(v))
    return _normalize_primitive(divide_poly_exact(f, g))


def factor(f):
    """Factor f over Q: returns (unit, [(irreducible, multiplicity), ...]).

    unit * prod(p^m) == f exactly; the irreducible factors are primitive
    with integer coefficients and positive leading coefficient.
    """
    _check_rational(f.ring)
    if not f:
        raise ValueError("cannot factor 0")
    ring = f.ring
    unit = poly_content(f)
    if f.lc() < 0:
        unit = -unit
    prim = f / unit
    used = prim.variables()
    if not used:
        return unit, []

    factors = []

    # monomial content
    mins = [min(e[i] for e in prim.coeffs) for i in range(ring.nvars)]
    if any(mins):
        prim = prim.div_term(tuple(mins))
        for i, k in enumerate(mins):
            if k:
                factors.append((ring.var(i), k))
        used = prim.variables()
        if not used:
            return unit * prim.const_value(), factors

    if len(used) == 1:
        v = used[0]
        dense = _to_dense(prim, v)
        den = 1
        for x in dense:
            den = lcm(den, x.denominator)
        ints = [int(x * den) for x in dense]
        irr = _uni_factor_int(ints)
        rest = ints
        counted = {}
        for fac in irr:
            counted.setdefault(tuple(fac), [fac, 0])[1] += 1
            rest = _zdivide_exact(rest, fac)
        for fac, mult in counted.values():
            factors.append((_from_int_list(ring, v, fac), mult))
        leftover = Fraction(rest[0], den) if rest else Fraction(1, den)
        return unit * leftover, factors

    sqf = multivariate_squarefree_part(prim)
    irred = _kronecker_multivariate(sqf, used)
    remaining = prim
    for q in irred:
        mult = 0
        quot = try_divide(remaining, q)
        while quot is not None:
            remaining = quot
            mult += 1
            quot = try_divide(remaining, q)
        factors.append((q, mult))
    if not remaining.is_constant():
        raise FactorLimitError("multivariate recombination left a non-constant cofactor")
    return unit * remaining.const_value(), factors


def _kronecker_multivariate(s, used):
    """Irreducible factors of a squarefree primitive multivariate polynomial."""
    ring = s.ring
    D = max(s.degree_in(v) for v in used) + 1
    weights = {}
    w = 1
    for v in used:
        weights[v] = w
        w *= D

    def substitute(p):
        dense = {}
        for e, c in p.coeffs.items():
            k = sum(e[v] * weights[v] for v in used)
            dense[k] = dense.get(k, Fraction(0)) + c
        size = max(dense) + 1 if dense else 0
        out = [Fraction(0)] * size
        for k, c in dense.items():
            out[k] = c
        return out

    def unsubstitute(ints):
        coeffs = {}
        for k, x in enumerate(ints):
            if not x:
                continue
            e = [0] * ring.nvars
            rem = k
            for v in used:
                e[v] = rem % D
                rem //= D
            coeffs[tuple(e)] = Fraction(x)
        return Polynomial(ring, coeffs)

    dense = substitute(s)
    den = 1
    for x in dense:
        den = lcm(den, x.denominator)
    image = [int(x * den) for x in dense]
    uni = _uni_factor_int(image)
    if len(uni) > _UNI_FACTOR_CAP:
        raise FactorLimitError("too many univariate factors to recombine")

    result = []
    live = list(range(len(uni)))
    target = s
    k = 1
    while k <= len(live) // 2:
        found = False
        seen = set()
        for combo in combinations(live, k):
            key = tuple(sorted(tuple(uni[i]) for i in combo))
            if key in seen:
                continue
            seen.add(key)
            prod = [1]
            for i in combo:
                prod = _zmul(prod, uni[i])
            cand = _normalize_primitive(unsubstitute(prod))
            if cand.is_constant():
                continue
            quot = try_divide(target, cand)
            if quot is None:
                continue
            result.append(cand)
            target = _normalize_primitive(quot)
            live = [i for i in live if i not in combo]
            found = True
            break
        if not found:
            k += 1
    if not target.is_constant():
        result.append(_normalize_primitive(target))
    return sorted(result, key=lambda p: p.sort_key())


def is_irreducible(f):
    """True iff f is irreducible over Q (nonconstant, up to units)."""
    if not f or f.is_constant():
        return False
    _, parts = factor(f)
    return len(parts) == 1 and parts[0][1] == 1
