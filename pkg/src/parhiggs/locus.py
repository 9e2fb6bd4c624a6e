"""Deciding whether a linear space of Higgs fields contains a nonzero nilpotent.

For ``Phi(c) = sum c_i Phi_i`` every characteristic coefficient is a
polynomial in ``z`` whose coefficients are forms in ``c``; the nilpotent
locus is the common zero set of those forms.  It is decided exactly for
``dim <= 3`` (univariate gcds, then resultants with dynamic evaluation over
``Q[y]/(T)``) and searched over random rational pencils beyond that.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .core import (MPoly, Poly, PolyMatrix, char_poly_generic, det, poly_gcd, poly_gcd_many,
                   poly_xgcd, rational_roots, squarefree_part)
from .hitchin import nilpotency_check
from .parabolic import HiggsField, SectionSpace

TRIVIAL = "Trivial"
WITNESS = "Witness"
INCONCLUSIVE = "Inconclusive"

EXHAUSTIVE_K0 = "exhaustive-k0"
GCD_K1 = "univariate-gcd-k1"
PENCIL_K2 = "pencil-gcd-k2"
RESULTANT_K3 = "resultant-k3"
RANDOMIZED = "randomized-search"


@dataclass
class NilpotentLocusResult:
    verdict: str
    method: str
    witness: HiggsField | None = None
    coefficients: tuple[Fraction, ...] | None = None
    # set when a nonzero nilpotent exists only over an algebraic extension of Q
    algebraic: dict | None = None
    budget: int | None = None
    notes: list[str] = field(default_factory=list)


# ---------------------------------------------------------------------------
# forms cutting out the nilpotent locus


def nilpotency_forms(mats: list[PolyMatrix]) -> list[MPoly]:
    """Forms in ``c_1..c_k`` whose common zeros are the nilpotent combinations."""
    k = len(mats)
    n = mats[0].rows
    nv = k + 1  # c_1..c_k, z
    entries = []
    for i in range(n):
        row = []
        for j in range(n):
            terms = {}
            for a, M in enumerate(mats):
                for t, c in enumerate(M[i, j].coeffs):
                    if c:
                        e = [0] * nv
                        e[a] = 1
                        e[k] = t
                        terms[tuple(e)] = terms.get(tuple(e), 0) + c
            row.append(MPoly(nv, terms))
        entries.append(row)
    coeffs = char_poly_generic(entries, MPoly.const(nv, 1), MPoly(nv))
    forms = []
    for s in coeffs:
        for _, f in s.split_last().items():
            if f:
                forms.append(f)
    return forms


def _dehomogenize(form: MPoly, chart: int, value=1) -> MPoly:
    """Set variable ``chart`` to ``value`` and drop it."""
    out: dict = {}
    for e, c in form.terms.items():
        key = e[:chart] + e[chart + 1:]
        out[key] = out.get(key, 0) + c * Fraction(value) ** e[chart]
    return MPoly(form.nvars - 1, out)


def _univariate(form: MPoly) -> Poly:
    if form.nvars != 1:
        raise ValueError("expected a univariate form")
    top = max((e[0] for e in form.terms), default=-1)
    return Poly([form.terms.get((t,), 0) for t in range(top + 1)])


def _combine(mats, coeffs) -> PolyMatrix:
    out = PolyMatrix.zeros(mats[0].rows)
    for c, M in zip(coeffs, mats):
        if c:
            out = out + M * Fraction(c)
    return out


# ---------------------------------------------------------------------------
# binary forms (pencils)


def binary_common_root(forms: list[MPoly]):
    """Common projective zero of binary forms in ``(c_1 : c_2)``.

    Returns ``("none", None)``, ``("rational", (c1, c2))``,
    ``("algebraic", g)`` with ``g(t)`` the gcd in the chart ``c_2 = 1``.
    """
    forms = [f for f in forms if f]
    if not forms:
        return "rational", (Fraction(0), Fraction(1))
    # chart c2 = 0: point (1 : 0)
    if all(f.evaluate((1, 0)) == 0 for f in forms):
        return "rational", (Fraction(1), Fraction(0))
    g = poly_gcd_many(_univariate(_dehomogenize(f, 1)) for f in forms)
    if g.is_zero():
        return "rational", (Fraction(0), Fraction(1))
    if g.degree < 1:
        return "none", None
    roots = rational_roots(g)
    if roots:
        return "rational", (roots[0], Fraction(1))
    return "algebraic", g


# ---------------------------------------------------------------------------
# ternary forms: resultants and dynamic evaluation
#
# A polynomial in (x, y) is stored as a list of Poly in y indexed by the power of x.


def _xpoly_from(form: MPoly, shear: Fraction) -> list[Poly]:
    """``form(x, y + shear*x)`` as a polynomial in x over Q[y]."""
    acc: dict[int, Poly] = {}
    for (p, q), a in form.terms.items():
        for r in range(q + 1):
            coef = a * comb(q, r) * shear ** (q - r)
            if coef:
                xp = p + q - r
                acc[xp] = acc.get(xp, Poly()) + Poly.monomial(coef, r)
    top = max((k for k, v in acc.items() if v), default=-1)
    return [acc.get(k, Poly()) for k in range(top + 1)]


def _xdeg(f) -> int:
    for k in range(len(f) - 1, -1, -1):
        if not f[k].is_zero():
            return k
    return -1


def _sylvester_res(f: list[Poly], g: list[Poly]) -> Poly:
    m, n = _xdeg(f), _xdeg(g)
    if n < 0:
        return Poly()
    if n == 0:
        return g[0] ** m
    size = m + n
    rows = []
    for i in range(n):
        row = [Poly()] * size
        for k in range(m + 1):
            row[i + k] = f[m - k]
        rows.append(row)
    for i in range(m):
        row = [Poly()] * size
        for k in range(n + 1):
            row[i + k] = g[n - k]
        rows.append(row)
    return det(PolyMatrix.from_rows(rows))


def _reduce(f, T: Poly):
    return [c % T for c in f]


def _inverse_mod(c: Poly, T: Poly) -> Poly:
    g, s, _ = poly_xgcd(c, T)
    if g.degree != 0:
        raise ArithmeticError("not invertible")
    return s % T


def _normalize(f, T: Poly):
    """Split ``T`` until the leading x-coefficient of ``f`` is zero or a unit.

    Yields ``(T_i, f_i)`` with ``f_i`` monic in x over ``Q[y]/T_i`` (or empty).
    """
    f = _reduce(f, T)
    while f and f[-1].is_zero():
        f = f[:-1]
    if not f:
        yield T, []
        return
    lead = f[-1]
    h = poly_gcd(lead, T)
    if h.degree == 0:
        inv = _inverse_mod(lead, T)
        yield T, [(c * inv) % T for c in f]
        return
    if h.degree == T.degree:
        yield from _normalize(f[:-1], T)
        return
    yield from _normalize(f[:-1], h)
    yield from _normalize(f, T.exact_div(h))


def _d5_gcd_pair(a, b, T):
    """gcd of two x-polynomials over ``Q[y]/T`` with splitting."""
    out = []
    for T1, a1 in _normalize(a, T):
        for T2, b1 in _normalize(_reduce(b, T1), T1):
            out.extend(_euclid(_reduce(a1, T2), b1, T2))
    return out


def _euclid(a, b, T):
    # a, b monic (or empty) over Q[y]/T
    if not b:
        return [(T, a)]
    if not a:
        return [(T, b)]
    if len(a) < len(b):
        a, b = b, a
    r = list(a)
    while len(r) >= len(b) and r:
        c = r[-1]
        shift = len(r) - len(b)
        for k, bc in enumerate(b):
            r[shift + k] = (r[shift + k] - c * bc) % T
        while r and r[-1].is_zero():
            r.pop()
    out = []
    for T2, r2 in _normalize(r, T):
        out.extend(_euclid(_reduce(b, T2), r2, T2))
    return out


def d5_gcd(polys, T: Poly):
    branches = [(T, [])]
    for f in polys:
        nxt = []
        for Tb, g in branches:
            if not g:
                nxt.extend(_normalize(f, Tb))
            else:
                nxt.extend(_d5_gcd_pair(g, f, Tb))
        branches = nxt
    return branches


def _eval_x(f, y0) -> Poly:
    return Poly([c(y0) for c in f])


def ternary_affine_common_zero(forms: list[MPoly]):
    """Common zero of affine polynomials ``F_j(x, y)``.

    Returns ``("none", None)``, ``("rational", (x, y))`` or
    ``("algebraic", info)``.
    """
    forms = [f for f in forms if f]
    if not forms:
        return "rational", (Fraction(0), Fraction(0))
    if any(f.total_degree() == 0 for f in forms):
        return "none", None
    shear = None
    for cand in _candidate_values():
        if all(_top_at(f, cand) != 0 for f in forms):
            shear = cand
            break
    polys = sorted((_xpoly_from(f, shear) for f in forms), key=_xdeg)
    F1, rest = polys[0], polys[1:]

    def unshear(x0, y0):
        return x0, y0 + shear * x0

    if not rest:
        return _curve_point(polys, unshear, shear)
    d1 = _xdeg(F1)
    budget = d1 * (len(rest) + 1) * (max(_xdeg(f) for f in rest) + 1) + 1
    R = Poly()
    for lam in range(1, budget + 1):
        H = _xsum(rest, Fraction(lam))
        R = _sylvester_res(F1, H)
        if not R.is_zero():
            break
    if R.is_zero():
        # common factor with positive x-degree: a whole curve of zeros
        return _curve_point(polys, unshear, shear)
    if R.degree == 0:
        return "none", None
    T = squarefree_part(R)
    found_algebraic = None
    for Tb, g in d5_gcd(polys, T):
        if _xdeg(g) < 1:
            continue
        for y0 in rational_roots(Tb):
            gx = _eval_x(g, y0)
            xs = rational_roots(gx)
            if xs:
                return "rational", unshear(xs[0], y0)
        found_algebraic = {"shear": shear, "y_polynomial": Tb, "x_gcd": g}
    if found_algebraic is not None:
        return "algebraic", found_algebraic
    return "none", None


def _curve_point(polys, unshear, shear, tries: int = 25):
    g_seen = None
    for y0 in list(_candidate_values())[:tries]:
        g = poly_gcd_many(_eval_x(f, y0) for f in polys)
        if g.degree >= 1:
            g_seen = (y0, g)
            xs = rational_roots(g)
            if xs:
                return "rational", unshear(xs[0], y0)
    return "algebraic", {"shear": shear, "curve_section": g_seen}


def _xsum(polys, lam: Fraction):
    top = max(len(p) for p in polys)
    out = [Poly()] * top
    w = Fraction(1)
    for p in polys:
        w *= lam
        for k, c in enumerate(p):
            out[k] = out[k] + c * w
    return out


def _top_at(form: MPoly, s: Fraction) -> Fraction:
    d = form.total_degree()
    return sum((c * s ** e[1] for e, c in form.terms.items() if sum(e) == d), Fraction(0))


def _candidate_values():
    yield Fraction(0)
    k = 1
    while True:
        yield Fraction(k)
        yield Fraction(-k)
        k += 1


# ---------------------------------------------------------------------------
# the decision


def nilpotent_locus_decide(W, seed: int = 0, budget: int = 64) -> NilpotentLocusResult:
    """Decide whether ``W`` (a SectionSpace or list of fields) has a nonzero nilpotent."""
    basis = list(W.basis) if isinstance(W, SectionSpace) else list(W)
    mats = [b.matrix if isinstance(b, HiggsField) else b for b in basis]
    k = len(mats)
    if k == 0:
        return NilpotentLocusResult(TRIVIAL, EXHAUSTIVE_K0)
    if k == 1:
        if nilpotency_check(mats[0]):
            return _witness(basis, mats, (Fraction(1),), GCD_K1)
        return NilpotentLocusResult(TRIVIAL, GCD_K1)
    if k == 2:
        kind, data = binary_common_root(nilpotency_forms(mats))
        return _from_binary(kind, data, basis, mats, PENCIL_K2)
    if k == 3:
        forms = nilpotency_forms(mats)
        # plane c3 = 0 first: a pencil in (c1 : c2)
        kind, data = binary_common_root([_dehomogenize(f, 2, 0) for f in forms])
        if kind == "rational":
            return _witness(basis, mats, (data[0], data[1], Fraction(0)), RESULTANT_K3)
        if kind == "algebraic":
            return NilpotentLocusResult(WITNESS, RESULTANT_K3, algebraic={
                "chart": "c3=0, c2=1", "c1_polynomial": _poly_json(data)})
        kind, data = ternary_affine_common_zero([_dehomogenize(f, 2) for f in forms])
        if kind == "rational":
            return _witness(basis, mats, (data[0], data[1], Fraction(1)), RESULTANT_K3)
        if kind == "algebraic":
            return NilpotentLocusResult(WITNESS, RESULTANT_K3,
                                        algebraic={"chart": "c3=1", **_info_json(data)})
        return NilpotentLocusResult(TRIVIAL, RESULTANT_K3)
    return _random_pencils(basis, mats, seed, budget)


def _random_pencils(basis, mats, seed: int, budget: int) -> NilpotentLocusResult:
    rng = random.Random(seed)
    k = len(mats)
    for _ in range(budget):
        a = [Fraction(rng.randint(-4, 4)) for _ in range(k)]
        b = [Fraction(rng.randint(-4, 4)) for _ in range(k)]
        A, B = _combine(mats, a), _combine(mats, b)
        if A.is_zero() or B.is_zero():
            continue
        kind, data = binary_common_root(nilpotency_forms([A, B]))
        if kind == "rational":
            coeffs = tuple(data[0] * x + data[1] * y for x, y in zip(a, b))
            if any(coeffs):
                res = _witness(basis, mats, coeffs, RANDOMIZED)
                res.budget = budget
                return res
        elif kind == "algebraic":
            return NilpotentLocusResult(WITNESS, RANDOMIZED, budget=budget, algebraic={
                "pencil": [[str(x) for x in a], [str(y) for y in b]],
                "t_polynomial": _poly_json(data)})
    return NilpotentLocusResult(INCONCLUSIVE, RANDOMIZED, budget=budget,
                                notes=[f"no nilpotent found on {budget} random pencils"])


def _from_binary(kind, data, basis, mats, method):
    if kind == "rational":
        return _witness(basis, mats, data, method)
    if kind == "algebraic":
        return NilpotentLocusResult(WITNESS, method, algebraic={
            "chart": "c2=1", "c1_polynomial": _poly_json(data)})
    return NilpotentLocusResult(TRIVIAL, method)


def _witness(basis, mats, coeffs, method):
    M = _combine(mats, coeffs)
    if M.is_zero() or not nilpotency_check(M):
        raise AssertionError("internal error: witness is not a nonzero nilpotent")
    if isinstance(basis[0], HiggsField):
        b0 = basis[0]
        phi = HiggsField(M.with_caps(b0.matrix.caps), b0.bundle, b0.mode, b0.twist)
    else:
        phi = M
    return NilpotentLocusResult(WITNESS, method, witness=phi, coefficients=tuple(coeffs))


def _poly_json(p: Poly) -> list[str]:
    return [f"{c.numerator}/{c.denominator}" for c in p.coeffs]


def _info_json(info: dict) -> dict:
    out = {"shear": f"{info['shear'].numerator}/{info['shear'].denominator}"}
    if "y_polynomial" in info:
        out["y_polynomial"] = _poly_json(info["y_polynomial"])
        out["x_gcd"] = [_poly_json(c) for c in info["x_gcd"]]
    if info.get("curve_section"):
        y0, g = info["curve_section"]
        out["curve_section"] = {"y": str(y0), "x_polynomial": _poly_json(g)}
    return out
