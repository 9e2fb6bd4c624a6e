"""Exact (semi)stability of rank-2 parabolic (Higgs) bundles on the line.

A saturated line subbundle ``O(e) -> O(a) + O(b)`` is a section ``s = (u, v)``
with ``deg u <= a - e``, ``deg v <= b - e`` and no common zero on the line
(including infinity).  Its parabolic degree is ``e`` plus, at each marked
point, ``alpha_2`` if ``s(p)`` lies on the flag line and ``alpha_1``
otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import ceil
from typing import Sequence

from .core import Poly, QuadNumber, kernel_basis, poly_gcd_many, poly_sqrt, rational_sqrt
from .pairing import SYMMETRIC, PairingForm
from .parabolic import (HiggsField, ParabolicBundle, SubbundleData, induced_subbundle_weights,
                        parabolic_slope, section_degree, section_incidence)

STABLE = "Stable"
STRICTLY_SEMISTABLE = "StrictlySemistable"
UNSTABLE = "Unstable"

# deterministic sample values for generic members of a linear family
SAMPLE_VALUES = tuple(Fraction(x) for x in (0, 1, -1, 2, -2, 3, -3, 4, -4, 5))


@dataclass(frozen=True)
class StabilityVerdict:
    verdict: str
    witness: SubbundleData | None = None
    slope: Fraction | None = None
    method: str = "line-enumeration"
    candidates: int = 0

    def __post_init__(self):
        if (self.witness is None) != (self.verdict == STABLE):
            raise ValueError("a witness is required exactly when the verdict is not Stable")


def _check_rank2(E: ParabolicBundle):
    if E.rank != 2:
        raise ValueError("rank-2 bundles only")
    a, b = E.splitting
    if a < b:
        raise ValueError("splitting must be ordered a >= b")
    return a, b


def line_subbundle_candidates(E: ParabolicBundle, threshold) -> list[tuple[int, frozenset]]:
    """Pairs ``(e, S)`` whose best-case parabolic degree reaches ``threshold``.

    ``S`` is the set of marked-point indices where the line must meet the flag line.
    """
    a, b = _check_rank2(E)
    threshold = Fraction(threshold)
    r = E.r
    top = sum((w[1] for w in E.weights), Fraction(0))
    lowest = ceil(threshold - top)
    degrees = sorted({e for e in range(lowest, b + 1)} | ({a} if a >= lowest else set()),
                     reverse=True)
    out = []
    for e in degrees:
        for size in range(r, -1, -1):
            for S in combinations(range(r), size):
                val = e + sum((E.weights[k][1] if k in S else E.weights[k][0] for k in range(r)),
                              Fraction(0))
                if val >= threshold:
                    out.append((e, frozenset(S)))
    return out


def saturate(section: Sequence[Poly], E: ParabolicBundle) -> SubbundleData:
    """Saturation of the line spanned by a nonzero section of ``E``."""
    section = tuple(section)
    if all(s.is_zero() for s in section):
        raise ValueError("the zero section spans no line")
    g = poly_gcd_many(section)
    sat = tuple(s.exact_div(g) for s in section)
    # normalise to a monic first nonzero entry
    lead = next(s for s in sat if not s.is_zero()).lc()
    sat = tuple(s * (1 / lead) for s in sat)
    F = SubbundleData(section_degree(E, sat), sat, section_incidence(E, sat), ())
    return SubbundleData(F.degree, sat, F.incidence, induced_subbundle_weights(E, F))


def invariance_check(phi, F) -> bool:
    """``det[Phi s | s] == 0``: the line spanned by ``s`` is ``Phi``-invariant."""
    Phi = phi.matrix if isinstance(phi, HiggsField) else phi
    s = F.section if isinstance(F, SubbundleData) else tuple(F)
    if len(s) != 2:
        raise ValueError("rank-2 ambient only")
    u, v = s
    Pu = Phi[0, 0] * u + Phi[0, 1] * v
    Pv = Phi[1, 0] * u + Phi[1, 1] * v
    return (Pu * v - Pv * u).is_zero()


# ---------------------------------------------------------------------------
# lines cut out by a binary quadratic form with coefficients in Q[z]


def quadratic_form_lines(A: Poly, B: Poly, C: Poly):
    """Solutions ``(u, v)`` of ``A u^2 + B u v + C v^2 = 0`` in ``K[z]^2``.

    Returns ``None`` if the form vanishes identically, else a list of
    sections (possibly over a quadratic extension), empty when the
    discriminant is not a constant times a square.
    """
    if A.is_zero() and B.is_zero() and C.is_zero():
        return None
    if A.is_zero():
        return [(Poly.const(1), Poly()), (C, -B)]
    disc = B * B - 4 * A * C
    if disc.is_zero():
        return [(-B, A * 2)]
    c = disc.lc()
    q = poly_sqrt(disc * (1 / c))
    if q is None:
        return []
    root = rational_sqrt(c)
    if root is not None:
        sq = q * root
        return [(-B + sq, A * 2), (-B - sq, A * 2)]
    sq = Poly([QuadNumber(0, x, c) for x in q.coeffs])
    two_a = Poly([QuadNumber(x, 0, c) for x in (A * 2).coeffs])
    mb = Poly([QuadNumber(x, 0, c) for x in (-B).coeffs])
    return [(mb + sq, two_a), (mb - sq, two_a)]


def invariant_lines(phi):
    Phi = phi.matrix if isinstance(phi, HiggsField) else phi
    # det[Phi s | s] = -(phi10 u^2 + (phi11 - phi00) u v - phi01 v^2)
    return quadratic_form_lines(Phi[1, 0], Phi[1, 1] - Phi[0, 0], -Phi[0, 1])


def isotropic_lines(P: PairingForm):
    W = P.omega
    if P.symmetry != SYMMETRIC:
        return None
    return quadratic_form_lines(W[0, 0], W[0, 1] + W[1, 0], W[1, 1])


# ---------------------------------------------------------------------------
# the decision


def _flag_row(E: ParabolicBundle, k: int):
    """Linear form whose vanishing puts a fiber vector on the flag line at point ``k``."""
    return E.flag_inverse(k)[0]


def _section_rows(E: ParabolicBundle, e: int, S) -> tuple[list, list[tuple[int, int]]]:
    a, b = E.splitting
    unknowns = [(0, t) for t in range(a - e + 1)] + [(1, t) for t in range(b - e + 1)]
    rows = []
    for k in sorted(S):
        p = E.curve.points[k]
        lam = _flag_row(E, k)
        rows.append([lam[i] * p ** t for (i, t) in unknowns])
    return rows, unknowns


def _section_from(vec, unknowns) -> tuple[Poly, Poly]:
    cu, cv = {}, {}
    for x, (i, t) in zip(vec, unknowns):
        (cu if i == 0 else cv)[t] = x
    u = Poly([cu.get(t, 0) for t in range(max(cu, default=-1) + 1)])
    v = Poly([cv.get(t, 0) for t in range(max(cv, default=-1) + 1)])
    return u, v


def _best_in_family(E, e, S, basis, unknowns):
    """Saturate deterministic members of ``span(basis)``; prefer one of degree ``e`` meeting ``S``."""
    best = None
    for t in SAMPLE_VALUES:
        vec = [Fraction(0)] * len(unknowns)
        for i, bvec in enumerate(basis):
            w = t ** i
            vec = [x + w * y for x, y in zip(vec, bvec)]
        if not any(vec):
            continue
        F = saturate(_section_from(vec, unknowns), E)
        if best is None or F.pardeg > best.pardeg:
            best = F
        if F.degree == e and all(F.incidence[k] == 2 for k in S):
            break
    return best


def stability_decide_rank2(E: ParabolicBundle, P: PairingForm | None = None,
                           phi=None) -> StabilityVerdict:
    """Compare the most destabilizing admissible line subbundle with the slope of ``E``.

    Admissible lines are isotropic for ``P`` and, when ``phi`` is given,
    ``phi``-invariant.  For an alternating form every line is isotropic.
    """
    _check_rank2(E)
    mu = parabolic_slope(E)
    lines = isotropic_lines(P) if P is not None else None
    method = "line-enumeration"
    if phi is not None:
        inv = invariant_lines(phi)
        if inv is not None:
            if lines is None:
                lines = inv
            else:
                lines = [s for s in lines if invariance_check(phi, s)]
    if lines is not None:
        method = "finite-line-set"
        cands = [saturate(s, E) for s in lines if not all(x.is_zero() for x in s)]
        best = max(cands, key=lambda F: F.pardeg, default=None)
        return _verdict(best, mu, method, len(cands))
    cands = line_subbundle_candidates(E, mu)
    best = None
    for e, S in cands:
        rows, unknowns = _section_rows(E, e, S)
        basis = kernel_basis(rows, len(unknowns)) if rows else _unit_basis(len(unknowns))
        if not basis:
            continue
        F = _best_in_family(E, e, S, basis, unknowns)
        if best is None or F.pardeg > best.pardeg:
            best = F
    return _verdict(best, mu, method, len(cands))


def _unit_basis(n: int):
    return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]


def _verdict(best, mu, method, count) -> StabilityVerdict:
    if best is None or best.pardeg < mu:
        return StabilityVerdict(STABLE, None, mu, method, count)
    v = UNSTABLE if best.pardeg > mu else STRICTLY_SEMISTABLE
    return StabilityVerdict(v, best, mu, method, count)
