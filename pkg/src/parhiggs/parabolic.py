"""Parabolic bundles on the projective line with marked points.

The underlying bundle is split, ``E = O(d_1) + ... + O(d_n)`` with
``d_1 >= ... >= d_n``.  A flag at a marked point is an invertible matrix whose
trailing ``k`` columns span the step ``E_{p, n-k+1}``; column ``i`` (1-based)
therefore carries the weight ``alpha_i(p)``.

A twisted endomorphism ``Phi`` of ``E (x) O(k)`` is a polynomial matrix with
``deg Phi[i][j] <= d_i - d_j + k``.  In the flag basis at ``p`` its value is
``G = F^-1 Phi(p) F``; the weight rule then becomes a set of entries of ``G``
that must vanish.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .core import (ONE, ZERO, Poly, PolyMatrix, as_rational, kernel_basis, mat_det,
                   mat_inverse, solve_rational)

PARABOLIC = "parabolic"
STRONG = "strong"
MODES = (PARABOLIC, STRONG)


@dataclass(frozen=True)
class MarkedCurve:
    """Genus-0 curve with marked points at finite rational coordinates."""

    points: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(as_rational(p) for p in self.points))

    @property
    def r(self) -> int:
        return len(self.points)

    @property
    def kd_degree(self) -> int:
        """Degree of K(D) on the projective line."""
        return self.r - 2

    def problems(self) -> list[str]:
        if len(set(self.points)) != len(self.points):
            return ["marked points not distinct"]
        return []


Matrix = tuple[tuple[Fraction, ...], ...]


def _freeze(M) -> Matrix:
    return tuple(tuple(as_rational(x) for x in row) for row in M)


@dataclass(frozen=True)
class ParabolicBundle:
    curve: MarkedCurve
    splitting: tuple[int, ...]
    flags: tuple[Matrix, ...]
    weights: tuple[tuple[Fraction, ...], ...]
    # Offset of deg(E) from sum(splitting): records the elementary modification
    # produced by dual/tensor weight carries.  Section spaces need it to be 0.
    degree_shift: int = 0
    _inverses: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "splitting", tuple(int(d) for d in self.splitting))
        object.__setattr__(self, "flags", tuple(_freeze(F) for F in self.flags))
        object.__setattr__(self, "weights",
                           tuple(tuple(as_rational(a) for a in w) for w in self.weights))

    @property
    def rank(self) -> int:
        return len(self.splitting)

    @property
    def degree(self) -> int:
        return sum(self.splitting) + self.degree_shift

    @property
    def r(self) -> int:
        return self.curve.r

    def flag_inverse(self, k: int):
        if k not in self._inverses:
            inv = mat_inverse(self.flags[k])
            if inv is None:
                raise ValueError(f"flag at point {k} is not invertible")
            self._inverses[k] = inv
        return self._inverses[k]

    def flag_coordinates(self, k: int, v: Sequence):
        """Coordinates of the fiber vector ``v`` in the flag basis at point ``k``."""
        inv = self.flag_inverse(k)
        out = []
        for row in inv:
            acc = Fraction(0)
            for a, x in zip(row, v):
                acc = acc + a * x
            out.append(acc)
        return out

    def step(self, k: int, i: int) -> list[tuple[Fraction, ...]]:
        """Spanning vectors of ``E_{p,i}`` (1-based ``i``) at point ``k``."""
        F = self.flags[k]
        n = self.rank
        return [tuple(F[row][c] for row in range(n)) for c in range(i - 1, n)]

    def without_point(self, k: int) -> ParabolicBundle:
        pts = self.curve.points[:k] + self.curve.points[k + 1:]
        return ParabolicBundle(MarkedCurve(pts), self.splitting,
                               self.flags[:k] + self.flags[k + 1:],
                               self.weights[:k] + self.weights[k + 1:], self.degree_shift)


def make_bundle(points, splitting, flags, weights, degree_shift: int = 0) -> ParabolicBundle:
    """Convenience constructor; ``weights`` may be one vector used at every point."""
    points = tuple(points)
    if weights and not isinstance(weights[0], (list, tuple)):
        weights = [weights] * len(points)
    return ParabolicBundle(MarkedCurve(points), tuple(splitting), tuple(flags),
                           tuple(tuple(w) for w in weights), degree_shift)


def validate(E: ParabolicBundle) -> list[str]:
    """Return the list of violated invariants (empty when ``E`` is valid)."""
    out = list(E.curve.problems())
    n = E.rank
    if n == 0:
        out.append("rank must be positive")
        return out
    if any(E.splitting[i] < E.splitting[i + 1] for i in range(n - 1)):
        out.append("splitting degrees not non-increasing")
    if len(E.flags) != E.r:
        out.append(f"expected {E.r} flags, got {len(E.flags)}")
    if len(E.weights) != E.r:
        out.append(f"expected {E.r} weight vectors, got {len(E.weights)}")
    for k, F in enumerate(E.flags):
        if len(F) != n or any(len(row) != n for row in F):
            out.append(f"flag at point {k} is not {n}x{n}")
        elif mat_det(F) == 0:
            out.append(f"flag at point {k}: flag not invertible")
    for k, w in enumerate(E.weights):
        if len(w) != n:
            out.append(f"point {k}: partial flag ({len(w)} weights for rank {n})")
        if any(a < 0 or a >= 1 for a in w):
            out.append(f"point {k}: weights outside [0, 1)")
        if any(w[i] >= w[i + 1] for i in range(len(w) - 1)):
            out.append(f"point {k}: weights not increasing")
    return out


def parabolic_degree(E: ParabolicBundle) -> Fraction:
    # full flags: every graded piece is one-dimensional
    return E.degree + sum((sum(w, Fraction(0)) for w in E.weights), Fraction(0))


def parabolic_slope(E: ParabolicBundle) -> Fraction:
    return parabolic_degree(E) / E.rank


# ---------------------------------------------------------------------------
# line subbundles


@dataclass(frozen=True)
class SubbundleData:
    """Saturated line subbundle ``O(degree) -> E`` given by ``section``."""

    degree: int
    section: tuple[Poly, ...]
    incidence: tuple[int, ...]
    induced_weights: tuple[Fraction, ...]

    @property
    def pardeg(self) -> Fraction:
        return self.degree + sum(self.induced_weights, Fraction(0))


def incidence_index(E: ParabolicBundle, k: int, vectors) -> int:
    """Largest ``i`` with ``span(vectors)`` inside ``E_{p,i}`` at point ``k``."""
    depth = E.rank
    for v in vectors:
        c = E.flag_coordinates(k, v)
        first = next((i for i, x in enumerate(c) if not x == 0), None)
        if first is None:
            continue
        depth = min(depth, first)
    return depth + 1


def section_incidence(E: ParabolicBundle, section: Sequence[Poly]) -> tuple[int, ...]:
    return tuple(incidence_index(E, k, [[s(p) for s in section]])
                 for k, p in enumerate(E.curve.points))


def induced_subbundle_weights(E: ParabolicBundle, F) -> tuple[Fraction, ...]:
    """Weight of the deepest flag step containing the fiber of ``F`` at each point.

    ``F`` is a :class:`SubbundleData` or a per-point list of fiber spanning sets.
    """
    if isinstance(F, SubbundleData):
        inc = section_incidence(E, F.section)
    else:
        inc = [incidence_index(E, k, vecs) for k, vecs in enumerate(F)]
    return tuple(E.weights[k][i - 1] for k, i in enumerate(inc))


def section_degree(E: ParabolicBundle, section: Sequence[Poly]) -> int:
    """Largest ``e`` with ``section`` a section of ``E(-e)``.

    For a section without common finite zeros this is the degree of the line
    subbundle it spans (it then also does not vanish at infinity).
    """
    return min(d - s.degree for d, s in zip(E.splitting, section) if not s.is_zero())


# ---------------------------------------------------------------------------
# section spaces of twisted endomorphisms


def zero_pattern(src_weights, tgt_weights, mode: str) -> set[tuple[int, int]]:
    """Entries ``(a, c)`` of the flag-basis value that the weight rule kills.

    Rule: ``alpha_i > alpha'_j`` (``>=`` in strong mode) forces
    ``Phi(E_i)`` into ``E'_{j+1}``; in the flag basis that zeroes rows
    ``a <= j`` of columns ``c >= i`` (all 1-based).
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    n, m = len(src_weights), len(tgt_weights)
    out = set()
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            a_i, b_j = src_weights[i - 1], tgt_weights[j - 1]
            hit = a_i > b_j if mode == PARABOLIC else a_i >= b_j
            if hit:
                for a in range(1, j + 1):
                    for c in range(i, n + 1):
                        out.add((a - 1, c - 1))
    return out


def endo_caps(E: ParabolicBundle, k: int) -> list[list[int]]:
    d = E.splitting
    return [[d[i] - d[j] + k for j in range(E.rank)] for i in range(E.rank)]


def unknowns_for(caps) -> list[tuple[int, int, int]]:
    """Monomial coordinates ``(i, j, power)`` of a capped polynomial matrix."""
    out = []
    for i, row in enumerate(caps):
        for j, c in enumerate(row):
            for t in range(c + 1):
                out.append((i, j, t))
    return out


def flag_condition_rows(E: ParabolicBundle, unknowns, mode: str) -> list[list[Fraction]]:
    rows = []
    for k, p in enumerate(E.curve.points):
        F = E.flags[k]
        Finv = E.flag_inverse(k)
        w = E.weights[k]
        powers = {}
        for a, c in sorted(zero_pattern(w, w, mode)):
            row = []
            for (i, j, t) in unknowns:
                if t not in powers:
                    powers[t] = p ** t
                row.append(powers[t] * Finv[a][i] * F[j][c])
            rows.append(row)
    return rows


def matrix_from_vector(vec, unknowns, n: int, caps=None) -> PolyMatrix:
    coeffs = [[{} for _ in range(n)] for _ in range(n)]
    for x, (i, j, t) in zip(vec, unknowns):
        if x != 0:
            coeffs[i][j][t] = x
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            d = coeffs[i][j]
            top = max(d) if d else -1
            row.append(Poly([d.get(t, 0) for t in range(top + 1)]))
        rows.append(row)
    return PolyMatrix.from_rows(rows, caps)


def vector_from_matrix(M: PolyMatrix, unknowns) -> list[Fraction]:
    return [M[i, j].coeff(t) for (i, j, t) in unknowns]


@dataclass(frozen=True)
class HiggsField:
    """Twisted endomorphism ``E -> E (x) O(twist)``; ``twist = r - 2`` for Higgs fields."""

    matrix: PolyMatrix
    bundle: ParabolicBundle
    mode: str
    twist: int

    def scaled(self, t) -> HiggsField:
        return HiggsField(self.matrix * as_rational(t), self.bundle, self.mode, self.twist)

    def __add__(self, other: HiggsField) -> HiggsField:
        return HiggsField(self.matrix + other.matrix, self.bundle, self.mode, self.twist)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def respects_caps(self) -> bool:
        caps = endo_caps(self.bundle, self.twist)
        return all(self.matrix[i, j].is_zero() or self.matrix[i, j].degree <= caps[i][j]
                   for i in range(self.bundle.rank) for j in range(self.bundle.rank))

    def flag_values(self, k: int) -> list[list[Fraction]]:
        """Value at marked point ``k`` written in the flag basis."""
        E = self.bundle
        p = E.curve.points[k]
        V = self.matrix.evaluate(p)
        F = E.flags[k]
        Finv = E.flag_inverse(k)
        n = E.rank
        VF = [[sum((V[i][l] * F[l][c] for l in range(n)), Fraction(0)) for c in range(n)]
              for i in range(n)]
        return [[sum((Finv[a][i] * VF[i][c] for i in range(n)), Fraction(0)) for c in range(n)]
                for a in range(n)]

    def satisfies_mode(self, mode: str | None = None) -> bool:
        mode = mode or self.mode
        E = self.bundle
        for k in range(E.r):
            G = self.flag_values(k)
            if any(G[a][c] != 0 for a, c in zero_pattern(E.weights[k], E.weights[k], mode)):
                return False
        return True


@dataclass(frozen=True)
class SectionSpace:
    basis: tuple[HiggsField, ...]
    mode: str
    bundle: ParabolicBundle
    twist: int
    pairing: object = None

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def combine(self, coeffs: Sequence) -> HiggsField:
        n = self.bundle.rank
        M = PolyMatrix.zeros(n)
        for c, phi in zip(coeffs, self.basis):
            c = as_rational(c)
            if c:
                M = M + phi.matrix * c
        caps = endo_caps(self.bundle, self.twist)
        return HiggsField(M.with_caps(caps), self.bundle, self.mode, self.twist)

    def coordinates(self, phi: HiggsField) -> list[Fraction] | None:
        """Coefficients of ``phi`` in the basis, or None when outside the span."""
        unk = unknowns_for(endo_caps(self.bundle, self.twist))
        if any(not phi.matrix[i, j].is_zero() and phi.matrix[i, j].degree > c for (i, j), c in _cap_items(self.bundle, self.twist)):
            return None
        if not self.basis:
            return [] if phi.is_zero() else None
        cols = [vector_from_matrix(b.matrix, unk) for b in self.basis]
        A = [[col[r] for col in cols] for r in range(len(unk))]
        return solve_rational(A, vector_from_matrix(phi.matrix, unk))

    def contains(self, phi: HiggsField) -> bool:
        return self.coordinates(phi) is not None


def _cap_items(E, k):
    caps = endo_caps(E, k)
    return [((i, j), caps[i][j]) for i in range(E.rank) for j in range(E.rank)]


def endomorphism_space(E: ParabolicBundle, k: int, mode: str,
                       extra_rows: Callable | None = None, pairing=None) -> SectionSpace:
    """Kernel of the flag conditions (plus ``extra_rows(unknowns)``) on ``End(E)(k)``."""
    if E.degree_shift:
        raise ValueError("section spaces need a split bundle without degree shift")
    caps = endo_caps(E, k)
    unk = unknowns_for(caps)
    rows = flag_condition_rows(E, unk, mode)
    if extra_rows is not None:
        rows.extend(extra_rows(unk))
    basis = kernel_basis(rows, len(unk)) if unk else []
    n = E.rank
    fields = tuple(HiggsField(matrix_from_vector(v, unk, n, caps), E, mode, k) for v in basis)
    return SectionSpace(fields, mode, E, k, pairing)


def hom_section_space(E: ParabolicBundle, k: int, mode: str) -> SectionSpace:
    """(Strongly) parabolic sections of ``End(E) (x) O(k)``."""
    return endomorphism_space(E, k, mode)


# ---------------------------------------------------------------------------
# duals and tensor products (Maruyama-Yokogawa weights with explicit carry)


def dual_structure(E: ParabolicBundle) -> ParabolicBundle:
    """Parabolic dual.

    A graded piece of weight ``a > 0`` dualizes to weight ``1 - a`` and lowers
    the underlying degree by one; weight 0 stays 0.  The piece dual to flag
    column ``f_i`` is represented by the dual-basis vector ``g_i``.
    """
    n = E.rank
    flags, weights = [], []
    shift = -E.degree_shift
    for k in range(E.r):
        Finv = E.flag_inverse(k)
        pieces = []
        for i, a in enumerate(E.weights[k]):
            w = Fraction(0) if a == 0 else 1 - a
            if a != 0:
                shift -= 1
            # reversed coordinates match the reversed splitting
            pieces.append((w, tuple(reversed(Finv[i]))))
        pieces.sort(key=lambda x: x[0])
        weights.append(tuple(w for w, _ in pieces))
        flags.append(tuple(tuple(pieces[c][1][row] for c in range(n)) for row in range(n)))
    return ParabolicBundle(E.curve, tuple(-d for d in reversed(E.splitting)),
                           tuple(flags), tuple(weights), shift)


def tensor_structure(E: ParabolicBundle, E2: ParabolicBundle) -> ParabolicBundle:
    """Parabolic tensor product; weights add, and a sum reaching 1 carries.

    Equal weights may occur, in which case the result has repeated weights
    (flag steps of equal weight would merge into a partial flag).
    """
    if E.curve != E2.curve:
        raise ValueError("tensor product needs bundles on the same marked curve")
    n, m = E.rank, E2.rank
    degs = [(E.splitting[i] + E2.splitting[j], i * m + j) for i in range(n) for j in range(m)]
    degs.sort(key=lambda x: -x[0])
    order = [idx for _, idx in degs]
    shift = m * E.degree_shift + n * E2.degree_shift
    flags, weights = [], []
    for k in range(E.r):
        F, G = E.flags[k], E2.flags[k]
        pieces = []
        for a in range(n):
            for b in range(m):
                w = E.weights[k][a] + E2.weights[k][b]
                if w >= 1:
                    w -= 1
                    shift += 1
                vec = [F[i][a] * G[j][b] for i in range(n) for j in range(m)]
                pieces.append((w, [vec[idx] for idx in order]))
        pieces.sort(key=lambda x: x[0])
        weights.append(tuple(w for w, _ in pieces))
        N = n * m
        flags.append(tuple(tuple(pieces[c][1][row] for c in range(N)) for row in range(N)))
    return ParabolicBundle(E.curve, tuple(d for d, _ in degs), tuple(flags), tuple(weights), shift)


def generic_flags(n: int, r: int, rng: random.Random, bound: int = 5) -> list[Matrix]:
    """Random integer flags, one per marked point, pairwise in general position."""
    out = []
    while len(out) < r:
        M = [[Fraction(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)]
        if mat_det(M) != 0 and all(flags_transverse(M, F) for F in out):
            out.append(_freeze(M))
    return out


def flags_transverse(F1, F2) -> bool:
    """Every step of ``F1`` meets the complementary step of ``F2`` trivially."""
    n = len(F1)
    for k in range(1, n):
        cols = [[F1[i][c] for i in range(n)] for c in range(n - k, n)]
        cols += [[F2[i][c] for i in range(n)] for c in range(k, n)]
        if mat_det(cols) == 0:
            return False
    return True


__all__ = [
    "MarkedCurve", "ParabolicBundle", "SubbundleData", "HiggsField", "SectionSpace",
    "PARABOLIC", "STRONG", "make_bundle", "validate", "parabolic_degree", "parabolic_slope",
    "induced_subbundle_weights", "hom_section_space", "dual_structure", "tensor_structure",
    "generic_flags", "ONE", "ZERO",
]
