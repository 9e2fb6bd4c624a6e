"""Symplectic and orthogonal structures and their compatible Higgs fields."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import (Poly, PolyMatrix, det, is_antisymmetric, is_symmetric, kernel_basis,
                   mat_mul, rational_roots)
from .parabolic import (PARABOLIC, HiggsField, ParabolicBundle, SectionSpace, SubbundleData,
                        dual_structure, endomorphism_space, flags_transverse, zero_pattern)

ANTISYMMETRIC = "antisymmetric"
SYMMETRIC = "symmetric"


@dataclass(frozen=True)
class PairingForm:
    """Bilinear form ``E (x) E -> L`` with ``deg L = target_degree`` and trivial weights."""

    omega: PolyMatrix
    symmetry: str
    target_degree: int = 0

    @property
    def rank(self) -> int:
        return self.omega.rows

    def value(self, x, y, z=None):
        """``x^T omega y`` as a polynomial, or as a number when ``z`` is given."""
        n = self.rank
        if z is None:
            acc = Poly()
            for i in range(n):
                for j in range(n):
                    if self.omega[i, j]:
                        acc = acc + x[i] * self.omega[i, j] * y[j]
            return acc
        W = self.omega.evaluate(z)
        return sum((x[i] * W[i][j] * y[j] for i in range(n) for j in range(n)), Fraction(0))

    def group(self) -> str:
        n = self.rank
        if self.symmetry == ANTISYMMETRIC:
            return f"Sp({n})"
        return f"SO({n})"


def standard_form(n: int, symmetry: str, target_degree: int = 0) -> PairingForm:
    """``[[0, I], [-I, 0]]`` for symplectic, the split anti-diagonal form otherwise."""
    rows = [[0] * n for _ in range(n)]
    if symmetry == ANTISYMMETRIC:
        if n % 2:
            raise ValueError("a symplectic form needs even rank")
        m = n // 2
        for i in range(m):
            rows[i][m + i] = 1
            rows[m + i][i] = -1
    elif symmetry == SYMMETRIC:
        for i in range(n):
            rows[i][n - 1 - i] = 1
    else:
        raise ValueError(f"unknown symmetry {symmetry!r}")
    return PairingForm(PolyMatrix.from_rows(rows), symmetry, target_degree)


def form_caps(E: ParabolicBundle, P: PairingForm) -> list[list[int]]:
    d = E.splitting
    return [[P.target_degree - d[i] - d[j] for j in range(E.rank)] for i in range(E.rank)]


def check_pairing_iso(E: ParabolicBundle, P: PairingForm) -> list[str]:
    """Failures preventing ``E -> L (x) E^v`` from being a parabolic isomorphism."""
    n = E.rank
    out = []
    if P.omega.shape != (n, n):
        return [f"omega has shape {P.omega.shape}, bundle rank is {n}"]
    if P.symmetry == ANTISYMMETRIC and not is_antisymmetric(P.omega):
        out.append("omega is not antisymmetric")
    if P.symmetry == SYMMETRIC and not is_symmetric(P.omega):
        out.append("omega is not symmetric")
    if P.symmetry not in (ANTISYMMETRIC, SYMMETRIC):
        out.append(f"unknown symmetry tag {P.symmetry!r}")
    if n * P.target_degree != 2 * E.degree:
        out.append(f"rank*target_degree = {n * P.target_degree} but 2*deg(E) = {2 * E.degree}")
    caps = form_caps(E, P)
    for i in range(n):
        for j in range(n):
            if not P.omega[i, j].is_zero() and P.omega[i, j].degree > caps[i][j]:
                out.append(f"omega[{i}][{j}] exceeds degree cap {caps[i][j]}")
    D = det(P.omega)
    if D.is_zero():
        out.append("det(omega) vanishes identically")
    elif D.degree > 0:
        roots = rational_roots(D)
        if roots:
            out.append("det vanishes at z = " + ", ".join(str(x) for x in roots))
        else:
            out.append(f"det(omega) = {D} is not constant")
    if out:
        return out
    dual = dual_structure(E)
    for k, p in enumerate(E.curve.points):
        F = E.flags[k]
        W = P.omega.evaluate(p)
        G = mat_mul(mat_mul([list(c) for c in zip(*F)], W), F)
        # E_{p,i} must be the orthogonal complement of E_{p,n+2-i}
        if any(G[a][b] != 0 for a in range(n) for b in range(n) if a + b >= n):
            out.append(f"point {k}: flag is not self-dual for omega")
        if tuple(dual.weights[k]) != tuple(E.weights[k]):
            out.append(f"point {k}: weights {list(map(str, E.weights[k]))} differ from dual "
                       f"weights {list(map(str, dual.weights[k]))}")
    return out


def compatibility_rows(P: PairingForm, unknowns) -> list[list[Fraction]]:
    """Linear conditions for ``Phi^T omega + omega Phi = 0`` on monomial coordinates."""
    n = P.rank
    rows: dict[tuple[int, int, int], list[Fraction]] = {}
    N = len(unknowns)
    for col, (i, j, t) in enumerate(unknowns):
        # Phi = z^t E_ij:  (E_ji omega)[j][b] = omega[i][b],  (omega E_ij)[a][j] = omega[a][i]
        for b in range(n):
            for s, c in enumerate(P.omega[i, b].coeffs):
                if c:
                    rows.setdefault((j, b, s + t), [Fraction(0)] * N)[col] += c
        for a in range(n):
            for s, c in enumerate(P.omega[a, i].coeffs):
                if c:
                    rows.setdefault((a, j, s + t), [Fraction(0)] * N)[col] += c
    return [rows[key] for key in sorted(rows)]


def compatible_higgs_space(E: ParabolicBundle, P: PairingForm, mode: str,
                           twist: int | None = None) -> SectionSpace:
    """``W_E`` (parabolic) or ``W_{E,st}`` (strong): compatible fields in ``End(E) (x) K(D)``."""
    k = E.curve.kd_degree if twist is None else twist
    return endomorphism_space(E, k, mode, lambda unk: compatibility_rows(P, unk), pairing=P)


def compatibility_check(phi: HiggsField, P: PairingForm) -> dict:
    """Both readings of compatibility, which must agree.

    ``categorical``: ``(Id (x) Phi^v) o phi~ == (phi~ (x) Id) o Phi`` with the
    dual Higgs field ``Phi^v = -Phi^T`` acting on ``E^v``;
    ``matrix``: ``Phi^T omega + omega Phi == 0``.
    """
    Phi = phi.matrix if isinstance(phi, HiggsField) else phi
    dual_field = -Phi.T
    lhs = dual_field @ P.omega
    rhs = P.omega @ Phi
    categorical = lhs == rhs
    matrix = (Phi.T @ P.omega + P.omega @ Phi).is_zero()
    return {"categorical": categorical, "matrix": matrix, "agree": categorical == matrix,
            "compatible": categorical and matrix}


def isotropic_check(F, P: PairingForm) -> bool:
    """True iff the pairing vanishes identically on the line spanned by ``F``."""
    s = F.section if isinstance(F, SubbundleData) else tuple(F)
    return P.value(s, s).is_zero()


def fiber_condition_count(E: ParabolicBundle, P: PairingForm, k: int,
                          mode: str = PARABOLIC) -> tuple[int, int]:
    """``(dim g_p, dim g_p - dim(g_p cap b_p))`` at marked point ``k``.

    ``g_p`` is the Lie algebra of ``omega(p)``, ``b_p`` the endomorphisms
    allowed by the weight rule in ``mode``.
    """
    n = E.rank
    W = P.omega.evaluate(E.curve.points[k])
    unk = [(i, j) for i in range(n) for j in range(n)]
    lie = []
    for a in range(n):
        for b in range(n):
            lie.append([(W[i][b] if a == j else 0) + (W[a][i] if j == b else 0) for (i, j) in unk])
    dim_g = len(kernel_basis(lie, n * n))
    F = E.flags[k]
    Finv = E.flag_inverse(k)
    flag = [[Finv[a][i] * F[j][c] for (i, j) in unk]
            for a, c in sorted(zero_pattern(E.weights[k], E.weights[k], mode))]
    dim_b = len(kernel_basis(lie + flag, n * n))
    return dim_g, dim_g - dim_b


# ---------------------------------------------------------------------------
# generic isotropic flags


def _bil(W, x, y):
    return sum((x[i] * W[i][j] * y[j] for i in range(len(x)) for j in range(len(y))), Fraction(0))


def _axpy(a, x, y):
    return [a * xi + yi for xi, yi in zip(x, y)]


def _small_vectors(n: int):
    yield from ([Fraction(int(i == j)) for j in range(n)] for i in range(n))
    for i in range(n):
        for j in range(i + 1, n):
            for s in (1, -1):
                v = [Fraction(0)] * n
                v[i], v[j] = Fraction(1), Fraction(s)
                yield v


def adapted_basis(W, symmetry: str) -> list[list[Fraction]]:
    """Columns ``v_1..v_n`` with ``W(v_a, v_b) != 0`` only when ``a + b = n + 1``.

    For a symmetric form this needs rational isotropic vectors; ValueError if
    the small-vector search finds none.
    """
    n = len(W)
    rest = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    es, fs = [], []
    middle = []
    while rest:
        if symmetry == ANTISYMMETRIC:
            e = rest[0]
            idx = next((i for i in range(1, len(rest)) if _bil(W, e, rest[i]) != 0), None)
            if idx is None:
                raise ValueError("degenerate antisymmetric form")
            f = [x / _bil(W, e, rest[idx]) for x in rest[idx]]
            others = [v for i, v in enumerate(rest) if i not in (0, idx)]
            rest = [_axpy(-_bil(W, v, f), e, _axpy(_bil(W, v, e), f, v)) for v in others]
        else:
            if len(rest) == 1:
                if _bil(W, rest[0], rest[0]) == 0:
                    raise ValueError("degenerate symmetric form")
                middle = [rest[0]]
                break
            e = _find_isotropic(W, rest)
            if e is None:
                raise ValueError("no rational isotropic vector for the symmetric form")
            f = next((v for v in rest if _bil(W, e, v) != 0), None)
            if f is None:
                raise ValueError("degenerate symmetric form")
            f = [x / _bil(W, e, f) for x in f]
            f = _axpy(-_bil(W, f, f) / 2, e, f)
            rest = [_axpy(-_bil(W, v, e), f, _axpy(-_bil(W, v, f), e, v)) for v in rest]
            rest = _independent([v for v in rest if any(v)], limit=len(rest) - 2)
        es.append(e)
        fs.append(f)
    cols = es + middle + fs[::-1]
    return cols


def _independent(vecs, limit=None):
    from .core import rref
    out = []
    for v in vecs:
        if len(rref(out + [v])[1]) > len(out):
            out.append(v)
        if limit is not None and len(out) == limit:
            break
    return out


def _find_isotropic(W, space):
    n = len(space)
    for coeffs in _small_vectors(n):
        v = [sum((c * space[i][k] for i, c in enumerate(coeffs)), Fraction(0))
             for k in range(len(space[0]))]
        if any(v) and _bil(W, v, v) == 0:
            return v
    # solve the quadric on a 2-plane: q(x + t y) = 0 for rational t
    from .core import rational_roots
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            x, y = space[i], space[j]
            a, b, c = _bil(W, y, y), 2 * _bil(W, x, y), _bil(W, x, x)
            for t in rational_roots(Poly([c, b, a])):
                return _axpy(t, y, x)
    return None


def random_group_element(W, symmetry: str, rng: random.Random, steps: int = 4, bound: int = 3):
    """Product of random transvections (symplectic) or reflection pairs (orthogonal)."""
    n = len(W)
    g = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if symmetry == ANTISYMMETRIC:
            x = [Fraction(rng.randint(-bound, bound)) for _ in range(n)]
            c = Fraction(rng.choice([-2, -1, 1, 2]))
            xW = [sum((x[i] * W[i][j] for i in range(n)), Fraction(0)) for j in range(n)]
            T = [[Fraction(int(i == j)) + c * x[i] * xW[j] for j in range(n)] for i in range(n)]
            g = mat_mul(T, g)
        else:
            for _ in range(2):
                while True:
                    x = [Fraction(rng.randint(-bound, bound)) for _ in range(n)]
                    q = _bil(W, x, x)
                    if q != 0:
                        break
                xW = [sum((x[i] * W[i][j] for i in range(n)), Fraction(0)) for j in range(n)]
                R = [[Fraction(int(i == j)) - 2 * x[i] * xW[j] / q for j in range(n)]
                     for i in range(n)]
                g = mat_mul(R, g)
    return g


def isotropic_generic_flags(P: PairingForm, points: Sequence, rng: random.Random):
    """Random flags, self-dual for ``omega(p)`` at each point and pairwise transverse when possible."""
    flags = []
    # SO(2) fixes both isotropic lines, so its flags can never be transverse
    tries = 1 if (P.symmetry == SYMMETRIC and P.rank == 2) else 200
    for p in points:
        W = P.omega.evaluate(p)
        cols = adapted_basis(W, P.symmetry)
        Q = [[cols[c][r] for c in range(len(cols))] for r in range(len(cols))]
        for attempt in range(tries):
            g = random_group_element(W, P.symmetry, rng, steps=4 + attempt // 20)
            F = tuple(tuple(x) for x in mat_mul(g, Q))
            if all(flags_transverse(F, G) for G in flags):
                break
        flags.append(F)
    return flags
