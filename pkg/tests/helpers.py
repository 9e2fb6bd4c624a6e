import random
from fractions import Fraction

from parhiggs import (ANTISYMMETRIC, SYMMETRIC, Poly, PolyMatrix, isotropic_generic_flags,
                      make_bundle, standard_form)
from parhiggs.core import mat_inverse

Z = Poly.z()


def P(*coeffs):
    return Poly([Fraction(c) for c in coeffs])


def M(rows):
    return PolyMatrix.from_rows(rows)


def isotropic_weights(n):
    return [Fraction(2 * i - 1, 2 * n) for i in range(1, n + 1)]


def group_setup(family, n, r, seed=0, splitting=None):
    """Bundle with generic isotropic flags and the standard form of the given group."""
    sym = ANTISYMMETRIC if family == "Sp" else SYMMETRIC
    form = standard_form(n, sym)
    pts = list(range(r))
    E = make_bundle(pts, splitting or [0] * n, isotropic_generic_flags(form, pts, random.Random(seed)),
                    isotropic_weights(n))
    return E, form


def sp2_bundle(r, seed=0, splitting=(0, 0), weights=(Fraction(1, 4), Fraction(3, 4)), points=None):
    form = standard_form(2, ANTISYMMETRIC, sum(splitting))
    pts = list(points) if points is not None else list(range(r))
    E = make_bundle(pts, splitting, isotropic_generic_flags(form, pts, random.Random(seed)), weights)
    return E, form


def random_rational(rng, bound=3, den=3):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den))


def random_poly(rng, deg, bound=3):
    return Poly([random_rational(rng, bound) for _ in range(deg + 1)])


def random_field(rng, n, deg):
    return M([[random_poly(rng, deg) for _ in range(n)] for _ in range(n)])


def random_lie_field(rng, form, deg):
    """omega^-1 S with S symmetric (symplectic) or antisymmetric (orthogonal): lies in the Lie algebra."""
    n = form.rank
    rows = [[Poly()] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            if i == j and form.symmetry == SYMMETRIC:
                continue
            e = random_poly(rng, deg)
            rows[i][j] = e
            rows[j][i] = e if form.symmetry == ANTISYMMETRIC else -e
    W = [[Fraction(c) for c in row] for row in form.omega.evaluate(0)]
    Winv = mat_inverse(W)
    return M(Winv) @ M(rows)
