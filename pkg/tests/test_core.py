from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import M, P, Z
from oracles import charpoly_coeffs, det_coeffs, pfaffian_by_matchings
from parhiggs.core import (MPoly, Poly, PolyMatrix, QuadNumber, as_rational, char_poly, det,
                           kernel_basis, mat_inverse, pfaffian, poly_gcd, poly_sqrt, poly_xgcd,
                           rank, rational_roots, rref, solve_rational, squarefree_part)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.lists(rationals, max_size=4).map(Poly)


def poly_matrices(n, max_deg=2):
    entry = st.lists(rationals, max_size=max_deg + 1).map(Poly)
    return st.lists(st.lists(entry, min_size=n, max_size=n), min_size=n, max_size=n).map(M)


def antisymmetric(n):
    entry = st.lists(rationals, max_size=2).map(Poly)
    return st.lists(entry, min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2).map(
        lambda es: _antisym(n, es))


def _antisym(n, es):
    rows = [[Poly()] * n for _ in range(n)]
    it = iter(es)
    for i in range(n):
        for j in range(i + 1, n):
            e = next(it)
            rows[i][j] = e
            rows[j][i] = -e
    return M(rows)


# --- rationals and polynomials ---------------------------------------------


def test_as_rational_parses_strings():
    assert as_rational("3/6") == Fraction(1, 2)
    assert as_rational(4) == 4
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_gcd_examples():
    assert poly_gcd(Z * Z - 1, Z - 1) == Z - 1
    assert poly_gcd(Poly(), Poly()).is_zero()
    assert poly_gcd(Z ** 3 - Z, Z * Z) == Z


def test_poly_arithmetic_basics():
    p = (Z - 1) * (Z + 2)
    assert p.coeffs == (Fraction(-2), Fraction(1), Fraction(1))
    assert p(1) == 0 and p(-2) == 0
    q, r = divmod(Z ** 3 + 1, Z + 1)
    assert r.is_zero() and q == Z * Z - Z + 1
    assert Poly().degree == -1
    assert Poly.from_roots([1, 2]) == Z * Z - 3 * Z + 2


def test_xgcd_bezout():
    p, q = (Z - 1) * (Z + 3), (Z - 1) * (Z - 5)
    g, s, t = poly_xgcd(p, q)
    assert g == Z - 1
    assert s * p + t * q == g


def test_sqrt_roots_squarefree():
    assert poly_sqrt((Z - 2) ** 2 * 4) in (2 * (Z - 2), -2 * (Z - 2))
    assert poly_sqrt(Z) is None
    assert rational_roots((Z - Fraction(1, 2)) * (Z * Z + 1) * (Z + 3)) == [-3, Fraction(1, 2)]
    assert squarefree_part((Z - 1) ** 3 * (Z + 1)) == (Z - 1) * (Z + 1)


def test_quadratic_numbers():
    r2 = QuadNumber(0, 1, 2)
    assert r2 * r2 == 2
    x = QuadNumber(1, 1, 2)
    assert (x / x) == 1
    assert x * x.conjugate() == x.norm() == -1
    # gcd over Q(sqrt 2): (z - sqrt2)(z + 1) and (z - sqrt2)(z - 3)
    a = Poly([-r2, 1]) * Poly([QuadNumber(1, 0, 2), 1])
    b = Poly([-r2, 1]) * Poly([QuadNumber(-3, 0, 2), 1])
    assert poly_gcd(a, b) == Poly([-r2, QuadNumber(1, 0, 2)])


@given(polys, polys)
def test_divmod_identity(a, b):
    if b.is_zero():
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(polys, polys)
def test_gcd_divides_both(a, b):
    g = poly_gcd(a, b)
    if g.is_zero():
        assert a.is_zero() and b.is_zero()
        return
    assert (a % g).is_zero() and (b % g).is_zero()


# --- rational linear algebra -----------------------------------------------


def test_kernel_examples():
    assert kernel_basis([[1, 0], [0, 1]], 2) == []
    assert len(kernel_basis([[0, 0, 0], [0, 0, 0]], 3)) == 3
    (v,) = kernel_basis([[1, 1, 0], [0, 0, 1]], 3)
    assert v == (1, -1, 0)


@given(st.lists(st.lists(rationals, min_size=4, max_size=4), min_size=1, max_size=4))
def test_kernel_annihilates(rows):
    K = kernel_basis(rows, 4)
    assert len(K) + rank(rows, 4) == 4
    for v in K:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in rows)


def test_rref_solve_inverse():
    R, piv = rref([[2, 4], [1, 3]], 2)
    assert piv == [0, 1]
    assert solve_rational([[1, 1], [1, -1]], [3, 1]) == [2, 1]
    assert solve_rational([[1, 1], [1, 1]], [1, 2]) is None
    inv = mat_inverse([[1, 2], [3, 4]])
    assert inv == [[-2, 1], [Fraction(3, 2), Fraction(-1, 2)]]
    assert mat_inverse([[1, 2], [2, 4]]) is None


# --- characteristic polynomial, determinant, Pfaffian ----------------------


def test_char_poly_examples():
    assert char_poly(M([[0, 1], [Z, 0]])) == [Poly(), -Z]
    assert all(s.is_zero() for s in char_poly(PolyMatrix.zeros(3)))
    assert all(s.is_zero() for s in char_poly(M([[0, Z], [0, 0]])))


def test_pfaffian_examples():
    a = Z + 2
    assert pfaffian(M([[0, a], [-a, 0]])) == a
    J = [[0] * 4 for _ in range(4)]
    J[0][1], J[1][0], J[2][3], J[3][2] = 1, -1, 1, -1
    assert pfaffian(M(J)) == 1
    vals = {(0, 1): P(1, 1), (0, 2): P(2), (0, 3): P(0, 3), (1, 2): P(-1), (1, 3): P(5), (2, 3): P(0, 0, 1)}
    rows = [[Poly()] * 4 for _ in range(4)]
    for (i, j), v in vals.items():
        rows[i][j], rows[j][i] = v, -v
    expected = vals[0, 1] * vals[2, 3] - vals[0, 2] * vals[1, 3] + vals[0, 3] * vals[1, 2]
    assert pfaffian(M(rows)) == expected


@settings(max_examples=25, deadline=None)
@given(poly_matrices(3))
def test_char_poly_matches_sympy(A):
    assert [list(s.coeffs) for s in char_poly(A)] == charpoly_coeffs(A)


@settings(max_examples=25, deadline=None)
@given(poly_matrices(3))
def test_det_matches_sympy(A):
    assert list(det(A).coeffs) == det_coeffs(A)


@settings(max_examples=25, deadline=None)
@given(poly_matrices(3), rationals)
def test_char_poly_homogeneity(A, t):
    base = char_poly(A)
    scaled = char_poly(A * t)
    assert all(s == b * t ** (i + 1) for i, (s, b) in enumerate(zip(scaled, base)))


@settings(max_examples=20, deadline=None)
@given(antisymmetric(4))
def test_pfaffian_squares_to_det(A):
    pf = pfaffian(A)
    assert pf * pf == det(A)
    assert list(pf.coeffs) == pfaffian_by_matchings(A)


def test_pfaffian_six_by_six_against_matchings():
    rows = [[Poly()] * 6 for _ in range(6)]
    k = 1
    for i in range(6):
        for j in range(i + 1, 6):
            rows[i][j] = P(k, (-1) ** k)
            rows[j][i] = -rows[i][j]
            k += 1
    A = M(rows)
    assert list(pfaffian(A).coeffs) == pfaffian_by_matchings(A)
    assert pfaffian(A) ** 2 == det(A)


def test_matrix_ops_and_caps():
    A = M([[1, Z], [0, 2]])
    assert (A @ PolyMatrix.identity(2)) == A
    assert A.T[1, 0] == Z
    assert A.evaluate(3) == [[1, 3], [0, 2]]
    capped = A.with_caps([[0, 0], [0, 0]])
    assert not capped.respects_caps()
    assert A.with_caps([[0, 1], [-5, 0]]).respects_caps()


def test_mpoly_split_last():
    c, zz = MPoly.var(2, 0), MPoly.var(2, 1)
    f = c * c * zz + c * 3
    parts = f.split_last()
    assert parts[0] == MPoly.var(1, 0) * 3
    assert parts[1] == MPoly.var(1, 0) * MPoly.var(1, 0)
    assert f.evaluate((2, 5)) == 26
