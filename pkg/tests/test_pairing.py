import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import M, Z, group_setup, sp2_bundle
from oracles import compatible_space_dimension
from parhiggs.core import Poly, PolyMatrix, char_poly
from parhiggs.pairing import (ANTISYMMETRIC, SYMMETRIC, PairingForm, adapted_basis,
                              check_pairing_iso, compatibility_check, compatible_higgs_space,
                              isotropic_check, isotropic_generic_flags, standard_form)
from parhiggs.parabolic import PARABOLIC, STRONG, SubbundleData, make_bundle

Q = Fraction
SP2 = standard_form(2, ANTISYMMETRIC)
ID = ((1, 0), (0, 1))


def test_check_pairing_examples():
    E = make_bundle([0], [0, 0], [ID], [Q(1, 4), Q(3, 4)])
    assert check_pairing_iso(E, SP2) == []
    bad = PairingForm(M([[0, Z], [-Z, 0]]), ANTISYMMETRIC)
    E1 = make_bundle([], [0, 0], [], [])
    problems = check_pairing_iso(E1, PairingForm(bad.omega, ANTISYMMETRIC, 2))
    assert any("vanishes at z = 0" in p for p in problems)
    E2 = make_bundle([0], [1, -1], [((1, 1), (0, 1))], [0, Q(1, 2)])
    assert check_pairing_iso(E2, SP2) == []


def test_check_pairing_detects_symmetry_and_weights():
    E = make_bundle([0], [0, 0], [ID], [Q(1, 4), Q(3, 4)])
    sym = PairingForm(M([[0, 1], [1, 0]]), ANTISYMMETRIC)
    assert check_pairing_iso(E, sym)
    E = make_bundle([0], [0, 0], [ID], [Q(1, 4), Q(1, 2)])
    assert any("weight" in p for p in check_pairing_iso(E, SP2))


def test_compatible_dimensions_r5():
    E, P = sp2_bundle(5, seed=1)
    Wst = compatible_higgs_space(E, P, STRONG)
    W = compatible_higgs_space(E, P, PARABOLIC)
    assert Wst.dimension == compatible_space_dimension(E, P.omega, "strong") == 2
    assert W.dimension == compatible_space_dimension(E, P.omega, "parabolic") == 7


def test_compatible_dimension_r3_is_zero():
    E, P = sp2_bundle(3, seed=2)
    assert compatible_higgs_space(E, P, STRONG).dimension == 0
    assert compatible_space_dimension(E, P.omega, "strong") == 0


@pytest.mark.parametrize("family,n,r", [("Sp", 4, 3), ("SO", 3, 4), ("SO", 4, 3)])
def test_compatible_dimensions_match_oracle_higher_rank(family, n, r):
    E, P = group_setup(family, n, r, seed=5)
    assert check_pairing_iso(E, P) == []
    for mode in ("strong", "parabolic"):
        assert compatible_higgs_space(E, P, mode).dimension == compatible_space_dimension(E, P.omega, mode)


def test_compatibility_check_examples():
    a, b, c = Z + 1, Poly.const(3), Z * Z
    res = compatibility_check(M([[a, b], [c, -a]]), SP2)
    assert res["categorical"] and res["matrix"] and res["agree"]
    res = compatibility_check(PolyMatrix.identity(2), SP2)
    assert not res["categorical"] and not res["matrix"]
    B = PairingForm(PolyMatrix.identity(3), SYMMETRIC)
    f = Z - 2
    res = compatibility_check(M([[0, f, 1], [-f, 0, Z], [-1, -Z, 0]]), B)
    assert res["compatible"]


@settings(max_examples=30, deadline=None)
@given(st.lists(st.fractions(-3, 3, max_denominator=3), min_size=8, max_size=8),
       st.sampled_from([ANTISYMMETRIC, SYMMETRIC]))
def test_compatibility_formulations_agree(cs, sym):
    A = M([[Poly(cs[0:2]), Poly(cs[2:4])], [Poly(cs[4:6]), Poly(cs[6:8])]])
    res = compatibility_check(A, standard_form(2, sym))
    assert res["agree"]


def test_isotropic_examples():
    F = SubbundleData(0, (Poly.const(1), Z), (1,), (0,))
    assert isotropic_check(F, SP2)
    I2 = PairingForm(PolyMatrix.identity(2), SYMMETRIC)
    assert not isotropic_check((Poly.const(3), Poly.const(4)), I2)
    H = PairingForm(M([[0, 1], [1, 0]]), SYMMETRIC)
    assert isotropic_check((Poly.const(1), Poly()), H)


@pytest.mark.parametrize("n,sym", [(2, ANTISYMMETRIC), (4, ANTISYMMETRIC), (6, ANTISYMMETRIC),
                                   (3, SYMMETRIC), (4, SYMMETRIC), (5, SYMMETRIC)])
def test_adapted_basis_pairs_opposite_columns(n, sym):
    W = standard_form(n, sym).omega.evaluate(0)
    cols = adapted_basis(W, sym)
    for a in range(n):
        for b in range(n):
            val = sum(cols[a][i] * W[i][j] * cols[b][j] for i in range(n) for j in range(n))
            if a + b != n - 1:
                assert val == 0
            else:
                assert val != 0


@pytest.mark.parametrize("family,n", [("Sp", 2), ("Sp", 4), ("SO", 3), ("SO", 4), ("SO", 5)])
def test_generic_isotropic_flags_pass_iso_check(family, n):
    E, P = group_setup(family, n, 4, seed=9)
    assert check_pairing_iso(E, P) == []


@pytest.mark.parametrize("family,n,r", [("Sp", 2, 5), ("Sp", 4, 3), ("SO", 3, 4), ("SO", 4, 3)])
def test_compatible_fields_have_even_char_poly(family, n, r):
    E, P = group_setup(family, n, r, seed=1)
    W = compatible_higgs_space(E, P, PARABOLIC)
    rng = random.Random(0)
    Wst = compatible_higgs_space(E, P, STRONG)
    for phi in list(W.basis) + [W.combine([rng.randint(-3, 3) for _ in W.basis])]:
        s = char_poly(phi.matrix)
        assert all(s[i].is_zero() for i in range(0, n, 2))
    for phi in Wst.basis:
        assert W.contains(phi)
