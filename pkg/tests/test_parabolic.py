import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import Z
from oracles import compatible_space_dimension
from parhiggs.core import Poly
from parhiggs.parabolic import (PARABOLIC, STRONG, MarkedCurve, SubbundleData, dual_structure,
                                flags_transverse, generic_flags, hom_section_space,
                                induced_subbundle_weights, make_bundle, parabolic_degree,
                                section_degree, section_incidence, tensor_structure, validate)

Q = Fraction
ID = ((1, 0), (0, 1))
BALANCED = (Q(1, 4), Q(3, 4))


def generic_oo(r, seed=0, weights=BALANCED):
    return make_bundle(range(r), [0, 0], generic_flags(2, r, random.Random(seed)), weights)


def test_validate_examples():
    assert validate(make_bundle([0], [0, 0], [ID], BALANCED)) == []
    bad = validate(make_bundle([0], [0, 0], [ID], [Q(3, 4), Q(1, 4)]))
    assert any("weights not increasing" in m for m in bad)
    bad = validate(make_bundle([0], [0, 0], [((1, 2), (2, 4))], BALANCED))
    assert any("flag not invertible" in m for m in bad)


def test_validate_rejects_partial_flags_and_duplicates():
    assert any("partial flag" in m for m in validate(make_bundle([0], [0, 0], [ID], [[Q(1, 2)]])))
    assert MarkedCurve((0, 0)).problems()
    assert any("non-increasing" in m for m in validate(make_bundle([], [0, 1], [], [])))


def test_parabolic_degree_examples():
    assert parabolic_degree(make_bundle([0], [0, 0], [ID], BALANCED)) == 1
    assert parabolic_degree(make_bundle([], [2, -1], [], [])) == 1
    assert parabolic_degree(make_bundle([0, 1], [0, 0], [ID, ID], [0, Q(1, 2)])) == 1


def test_induced_weights_examples():
    E = make_bundle([0], [0, 0], [ID], BALANCED)
    assert induced_subbundle_weights(E, [[(0, 1)]]) == (Q(3, 4),)
    assert induced_subbundle_weights(E, [[(1, 0)]]) == (Q(1, 4),)
    assert induced_subbundle_weights(E, [[(1, 1)]]) == (Q(1, 4),)


def test_induced_weights_monotone_in_flag_rank3():
    F = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    E = make_bundle([0], [0, 0, 0], [F], [0, Q(1, 3), Q(2, 3)])
    deep = induced_subbundle_weights(E, [[(0, 0, 1)]])
    mid = induced_subbundle_weights(E, [[(0, 0, 1), (0, 1, 0)]])
    top = induced_subbundle_weights(E, [[(0, 0, 1), (0, 1, 0), (1, 0, 0)]])
    assert deep >= mid >= top
    assert (deep, mid, top) == ((Q(2, 3),), (Q(1, 3),), (Q(0),))


def test_hom_space_dimensions_r5():
    E = generic_oo(5, seed=1)
    strong = hom_section_space(E, 3, STRONG)
    par = hom_section_space(E, 3, PARABOLIC)
    # oracle: sympy rank of the monomial-coefficient conditions
    assert strong.dimension == compatible_space_dimension(E, mode="strong") == 2
    assert par.dimension == compatible_space_dimension(E, mode="parabolic") == 11


def test_hom_space_no_points():
    E = make_bundle([], [0, 0], [], [])
    assert hom_section_space(E, 0, PARABOLIC).dimension == 4


def test_strong_trace_is_forced_to_vanish():
    # trace of a strong field is a section of O(r-2) vanishing at r points
    E = generic_oo(5, seed=1)
    for phi in hom_section_space(E, 3, STRONG).basis:
        assert (phi.matrix[0, 0] + phi.matrix[1, 1]).is_zero()


@pytest.mark.parametrize("r", [3, 4, 6])
def test_strong_is_subspace_of_parabolic(r):
    E = generic_oo(r, seed=r)
    par = hom_section_space(E, r - 2, PARABOLIC)
    for phi in hom_section_space(E, r - 2, STRONG).basis:
        assert par.contains(phi)
        assert phi.satisfies_mode(STRONG)


def test_flag_basis_values_are_triangular():
    E = generic_oo(4, seed=2)
    for phi in hom_section_space(E, 2, PARABOLIC).basis:
        for k in range(E.r):
            G = phi.flag_values(k)
            assert G[0][1] == 0
    for phi in hom_section_space(E, 2, STRONG).basis:
        for k in range(E.r):
            G = phi.flag_values(k)
            assert G[0][0] == G[0][1] == G[1][1] == 0


def test_dual_examples():
    E = make_bundle([0], [0, 0], [ID], BALANCED)
    D = dual_structure(E)
    assert D.weights == (BALANCED,)
    assert parabolic_degree(E) + parabolic_degree(D) == 0
    E = make_bundle([0], [0, 0], [ID], [0, Q(1, 2)])
    D = dual_structure(E)
    assert D.weights == ((0, Q(1, 2)),)
    assert D.degree_shift == -1
    assert parabolic_degree(E) + parabolic_degree(D) == 0
    D = dual_structure(make_bundle([], [2, -1], [], []))
    assert sorted(D.splitting) == [-2, 1]


def test_tensor_rank_one_examples():
    A = make_bundle([0], [0], [((1,),)], [[Q(1, 4)]])
    B = make_bundle([0], [0], [((1,),)], [[Q(1, 2)]])
    T = tensor_structure(A, B)
    assert T.weights == ((Q(3, 4),),) and T.degree_shift == 0
    A = make_bundle([0], [0], [((1,),)], [[Q(3, 4)]])
    T = tensor_structure(A, B)
    assert T.weights == ((Q(1, 4),),) and T.degree == 1


weight_pairs = st.tuples(st.fractions(0, Q(1, 2), max_denominator=8),
                         st.fractions(Q(1, 2), Q(7, 8), max_denominator=8)).filter(lambda w: w[0] < w[1])


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6), weight_pairs, weight_pairs, st.integers(-2, 2))
def test_tensor_pardeg_additivity(seed, w1, w2, d):
    rng = random.Random(seed)
    E1 = make_bundle([0, 1], [d, d - 1], generic_flags(2, 2, rng), w1)
    E2 = make_bundle([0, 1], [1, 0], generic_flags(2, 2, rng), w2)
    T = tensor_structure(E1, E2)
    assert parabolic_degree(T) == 2 * parabolic_degree(E1) + 2 * parabolic_degree(E2)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), weight_pairs, st.integers(0, 3))
def test_dual_pardeg_sums_to_zero(seed, w, r):
    E = make_bundle(range(r), [1, -2], generic_flags(2, r, random.Random(seed)), w)
    assert parabolic_degree(E) + parabolic_degree(dual_structure(E)) == 0


def test_generic_flags_are_transverse():
    fl = generic_flags(3, 5, random.Random(0))
    assert all(flags_transverse(a, b) for i, a in enumerate(fl) for b in fl[:i])


def test_section_degree_and_incidence():
    E = make_bundle([0, 1], [0, 0], [ID, ID], BALANCED)
    s = (Poly.const(0), Poly.const(1))
    assert section_degree(E, s) == 0
    assert section_incidence(E, s) == (2, 2)
    s = (Z, Poly.const(1))
    assert section_degree(E, s) == -1
    assert section_incidence(E, s) == (2, 1)
    F = SubbundleData(-1, s, (2, 1), (Q(3, 4), Q(1, 4)))
    assert F.pardeg == 0
