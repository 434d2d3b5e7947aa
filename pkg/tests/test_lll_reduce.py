from fractions import Fraction

import pytest
from hypothesis import given, settings

from cvpreduce.exact_linalg import combine, norm_sq, vec
from cvpreduce.lattice_core import LatticeBasis, lattices_equal
from cvpreduce.lll_reduce import (
    LllParams,
    is_lll_reduced,
    is_size_reduced,
    lll,
    lll_with_transform,
    satisfies_lovasz,
)
from cvpreduce.reference_oracles import successive_minima

from conftest import F, basis, integer_bases


def test_params_validated():
    with pytest.raises(ValueError):
        LllParams(Fraction(1, 4))
    with pytest.raises(ValueError):
        LllParams(Fraction(1))
    assert LllParams().delta == Fraction(3, 4)


def test_identity_is_fixed():
    I = basis((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert lll(I) == I


def test_skewed_pair():
    R = lll(basis((1, 0), (5, 1)))
    assert vec(1, 0) in R.columns or vec(-1, 0) in R.columns
    assert all(norm_sq(b) <= 2 for b in R.columns)
    assert successive_minima(R)[0] == 1


def test_first_vector_is_shortest_small_case():
    R = lll(basis((2, 0), (1, 2)))
    assert norm_sq(R[0]) == 4 == successive_minima(R)[0]


def test_rational_basis():
    B = basis((F(1, 2), F(1, 3), 0), (F(7, 2), F(2, 3), 1), (0, F(5, 3), F(1, 7)))
    R = lll(B)
    assert lattices_equal(B, R)
    assert is_lll_reduced(R)


@settings(max_examples=80)
@given(integer_bases(max_n=6, extra_m=1, bound=40))
def test_lll_contract(B):
    R, U = lll_with_transform(B)
    for col, u in zip(R.columns, U):
        assert combine(B.columns, u) == col
    assert lattices_equal(B, R)
    assert is_size_reduced(R)
    assert satisfies_lovasz(R, Fraction(3, 4))
    lam1 = successive_minima(B)[0]
    assert norm_sq(R[0]) <= 2 ** (B.n - 1) * lam1


@settings(max_examples=30)
@given(integer_bases(min_n=2, max_n=5, bound=20))
def test_stronger_delta(B):
    R = lll(B, LllParams(Fraction(99, 100)))
    assert satisfies_lovasz(R, Fraction(99, 100))
    assert is_size_reduced(R)
