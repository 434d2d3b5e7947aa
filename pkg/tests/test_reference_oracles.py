import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cvpreduce.bdd_embed import embed
from cvpreduce.exact_linalg import combine, norm_sq, sub, vec
from cvpreduce.reference_oracles import (
    BudgetExceeded,
    EnumerationBudget,
    brute_cvp,
    cvp_distance_sq,
    successive_minima,
    verify_usvp_promise,
)
from cvpreduce.svp_oracle import enumerate_shortest

from conftest import F, basis, integer_bases, rational_vectors

I2 = basis((1, 0), (0, 1))
BOX = EnumerationBudget(strategy="fixed-box", box=4)


def test_brute_cvp_examples():
    # exhaustive over the box [-2, 2]^2
    box = {x: norm_sq(sub(combine(I2.columns, x), vec(F(3, 4), F(1, 4)))) for x in itertools.product(range(-2, 3), repeat=2)}
    assert min(box.values()) == F(1, 8) and min(box, key=box.get) == (1, 0)
    z = brute_cvp(I2, vec(F(3, 4), F(1, 4)))
    assert z.coords == vec(1, 0)
    assert brute_cvp(basis((3,),), vec(7)).coords == vec(6)
    B = basis((2, 1, 0), (1, 3, 1), (0, 1, 4))
    p = B.point((2, -1, 3))
    assert brute_cvp(B, p.coords) == p


def test_brute_cvp_tie_break_lexicographic():
    assert brute_cvp(I2, vec(F(1, 2), F(1, 2))).coeffs == (0, 0)


def test_budget():
    B = basis(*[[int(i == j) for j in range(4)] for i in range(4)])
    with pytest.raises(BudgetExceeded):
        brute_cvp(B, vec(0, 0, 0, 0), EnumerationBudget(max_dim=3))
    with pytest.raises(ValueError):
        EnumerationBudget(max_dim=0)


def test_successive_minima_examples():
    assert successive_minima(basis((1, 0, 0), (0, 1, 0), (0, 0, 1))) == [1, 1, 1]
    assert successive_minima(basis((2, 0), (1, 2))) == [4, 5]
    assert successive_minima(basis((5,),)) == [25]


def test_verify_usvp_examples():
    assert verify_usvp_promise(I2, 1)
    assert not verify_usvp_promise(I2, 2)
    E = embed(I2, vec(F(2, 5), 0), F(2, 5))
    lam = successive_minima(E.base)
    assert lam[0] == F(8, 25)
    assert verify_usvp_promise(E.base, 1)


@settings(max_examples=60, deadline=None)
@given(integer_bases(max_n=3, extra_m=1, bound=4), st.data())
def test_pruned_matches_fixed_box(B, data):
    t = data.draw(rational_vectors(B.m, bound=4))
    # with entries this small and t this close, the optimum lies well inside the box
    d_pruned = cvp_distance_sq(B, t)
    d_box = cvp_distance_sq(B, t, EnumerationBudget(strategy="fixed-box", box=12))
    assert d_pruned <= d_box
    if B.n == B.m:
        assert d_pruned == d_box


@settings(max_examples=60, deadline=None)
@given(integer_bases(max_n=5, extra_m=1, bound=10), st.data())
def test_minimality_against_candidates(B, data):
    t = data.draw(rational_vectors(B.m, bound=20))
    z = brute_cvp(B, t)
    d = norm_sq(sub(z.coords, t))
    for _ in range(10):
        x = [data.draw(st.integers(-4, 4)) for _ in range(B.n)]
        cand = list(z.coeffs)
        cand = [a + b for a, b in zip(cand, x)]
        assert d <= norm_sq(sub(combine(B.columns, cand), t))


@settings(max_examples=60, deadline=None)
@given(integer_bases(max_n=5, extra_m=1, bound=15))
def test_minima_monotone_and_consistent(B):
    lam = successive_minima(B)
    assert all(a <= b for a, b in zip(lam, lam[1:]))
    assert lam[0] == norm_sq(enumerate_shortest(B).coords)
