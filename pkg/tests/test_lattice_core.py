import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cvpreduce.exact_linalg import DegenerateError, combine, norm_sq, perp_component, solve_linear, sub, vec
from cvpreduce.lattice_core import (
    LatticeBasis,
    LatticeVector,
    NotElementaryError,
    NotMemberError,
    complete_basis,
    hnf,
    is_member,
    lattices_equal,
    lift_candidate,
    make_elementary,
    project_basis_perp,
    unimodular_with_first_column,
)

from conftest import F, basis, integer_bases, random_coprime

I2 = basis((1, 0), (0, 1))
B21 = basis((2, 0), (1, 2))


def test_basis_validation():
    with pytest.raises(DegenerateError):
        basis((1, 2), (2, 4))
    with pytest.raises(DegenerateError):
        basis((1, 0), (0, 1), (1, 1))
    B = basis((1, 2, 3),)
    assert (B.n, B.m) == (1, 3)


def test_is_member_examples():
    assert is_member(I2, vec(3, -2)) == (3, -2)
    assert is_member(B21, vec(3, 2)) == (1, 1)
    # solve_linear gives (1/2, 0), not integral
    assert solve_linear(B21.columns, vec(1, 0)) == vec(F(1, 2), 0)
    assert is_member(B21, vec(1, 0)) is None


def test_is_member_off_span():
    assert is_member(basis((1, 0, 0),), vec(0, 1, 0)) is None


def test_hnf_examples():
    assert hnf(I2) == I2.columns
    assert hnf(B21) == hnf(basis((1, 2), (2, 0)))
    H = hnf(B21)
    # independent check: H and B generate each other with integer coefficients
    HB = LatticeBasis(H)
    assert all(is_member(HB, b) is not None for b in B21.columns)
    assert all(is_member(B21, h) is not None for h in H)
    # and the change of basis is unimodular: |det H| == |det B| == 4
    assert abs(H[0][0] * H[1][1] - H[0][1] * H[1][0]) == 4


def test_hnf_rejects_rationals():
    with pytest.raises(ValueError):
        hnf(basis((F(1, 2), 0), (0, 1)))


@given(integer_bases(max_n=4, extra_m=2), st.randoms(use_true_random=False))
def test_hnf_invariant_under_unimodular_change(B, rnd):
    c = random_coprime(rnd, B.n)
    U = unimodular_with_first_column(c)
    C = LatticeBasis(tuple(combine(B.columns, u) for u in U))
    assert hnf(C) == hnf(B)
    assert lattices_equal(B, C)


def test_lattices_equal_examples():
    assert lattices_equal(B21, basis((1, 2), (2, 0)))
    assert lattices_equal(I2, basis((1, 0), (1, 1)))
    assert not lattices_equal(I2, basis((2, 0), (0, 1)))
    assert lattices_equal(basis((F(1, 2), 0), (0, F(1, 3))), basis((F(1, 2), F(1, 3)), (0, F(1, 3))))


@pytest.mark.parametrize(
    "coeffs, expected",
    [((2, 4), (1, 2)), ((1, 0), (1, 0)), ((-3, -6, 9), (-1, -2, 3))],
)
def test_make_elementary(coeffs, expected):
    B = LatticeBasis.from_columns([[int(i == j) for j in range(len(coeffs))] for i in range(len(coeffs))])
    w = make_elementary(B, B.point(coeffs))
    assert w.coeffs == expected
    assert make_elementary(B, w) == w


def test_make_elementary_zero():
    with pytest.raises(DegenerateError):
        make_elementary(I2, I2.point((0, 0)))


@pytest.mark.parametrize(
    "B, coeffs",
    [(I2, (1, 1)), (I2, (1, 0)), (B21, (1, 1))],
)
def test_complete_basis_examples(B, coeffs):
    v = B.point(coeffs)
    rest = complete_basis(v, B)
    assert len(rest) == B.n - 1
    assert lattices_equal(LatticeBasis((v.coords,) + tuple(w.coords for w in rest)), B)


def test_complete_basis_rejects_non_elementary():
    with pytest.raises(NotElementaryError):
        complete_basis(I2.point((2, 0)), I2)
    with pytest.raises(NotMemberError):
        complete_basis(LatticeVector(vec(1, 1), (1, 0)), I2)


@settings(max_examples=60)
@given(integer_bases(min_n=2, max_n=5, extra_m=1), st.randoms(use_true_random=False))
def test_complete_basis_property(B, rnd):
    v = B.point(random_coprime(rnd, B.n))
    rest = complete_basis(v, B)
    for w in rest:
        assert combine(B.columns, w.coeffs) == w.coords
    assert lattices_equal(LatticeBasis((v.coords,) + tuple(w.coords for w in rest)), B)


def test_project_basis_perp_examples():
    I3 = basis((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert project_basis_perp([I2.point((1, 1))], vec(1, 0)).columns == (vec(0, 1),)
    assert project_basis_perp([I2.point((1, 2))], vec(2, 0)).columns == (vec(0, 2),)
    rest = [I3.point((0, 1, 0)), I3.point((0, 0, 1))]
    assert project_basis_perp(rest, vec(1, 0, 0)).columns == (vec(0, 1, 0), vec(0, 0, 1))
    with pytest.raises(DegenerateError):
        project_basis_perp(rest, vec(0, 0, 0))


def test_lift_candidate_examples():
    v = I2.point((1, 0))
    rest = [I2.point((0, 1))]
    assert lift_candidate(I2, v, rest, vec(0, 3), vec(0, 3)).coords == vec(0, 3)
    # brute force: (2,1) and (3,1) are both at squared distance 1/4 from (5/2, 1)
    t = vec(F(5, 2), 1)
    dists = {a: norm_sq(sub(vec(a, 1), t)) for a in range(-5, 10)}
    best = min(dists.values())
    assert sorted(a for a, d in dists.items() if d == best) == [2, 3]
    z = lift_candidate(I2, v, rest, vec(0, 1), t)
    assert z.coords == vec(2, 1) and z.coeffs == (2, 1)
    assert lift_candidate(I2, v, rest, vec(0, 0), vec(F(9, 10), 0)).coords == vec(1, 0)


def test_lift_candidate_rejects_non_member():
    with pytest.raises(NotMemberError):
        lift_candidate(I2, I2.point((1, 0)), [I2.point((0, 1))], vec(0, F(1, 2)), vec(0, 0))


@settings(max_examples=60)
@given(integer_bases(min_n=2, max_n=4, extra_m=1), st.randoms(use_true_random=False), st.data())
def test_lift_residue_bound(B, rnd, data):
    v = B.point(random_coprime(rnd, B.n))
    rest = complete_basis(v, B)
    t = tuple(Fraction(data.draw(st.integers(-20, 20)), data.draw(st.integers(1, 5))) for _ in range(B.m))
    a = [rnd.randint(-3, 3) for _ in rest]
    z_proj = combine([perp_component(w.coords, v.coords) for w in rest], a)
    z = lift_candidate(B, v, rest, z_proj, t)
    assert combine(B.columns, z.coeffs) == z.coords
    t_perp = perp_component(t, v.coords)
    assert norm_sq(sub(z.coords, t)) <= norm_sq(sub(z_proj, t_perp)) + norm_sq(v.coords) / 4
    # the chosen multiple is optimal among its neighbours
    for step in (-1, 1):
        other = tuple(a + step * b for a, b in zip(z.coords, v.coords))
        assert norm_sq(sub(z.coords, t)) <= norm_sq(sub(other, t))


def test_unimodular_first_column():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(1, 6)
        c = random_coprime(rng, n, spread=30)
        U = unimodular_with_first_column(c)
        assert U[0] == c
        B = LatticeBasis.from_columns(U)
        assert lattices_equal(B, LatticeBasis.from_columns([[int(i == j) for j in range(n)] for i in range(n)]))
