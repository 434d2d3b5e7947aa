"""Lattice bases, membership, Hermite normal form and basis manipulation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd, lcm
from typing import Optional, Sequence

from .exact_linalg import (
    DegenerateError,
    DimensionError,
    Matrix,
    Vector,
    combine,
    gram_schmidt,
    inner_product,
    is_zero,
    mat,
    norm_sq,
    perp_component,
    solve_linear,
    sub,
)


class NotElementaryError(ValueError):
    pass


class NotMemberError(ValueError):
    pass


@dataclass(frozen=True)
class LatticeBasis:
    """``n`` linearly independent rational columns in ``Q^m``."""

    columns: Matrix

    def __post_init__(self):
        cols = mat(self.columns)
        if len(cols) > len(cols[0]):
            raise DegenerateError(f"{len(cols)} columns cannot be independent in dimension {len(cols[0])}")
        gram_schmidt(cols)
        object.__setattr__(self, "columns", cols)

    @classmethod
    def from_columns(cls, columns) -> "LatticeBasis":
        return cls(mat(columns))

    @property
    def n(self) -> int:
        return len(self.columns)

    @property
    def m(self) -> int:
        return len(self.columns[0])

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> Vector:
        return self.columns[i]

    def point(self, coeffs: Sequence[int]) -> "LatticeVector":
        coeffs = tuple(int(c) for c in coeffs)
        return LatticeVector(combine(self.columns, coeffs), coeffs)

    def denominator(self) -> int:
        return lcm(1, *(a.denominator for c in self.columns for a in c))


@dataclass(frozen=True)
class LatticeVector:
    """A lattice point: ambient coordinates together with its integer
    coefficients in the basis it was built from."""

    coords: Vector
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(a) for a in self.coords))
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))


def is_member(B: LatticeBasis, w: Vector) -> Optional[tuple]:
    """Integer coefficients ``x`` with ``B x = w``, or None if ``w`` is not a lattice point."""
    if len(w) != B.m:
        raise DimensionError(f"vector of dimension {len(w)} in a lattice of dimension {B.m}")
    x = solve_linear(B.columns, tuple(Fraction(a) for a in w))
    if x is None or any(c.denominator != 1 for c in x):
        return None
    return tuple(int(c) for c in x)


def lattice_vector(B: LatticeBasis, w: Vector) -> LatticeVector:
    x = is_member(B, w)
    if x is None:
        raise NotMemberError("vector is not in the lattice")
    return LatticeVector(w, x)


def _integer_columns(columns: Matrix) -> list[list[int]]:
    for c in columns:
        for a in c:
            if a.denominator != 1:
                raise ValueError("hnf needs an integral basis; scale by the common denominator first")
    return [[int(a) for a in c] for c in columns]


def hnf(B: LatticeBasis) -> Matrix:
    """Column-style Hermite normal form of an integral basis.

    For each pivot row the pivot is positive, entries to its right are zero
    and entries to its left lie in ``[0, pivot)``. The result depends only
    on the lattice.
    """
    cols = _integer_columns(B.columns)
    n, m = len(cols), len(cols[0])
    k = 0
    for i in range(m):
        if k == n:
            break
        # gcd-combine columns k.. on row i until only column k is nonzero there
        while True:
            nz = [j for j in range(k, n) if cols[j][i] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda j: abs(cols[j][i]))
            cols[k], cols[piv] = cols[piv], cols[k]
            done = True
            for j in range(k + 1, n):
                if cols[j][i]:
                    q = cols[j][i] // cols[k][i]
                    cols[j] = [a - q * b for a, b in zip(cols[j], cols[k])]
                    if cols[j][i]:
                        done = False
            if done:
                break
        if cols[k][i] == 0:
            continue
        if cols[k][i] < 0:
            cols[k] = [-a for a in cols[k]]
        p = cols[k][i]
        for j in range(k):
            q = cols[j][i] // p
            if q:
                cols[j] = [a - q * b for a, b in zip(cols[j], cols[k])]
        k += 1
    if k != n:
        raise DegenerateError("columns are linearly dependent")
    return tuple(tuple(Fraction(a) for a in c) for c in cols)


def lattices_equal(B1: LatticeBasis, B2: LatticeBasis) -> bool:
    if B1.m != B2.m:
        raise DimensionError("lattices live in different ambient dimensions")
    if B1.n != B2.n:
        return False
    d = lcm(B1.denominator(), B2.denominator())
    s1 = LatticeBasis(tuple(tuple(a * d for a in c) for c in B1.columns))
    s2 = LatticeBasis(tuple(tuple(a * d for a in c) for c in B2.columns))
    return hnf(s1) == hnf(s2)


def make_elementary(B: LatticeBasis, w: LatticeVector) -> LatticeVector:
    """Divide ``w`` by the gcd of its coefficients."""
    g = 0
    for c in w.coeffs:
        g = gcd(g, c)
    if g == 0:
        raise DegenerateError("the zero vector has no elementary direction")
    if g == 1:
        return w
    return LatticeVector(tuple(a / g for a in w.coords), tuple(c // g for c in w.coeffs))


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def unimodular_with_first_column(c: Sequence[int]) -> list[list[int]]:
    """Integer matrix of determinant +-1 whose first column is ``c``.

    ``c`` must have coprime entries. Returned as a list of columns.
    """
    n = len(c)
    a = [int(x) for x in c]
    g = 0
    for x in a:
        g = gcd(g, x)
    if g != 1:
        raise NotElementaryError(f"coefficient vector has gcd {g}, not 1")
    # U accumulates the inverse of the row operations that send a to e_1;
    # stored as rows so that row operations on a become column operations on U.
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    for j in range(n - 1, 0, -1):
        x, y = a[j - 1], a[j]
        if y == 0:
            continue
        g, p, q = _egcd(x, y)
        # [[p, q], [-y/g, x/g]] maps (x, y) to (g, 0); its inverse is [[x/g, -q], [y/g, p]]
        a[j - 1], a[j] = g, 0
        xg, yg = x // g, y // g
        for row in U:
            r0, r1 = row[j - 1], row[j]
            row[j - 1], row[j] = r0 * xg + r1 * yg, -r0 * q + r1 * p
    if a[0] == -1:
        for row in U:
            row[0] = -row[0]
    return [[U[i][j] for i in range(n)] for j in range(n)]


def complete_basis(v: LatticeVector, B: LatticeBasis) -> list[LatticeVector]:
    """Lattice vectors ``w_2..w_n`` such that ``v, w_2, ..., w_n`` is a basis of ``B``."""
    if B.n < 2:
        raise ValueError("basis completion needs n >= 2")
    if len(v.coeffs) != B.n or combine(B.columns, v.coeffs) != v.coords:
        raise NotMemberError("v is not given as a point of this lattice")
    cols = unimodular_with_first_column(v.coeffs)
    return [B.point(u) for u in cols[1:]]


def project_basis_perp(rest: Sequence[LatticeVector], v: Vector) -> LatticeBasis:
    if is_zero(v):
        raise DegenerateError("cannot project orthogonally to the zero vector")
    return LatticeBasis(tuple(perp_component(w.coords, v) for w in rest))


def round_half_down(x: Fraction) -> int:
    """Nearest integer, exact halves going toward minus infinity."""
    f = floor(x)
    return f + 1 if x - f > Fraction(1, 2) else f


def lift_candidate(
    B: LatticeBasis,
    v: LatticeVector,
    rest: Sequence[LatticeVector],
    z_proj: Vector,
    t: Vector,
) -> LatticeVector:
    """Lift a point of the projected lattice back to the full lattice.

    ``z_proj`` is written over the projections of ``rest``; the multiple of
    ``v`` is then chosen to bring the result closest to ``t`` (ties to the
    smaller multiple).
    """
    projected = tuple(perp_component(w.coords, v.coords) for w in rest)
    a = solve_linear(projected, tuple(z_proj))
    if a is None or any(x.denominator != 1 for x in a):
        raise NotMemberError("z_proj is not a point of the projected lattice")
    a = [int(x) for x in a]
    base = combine([w.coords for w in rest], a)
    a1 = round_half_down(inner_product(sub(t, base), v.coords) / norm_sq(v.coords))
    coords = combine([v.coords, base], [a1, 1])
    coeffs = [a1 * c for c in v.coeffs]
    for ai, w in zip(a, rest):
        coeffs = [x + ai * y for x, y in zip(coeffs, w.coeffs)]
    return LatticeVector(coords, tuple(coeffs))
