"""Brute-force ground truth for small lattices.

Everything here is deliberately separate from the oracle code in
:mod:`cvpreduce.svp_oracle`: it enumerates over the raw input basis using a
Fincke-Pohst decomposition of the Gram matrix, fixes the *first*
coefficient outermost and scans each coordinate range in increasing order.
A fixed coefficient box is available as an even simpler fallback.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, isqrt
from typing import Iterator, Optional, Sequence

from .exact_linalg import Vector, combine, inner_product, norm_sq, solve_linear, sub
from .lattice_core import LatticeBasis, LatticeVector


class BudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class EnumerationBudget:
    max_dim: int = 10
    strategy: str = "gram-schmidt-pruned"  # or "fixed-box"
    box: int = 3

    def __post_init__(self):
        if self.max_dim < 1:
            raise ValueError("max_dim must be positive")
        if self.strategy not in ("gram-schmidt-pruned", "fixed-box"):
            raise ValueError(f"unknown strategy {self.strategy!r}")

    def check(self, B: LatticeBasis) -> None:
        if B.n > self.max_dim:
            raise BudgetExceeded(f"rank {B.n} exceeds enumeration budget {self.max_dim}")


DEFAULT_BUDGET = EnumerationBudget()


def _gram(cols: Sequence[Vector]) -> list[list[Fraction]]:
    return [[inner_product(a, b) for b in cols] for a in cols]


def _fp_decompose(G):
    """Return q with Q(x) = sum_i q[i][i] * (x_i + sum_{j>i} q[i][j] x_j)^2 = x^T G x."""
    n = len(G)
    q = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        q[i][i] = G[i][i] - sum((q[k][k] * q[k][i] ** 2 for k in range(i)), Fraction(0))
        for j in range(i + 1, n):
            q[i][j] = (G[i][j] - sum((q[k][k] * q[k][i] * q[k][j] for k in range(i)), Fraction(0))) / q[i][i]
    return q


def _int_range(center: Fraction, radius_sq: Fraction) -> range:
    """Integers x with (x - center)^2 <= radius_sq."""
    if radius_sq < 0:
        return range(0)
    p, qd = radius_sq.numerator, radius_sq.denominator
    over = Fraction(isqrt(p * qd) + 1, qd)  # strictly above sqrt(radius_sq)
    hi = floor(center + over)
    while hi > center - over and (hi - center) ** 2 > radius_sq:
        hi -= 1
    lo = ceil(center - over)
    while lo < center + over and (lo - center) ** 2 > radius_sq:
        lo += 1
    return range(lo, hi + 1)


def _points_within(G, center: Sequence[Fraction], bound: Fraction) -> Iterator[tuple[tuple[int, ...], Fraction]]:
    """All integer x with (x - center)^T G (x - center) <= bound.

    The first coordinate is fixed outermost, so the decomposition is done
    on the reversed Gram matrix.
    """
    n = len(G)
    rev = [[G[n - 1 - i][n - 1 - j] for j in range(n)] for i in range(n)]
    q = _fp_decompose(rev)
    c = [center[n - 1 - i] for i in range(n)]
    x = [0] * n

    def rec(i: int, rem: Fraction) -> Iterator:
        shift = sum((q[i][j] * (x[j] - c[j]) for j in range(i + 1, n)), Fraction(0))
        mid = c[i] - shift
        for xi in _int_range(mid, rem / q[i][i]):
            x[i] = xi
            d = xi - mid
            r = rem - q[i][i] * d * d
            if i == 0:
                yield tuple(reversed(x)), bound - r
            else:
                yield from rec(i - 1, r)
        x[i] = 0

    yield from rec(n - 1, bound)


def _box_points(B: LatticeBasis, t: Vector, k: int):
    for x in itertools.product(range(-k, k + 1), repeat=B.n):
        yield x, norm_sq(sub(combine(B.columns, x), t))


def _span_split(B: LatticeBasis, t: Vector) -> tuple[tuple[Fraction, ...], Fraction]:
    """Real coefficients of the projection of t onto span(B), and the squared
    distance of t from that span."""
    G = _gram(B.columns)
    rhs = tuple(inner_product(b, t) for b in B.columns)
    c = solve_linear(tuple(tuple(row) for row in G), rhs)
    inside = combine(B.columns, c)
    return c, norm_sq(sub(t, inside))


def brute_cvp(B: LatticeBasis, t: Vector, budget: EnumerationBudget = DEFAULT_BUDGET) -> LatticeVector:
    """Exact closest lattice point; ties go to the lexicographically smallest coefficients."""
    budget.check(B)
    t = tuple(Fraction(a) for a in t)
    if budget.strategy == "fixed-box":
        best = min(_box_points(B, t, budget.box), key=lambda p: (p[1], p[0]))
        return B.point(best[0])
    c, off = _span_split(B, t)
    G = _gram(B.columns)
    start = tuple(floor(a + Fraction(1, 2)) for a in c)
    bound = norm_sq(sub(combine(B.columns, start), t)) - off
    best_x, best_d = start, bound
    for x, d in _points_within(G, c, bound):
        if d < best_d or (d == best_d and x < best_x):
            best_x, best_d = x, d
    return B.point(best_x)


def cvp_distance_sq(B: LatticeBasis, t: Vector, budget: EnumerationBudget = DEFAULT_BUDGET) -> Fraction:
    z = brute_cvp(B, t, budget)
    return norm_sq(sub(z.coords, tuple(Fraction(a) for a in t)))


def lattice_points_within(B: LatticeBasis, bound: Fraction, budget: EnumerationBudget = DEFAULT_BUDGET):
    """Nonzero lattice vectors of squared norm <= bound, sorted by (norm, coefficients)."""
    budget.check(B)
    if budget.strategy == "fixed-box":
        pts = [(d, x) for x, d in _box_points(B, (Fraction(0),) * B.m, budget.box) if any(x) and d <= bound]
    else:
        G = _gram(B.columns)
        pts = [(d, x) for x, d in _points_within(G, [Fraction(0)] * B.n, bound) if any(x)]
    return sorted(pts)


def _rank(vectors: Sequence[Vector]) -> int:
    rows = [list(v) for v in vectors]
    r = 0
    if not rows:
        return 0
    for col in range(len(rows[0])):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            f = rows[i][col] / rows[r][col]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def successive_minima(B: LatticeBasis, budget: EnumerationBudget = DEFAULT_BUDGET) -> list[Fraction]:
    """Squared successive minima lambda_1^2 <= ... <= lambda_n^2."""
    budget.check(B)
    # the basis has n independent vectors, so its longest one bounds lambda_n;
    # start from the shortest and double, since the full ball can be huge
    ceiling = max(norm_sq(b) for b in B.columns)
    bound = min(norm_sq(b) for b in B.columns)
    while True:
        chosen: list[Vector] = []
        minima: list[Fraction] = []
        for d, x in lattice_points_within(B, bound, budget):
            w = combine(B.columns, x)
            if _rank(chosen + [w]) > len(chosen):
                chosen.append(w)
                minima.append(d)
                if len(chosen) == B.n:
                    return minima
        if bound >= ceiling:
            raise BudgetExceeded("fixed box too small to find n independent vectors")
        bound = min(2 * bound, ceiling)


def verify_usvp_promise(B: LatticeBasis, gamma: Fraction, budget: EnumerationBudget = DEFAULT_BUDGET) -> bool:
    lam = successive_minima(B, budget)
    if len(lam) < 2:
        return True
    g = Fraction(gamma)
    return lam[1] >= g * g * lam[0]


def shortest_vectors(B: LatticeBasis, budget: EnumerationBudget = DEFAULT_BUDGET) -> list[LatticeVector]:
    """Every lattice vector achieving lambda_1 (both signs)."""
    lam1 = successive_minima(B, budget)[0]
    out = []
    for d, x in lattice_points_within(B, lam1, budget):
        out.append(B.point(x))
    return out
