"""Exact rational LLL reduction."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .exact_linalg import gso_coefficients
from .lattice_core import LatticeBasis


@dataclass(frozen=True)
class LllParams:
    delta: Fraction = Fraction(3, 4)

    def __post_init__(self):
        d = Fraction(self.delta)
        if not Fraction(1, 4) < d < 1:
            raise ValueError(f"LLL delta must lie in (1/4, 1), got {d}")
        object.__setattr__(self, "delta", d)


def _nearest(x: Fraction) -> int:
    return floor(x + Fraction(1, 2))


def lll_with_transform(B: LatticeBasis, params: LllParams = LllParams()) -> tuple[LatticeBasis, list[list[int]]]:
    """LLL-reduce ``B``.

    Returns the reduced basis and the integer transform: reduced column ``i``
    equals ``sum(U[i][j] * B[j])``.
    """
    delta = params.delta
    n = B.n
    b = [list(c) for c in B.columns]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    mu, bstar = gso_coefficients(B.columns)
    mu = [row + [Fraction(0)] * (n - len(row)) for row in mu]

    def size_reduce(k: int, l: int) -> None:
        q = _nearest(mu[k][l])
        if q == 0:
            return
        b[k] = [x - q * y for x, y in zip(b[k], b[l])]
        U[k] = [x - q * y for x, y in zip(U[k], U[l])]
        for j in range(l):
            mu[k][j] -= q * mu[l][j]
        mu[k][l] -= q

    k = 1
    while k < n:
        size_reduce(k, k - 1)
        if bstar[k] < (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            # swap b_{k-1}, b_k and update the Gram-Schmidt data in place
            m = mu[k][k - 1]
            bnew = bstar[k] + m * m * bstar[k - 1]
            mu[k][k - 1] = m * bstar[k - 1] / bnew
            bstar[k] = bstar[k - 1] * bstar[k] / bnew
            bstar[k - 1] = bnew
            b[k - 1], b[k] = b[k], b[k - 1]
            U[k - 1], U[k] = U[k], U[k - 1]
            for j in range(k - 1):
                mu[k - 1][j], mu[k][j] = mu[k][j], mu[k - 1][j]
            for i in range(k + 1, n):
                t = mu[i][k]
                mu[i][k] = mu[i][k - 1] - m * t
                mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]
            k = max(k - 1, 1)
        else:
            for l in range(k - 2, -1, -1):
                size_reduce(k, l)
            k += 1
    return LatticeBasis(tuple(tuple(c) for c in b)), U


def lll(B: LatticeBasis, params: LllParams = LllParams()) -> LatticeBasis:
    return lll_with_transform(B, params)[0]


def is_size_reduced(B: LatticeBasis) -> bool:
    mu, _ = gso_coefficients(B.columns)
    return all(abs(x) <= Fraction(1, 2) for row in mu for x in row)


def satisfies_lovasz(B: LatticeBasis, delta: Fraction = Fraction(3, 4)) -> bool:
    mu, bstar = gso_coefficients(B.columns)
    return all(
        bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1] for k in range(1, B.n)
    )


def is_lll_reduced(B: LatticeBasis, delta: Fraction = Fraction(3, 4)) -> bool:
    return is_size_reduced(B) and satisfies_lovasz(B, delta)
