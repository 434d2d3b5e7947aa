"""Approximate shortest-vector oracles.

Three interchangeable oracles answer "give me a short elementary lattice
vector": exact enumeration (gamma = 1), the first vector of an LLL basis
(gamma = 2^((n-1)/2)) and an adversarial oracle that returns the longest
elementary vector still inside its declared gamma bound.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd
from typing import Iterator, Optional

from .exact_linalg import format_rational, gso_coefficients, norm_sq, parse_rational
from .lattice_core import LatticeBasis, LatticeVector, make_elementary
from .lll_reduce import lll_with_transform

DEFAULT_MAX_DIM = 10

KINDS = ("exact", "lll", "adversarial")


class DimensionLimitError(ValueError):
    pass


@dataclass(frozen=True)
class OracleSpec:
    kind: str = "exact"
    gamma: Optional[Fraction] = None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown oracle kind {self.kind!r}")
        if self.kind == "exact":
            object.__setattr__(self, "gamma", Fraction(1))
        elif self.kind == "lll":
            # depends on the dimension; see gamma_sq
            object.__setattr__(self, "gamma", None)
        else:
            if self.gamma is None:
                raise ValueError("the adversarial oracle needs an explicit gamma")
            g = Fraction(self.gamma)
            if g < 1:
                raise ValueError(f"gamma must be at least 1, got {g}")
            object.__setattr__(self, "gamma", g)

    def gamma_sq(self, n: int) -> Fraction:
        """Squared approximation factor the oracle promises on rank-``n`` lattices."""
        if self.kind == "lll":
            return Fraction(2) ** (n - 1)
        return self.gamma * self.gamma

    def check_dimension(self, n: int) -> None:
        if self.gamma_sq(n) >= Fraction(4) ** n:
            raise ValueError(f"gamma^2 = {self.gamma_sq(n)} is not below 4^n for n = {n}")

    @classmethod
    def parse(cls, text: str) -> "OracleSpec":
        """Parse ``exact``, ``lll`` or ``adversarial:<gamma>:<seed>``."""
        parts = text.strip().split(":")
        if parts == ["exact"]:
            return cls("exact")
        if parts == ["lll"]:
            return cls("lll")
        if parts[0] == "adversarial" and len(parts) == 3:
            return cls("adversarial", parse_rational(parts[1]), int(parts[2]))
        raise ValueError(f"bad oracle spec {text!r}; expected exact, lll or adversarial:<gamma>:<seed>")

    def __str__(self) -> str:
        if self.kind == "adversarial":
            return f"adversarial:{format_rational(self.gamma)}:{self.seed}"
        return self.kind


@dataclass(frozen=True)
class SvpOracleResult:
    vector: LatticeVector
    gamma_sq: Fraction


class _Enumerator:
    """Depth-first enumeration of ``sum(y_i b_i)`` with squared norm at most
    a bound, over a basis described by its Gram-Schmidt data. The bound may
    be lowered while iterating."""

    def __init__(self, mu, bstar, bound: Fraction):
        self.mu = mu
        self.bstar = bstar
        self.bound = bound
        self.n = len(bstar)

    def __iter__(self) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        n = self.n
        y = [0] * n
        yield from self._level(n - 1, y, Fraction(0))

    def _level(self, k, y, partial):
        c = -sum((y[j] * self.mu[j][k] for j in range(k + 1, self.n)), Fraction(0))
        bk = self.bstar[k]
        x0 = floor(c)
        # walk outward from the center in both directions
        for direction, start in ((1, x0 + 1), (-1, x0)):
            x = start
            while True:
                d = x - c
                length = partial + d * d * bk
                if length > self.bound:
                    break
                y[k] = x
                if k == 0:
                    yield tuple(y), length
                else:
                    yield from self._level(k - 1, y, length)
                x += direction
        y[k] = 0


def _to_original(y, U) -> tuple[int, ...]:
    n = len(U)
    return tuple(sum(y[i] * U[i][j] for i in range(n)) for j in range(n))


def _sign_normalized(x):
    for c in x:
        if c:
            return x if c > 0 else tuple(-a for a in x)
    return x


def _reduced(B: LatticeBasis):
    R, U = lll_with_transform(B)
    mu, bstar = gso_coefficients(R.columns)
    return R, U, mu, bstar


def short_vectors(B: LatticeBasis, bound: Fraction, max_dim: int = DEFAULT_MAX_DIM):
    """All nonzero lattice vectors of squared norm at most ``bound``, as
    ``(coefficients in B, norm_sq)`` pairs, one per sign pair."""
    if B.n > max_dim:
        raise DimensionLimitError(f"enumeration limited to n <= {max_dim}, got {B.n}")
    R, U, mu, bstar = _reduced(B)
    out = []
    for y, length in _Enumerator(mu, bstar, bound):
        if any(y):
            x = _sign_normalized(_to_original(y, U))
            out.append((x, length))
    out = sorted(set(out))
    return out


def enumerate_shortest(B: LatticeBasis, max_dim: int = DEFAULT_MAX_DIM) -> LatticeVector:
    """A shortest nonzero vector of the lattice.

    Ties are broken on the coefficient vector: smallest sum of absolute
    values first, then the lexicographically smallest over both signs. The
    winner is flipped so its first nonzero coefficient is positive.
    """
    if B.n > max_dim:
        raise DimensionLimitError(f"enumeration limited to n <= {max_dim}, got {B.n}")
    R, U, mu, bstar = _reduced(B)
    en = _Enumerator(mu, bstar, norm_sq(R.columns[0]))
    best: list[tuple[int, ...]] = []
    for y, length in en:
        if not any(y):
            continue
        if length < en.bound:
            en.bound = length
            best = []
        best.append(_to_original(y, U))
    # the enumeration visits both y and -y
    x = min(
        best + [tuple(-a for a in b) for b in best],
        key=lambda c: (sum(abs(a) for a in c), c),
    )
    return B.point(_sign_normalized(x))


def _lll_vector(B: LatticeBasis) -> LatticeVector:
    R, U = lll_with_transform(B)
    return make_elementary(B, B.point(U[0]))


def _adversarial_vector(B: LatticeBasis, gamma_sq: Fraction, seed: int) -> LatticeVector:
    lam_sq = norm_sq(enumerate_shortest(B).coords)
    pool = [
        (length, x)
        for x, length in short_vectors(B, gamma_sq * lam_sq)
        if _coeff_gcd(x) == 1
    ]
    top = max(length for length, _ in pool)
    ties = sorted(x for length, x in pool if length == top)
    rng = random.Random(seed)
    return B.point(ties[rng.randrange(len(ties))])


def _coeff_gcd(x) -> int:
    g = 0
    for c in x:
        g = gcd(g, c)
    return g


def oracle_query(spec: OracleSpec, B: LatticeBasis) -> SvpOracleResult:
    spec.check_dimension(B.n)
    if spec.kind == "exact":
        v = enumerate_shortest(B)
    elif spec.kind == "lll":
        v = _lll_vector(B)
    else:
        v = _adversarial_vector(B, spec.gamma_sq(B.n), spec.seed)
    return SvpOracleResult(v, spec.gamma_sq(B.n))
