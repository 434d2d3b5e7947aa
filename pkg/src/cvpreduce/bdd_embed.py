"""Bounded distance decoding through an SVP oracle (embedding technique).

The target is appended to the basis as an extra column with a scale entry
``alpha`` in a new coordinate. When ``t`` is much closer to the lattice than
``lambda_1 / 2``, the embedded lattice has a unique shortest vector
``(t_dagger - t, -alpha)`` and any good enough SVP answer reveals
``t_dagger``.

The distance ``d(t, L)`` is not known in advance. It is bracketed by the
nearest-plane estimate ``d_est`` (``d <= d_est <= 2^(n/2) d`` on an LLL
basis) and ``alpha`` sweeps the geometric grid ``d_est / (3/2)^j``, so one
grid point is within a factor 3/2 of the true distance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact_linalg import (
    Vector,
    add,
    gso_coefficients,
    inner_product,
    norm_sq,
    sqrt_upper,
    sub,
)
from .lattice_core import LatticeBasis, LatticeVector, round_half_down
from .lll_reduce import lll_with_transform
from .svp_oracle import OracleSpec, SvpOracleResult, oracle_query

GRID_RATIO = Fraction(3, 2)


@dataclass(frozen=True)
class EmbeddedBasis:
    base: LatticeBasis
    alpha: Fraction
    source: LatticeBasis
    target: Vector


@dataclass(frozen=True)
class BddOutcome:
    candidate: LatticeVector
    promise_certified: bool


def embed(B: LatticeBasis, t: Vector, alpha) -> EmbeddedBasis:
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    t = tuple(Fraction(a) for a in t)
    if len(t) != B.m:
        raise ValueError("target dimension does not match the lattice")
    cols = tuple(b + (Fraction(0),) for b in B.columns) + (t + (alpha,),)
    return EmbeddedBasis(LatticeBasis(cols), alpha, B, t)


def nearest_plane(B: LatticeBasis, t: Vector) -> LatticeVector:
    """Babai nearest-plane decoding on an LLL-reduced copy of ``B``."""
    R, U = lll_with_transform(B)
    mu, bstar = gso_coefficients(R.columns)
    n = R.n
    # coordinates of t against the Gram-Schmidt vectors, via <t, b*_i> = <t, b_i> - sum mu_ij <t, b*_j>
    tb = [inner_product(t, b) for b in R.columns]
    tproj = []
    for i in range(n):
        tproj.append((tb[i] - sum((mu[i][j] * tproj[j] * bstar[j] for j in range(i)), Fraction(0))) / bstar[i])
    y = [0] * n
    resid = list(tproj)
    for i in range(n - 1, -1, -1):
        y[i] = round_half_down(resid[i])
        for j in range(i):
            resid[j] -= y[i] * mu[i][j]
        resid[i] -= y[i]
    coeffs = [sum(y[i] * U[i][j] for i in range(n)) for j in range(n)]
    return B.point(coeffs)


def extract_bdd_solution(E: EmbeddedBasis, w: SvpOracleResult) -> BddOutcome:
    """Read the BDD answer off an oracle vector of the embedded lattice.

    Falls back to nearest-plane decoding when the vector does not use the
    target column exactly once.
    """
    coeffs = w.vector.coeffs
    c = coeffs[-1]
    m = E.source.m
    if c in (1, -1):
        # w = B x + c (t, alpha), so the lattice point -c B x sits next to t
        x = tuple(-c * a for a in coeffs[:-1])
        head = tuple(w.vector.coords[:m])
        coords = sub(E.target, head) if c == 1 else add(E.target, head)
        return BddOutcome(LatticeVector(coords, x), True)
    return BddOutcome(nearest_plane(E.source, E.target), False)


def grid_size(n: int) -> int:
    """Number of alpha trials: one more than the least J with (3/2)^(2J) >= 2^n."""
    j = 0
    while 9**j < (2**n) * 4**j:
        j += 1
    return j + 1


def alpha_grid(d_est_sq: Fraction, n: int) -> list[Fraction]:
    top = sqrt_upper(d_est_sq)
    return [top / GRID_RATIO**j for j in range(grid_size(n) + 1)]


def solve_bdd(B: LatticeBasis, t: Vector, spec: OracleSpec) -> BddOutcome:
    """Closest lattice vector to ``t``, exact when ``d(t, L) <= lambda_1 / (2 gamma)``.

    Always returns some lattice vector, whether or not the promise holds.
    """
    t = tuple(Fraction(a) for a in t)
    fallback = nearest_plane(B, t)
    d_est_sq = norm_sq(sub(fallback.coords, t))
    if d_est_sq == 0:
        return BddOutcome(fallback, True)
    best = BddOutcome(fallback, False)
    best_d = d_est_sq
    for alpha in alpha_grid(d_est_sq, B.n):
        E = embed(B, t, alpha)
        out = extract_bdd_solution(E, oracle_query(spec, E.base))
        d = norm_sq(sub(out.candidate.coords, t))
        if d < best_d or (d == best_d and out.promise_certified and not best.promise_certified):
            best, best_d = out, d
    return best
