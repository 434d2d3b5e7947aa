"""Approximate CVP from an approximate SVP oracle.

At every level two candidates are produced. The first decodes the target
as a bounded-distance instance, which is exact when the target is close to
the lattice. The second takes an oracle vector ``v``, completes it to a
basis, projects basis and target orthogonally to ``v``, solves the smaller
instance recursively and lifts the answer back by picking the best multiple
of ``v``. The closer candidate wins. With a gamma-approximate oracle the
answer is within ``gamma^2 * sqrt(n)`` of the optimum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional

from .bdd_embed import solve_bdd
from .exact_linalg import (
    Vector,
    entry_bits,
    format_rational,
    inner_product,
    norm_sq,
    perp_component,
    scale,
    sub,
)
from .lattice_core import (
    LatticeBasis,
    LatticeVector,
    complete_basis,
    lift_candidate,
    project_basis_perp,
    round_half_down,
)
from .lll_reduce import lll_with_transform
from .svp_oracle import OracleSpec, oracle_query


@dataclass(frozen=True)
class CvpInstance:
    basis: LatticeBasis
    target: Vector
    oracle: OracleSpec = OracleSpec()

    def __post_init__(self):
        t = tuple(Fraction(a) for a in self.target)
        if len(t) != self.basis.m:
            raise ValueError(f"target has dimension {len(t)}, lattice lives in dimension {self.basis.m}")
        object.__setattr__(self, "target", t)


@dataclass(frozen=True)
class LevelRecord:
    level: int
    dim: int
    branch: str  # "bdd", "recurse" or "base"
    oracle_vector_norm_sq: Fraction
    z1_dist_sq: Optional[Fraction]
    z2_dist_sq: Optional[Fraction]
    answer_dist_sq: Fraction
    max_entry_bits: int

    def line(self) -> str:
        def opt(x):
            return "-" if x is None else format_rational(x)

        return (
            f"level={self.level} dim={self.dim} branch={self.branch} "
            f"vnorm2={format_rational(self.oracle_vector_norm_sq)} "
            f"z1d2={opt(self.z1_dist_sq)} z2d2={opt(self.z2_dist_sq)} bits={self.max_entry_bits}"
        )


@dataclass
class ReductionTrace:
    M: int
    levels: list = field(default_factory=list)

    def lines(self) -> list[str]:
        return [rec.line() for rec in self.levels]

    def dump(self) -> str:
        return "".join(line + "\n" for line in self.lines())


@dataclass(frozen=True)
class CvpResult:
    answer: LatticeVector
    dist_sq_achieved: Fraction
    bound_factor_sq: Fraction
    trace: ReductionTrace

    def within_bound(self, opt_dist_sq: Fraction) -> bool:
        return self.dist_sq_achieved <= self.bound_factor_sq * opt_dist_sq


def input_size(B: LatticeBasis) -> int:
    """max(n, ceil(log2 max_i ||b_i||)) for an integral basis."""
    longest = max(norm_sq(b) for b in B.columns)
    k = 0
    while Fraction(4) ** k < longest:
        k += 1
    return max(B.n, k)


def cvp_base_case(b1: Vector, t: Vector) -> Vector:
    nn = norm_sq(b1)
    if nn == 0:
        raise ValueError("zero basis vector")
    a = round_half_down(inner_product(t, b1) / nn)
    return scale(a, b1)


def _dist_sq(z: LatticeVector, t: Vector, unit: Fraction) -> Fraction:
    return norm_sq(sub(z.coords, t)) / unit


class _Solver:
    def __init__(self, spec: OracleSpec, unit: Fraction, early_exit: bool):
        self.spec = spec
        self.unit = unit  # squared scale factor, converts working distances back
        self.early_exit = early_exit
        self.records: dict[int, LevelRecord] = {}

    def solve(self, B: LatticeBasis, t: Vector, level: int) -> LatticeVector:
        if B.n == 1:
            coords = cvp_base_case(B.columns[0], t)
            nn = norm_sq(B.columns[0])
            a = inner_product(coords, B.columns[0]) / nn
            z = LatticeVector(coords, (int(a),))
            d = _dist_sq(z, t, self.unit)
            bits = entry_bits(list(B.columns[0]) + list(t) + list(coords))
            self.records[level] = LevelRecord(level, 1, "base", nn / self.unit, None, None, d, bits)
            return z

        z1 = solve_bdd(B, t, self.spec).candidate
        d1 = _dist_sq(z1, t, self.unit)
        v = oracle_query(self.spec, B).vector
        if self.early_exit and d1 == 0:
            bits = entry_bits([a for c in B.columns for a in c] + list(t) + list(v.coords))
            self.records[level] = LevelRecord(
                level, B.n, "bdd", norm_sq(v.coords) / self.unit, d1, None, d1, bits
            )
            return z1

        rest = complete_basis(v, B)
        reduced, U = lll_with_transform(LatticeBasis(tuple(w.coords for w in rest)))
        rest = [
            LatticeVector(
                col,
                tuple(sum(U[i][j] * rest[j].coeffs[k] for j in range(len(rest))) for k in range(B.n)),
            )
            for i, col in enumerate(reduced.columns)
        ]
        projected = project_basis_perp(rest, v.coords)
        t_perp = perp_component(t, v.coords)
        z_proj = self.solve(projected, t_perp, level + 1)
        z2 = lift_candidate(B, v, rest, z_proj.coords, t)
        d2 = _dist_sq(z2, t, self.unit)

        if d1 <= d2:
            answer, branch, d = z1, "bdd", d1
        else:
            answer, branch, d = z2, "recurse", d2
        bits = entry_bits(
            [a for c in B.columns for a in c]
            + [a for w in rest for a in w.coords]
            + [a for c in projected.columns for a in c]
            + list(t)
            + list(t_perp)
            + list(v.coords)
            + list(z1.coords)
            + list(z2.coords)
        )
        self.records[level] = LevelRecord(level, B.n, branch, norm_sq(v.coords) / self.unit, d1, d2, d, bits)
        return answer


def cvp_solve(inst: CvpInstance, early_exit: bool = False) -> CvpResult:
    """Approximate closest vector with the configured SVP oracle.

    Rational inputs are first scaled to an integral basis by the common
    denominator; the answer and all reported distances are in the original
    units, while bit statistics describe the scaled working values.
    """
    B, t = inst.basis, inst.target
    d = lcm(1, *(a.denominator for c in B.columns for a in c))
    if d != 1:
        B = LatticeBasis(tuple(scale(d, c) for c in B.columns))
        t = scale(d, t)
    solver = _Solver(inst.oracle, Fraction(d * d), early_exit)
    z = solver.solve(B, t, 0)
    answer = LatticeVector(tuple(a / d for a in z.coords), z.coeffs)
    trace = ReductionTrace(input_size(B), [solver.records[k] for k in sorted(solver.records)])
    n = inst.basis.n
    g2 = inst.oracle.gamma_sq(n)
    return CvpResult(
        answer,
        norm_sq(sub(answer.coords, inst.target)),
        g2 * g2 * n,
        trace,
    )


def collect_bit_stats(trace: ReductionTrace) -> int:
    return max((rec.max_entry_bits for rec in trace.levels), default=0)
