"""Instance generation and the on-disk instance format.

Instance files are JSON with every number written as a rational string
(``"p/q"`` or ``"p"``), so files are exact and byte-stable::

    {
      "basis": [["1", "0"], ["0", "1"]],     # n columns of m entries
      "gamma": "1",
      "m": 2,
      "metadata": {"kind": "planted-cvp", "planted": ["1", "0"], "seed": 7},
      "n": 2,
      "target": ["3/4", "1/4"]
    }
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exact_linalg import (
    DegenerateError,
    Vector,
    add,
    format_rational,
    parse_rational,
    scale,
    sqrt_lower,
)
from .lattice_core import LatticeBasis, is_member
from .reference_oracles import brute_cvp, successive_minima

GENERATOR_KINDS = ("uniform", "planted-bdd", "planted-cvp")


class InstanceFormatError(ValueError):
    pass


@dataclass(frozen=True)
class InstanceFile:
    basis: LatticeBasis
    target: Optional[Vector] = None
    gamma: Fraction = Fraction(1)
    metadata: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.basis.n

    @property
    def m(self) -> int:
        return self.basis.m

    @property
    def planted(self) -> Optional[Vector]:
        p = self.metadata.get("planted")
        return None if p is None else tuple(p)

    def to_json(self) -> dict:
        meta = dict(self.metadata)
        if meta.get("planted") is not None:
            meta["planted"] = [format_rational(a) for a in meta["planted"]]
        return {
            "m": self.m,
            "n": self.n,
            "basis": [[format_rational(a) for a in col] for col in self.basis.columns],
            "target": None if self.target is None else [format_rational(a) for a in self.target],
            "gamma": format_rational(self.gamma),
            "metadata": meta,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> "InstanceFile":
        try:
            cols = [[parse_rational(a) for a in col] for col in data["basis"]]
            basis = LatticeBasis(tuple(tuple(c) for c in cols))
            if data.get("m", basis.m) != basis.m or data.get("n", basis.n) != basis.n:
                raise InstanceFormatError("declared m, n do not match the basis")
            target = data.get("target")
            if target is not None:
                target = tuple(parse_rational(a) for a in target)
                if len(target) != basis.m:
                    raise InstanceFormatError("target dimension does not match the basis")
            gamma = parse_rational(data.get("gamma", "1"))
            meta = dict(data.get("metadata") or {})
        except (KeyError, TypeError, DegenerateError) as exc:
            raise InstanceFormatError(f"malformed instance: {exc}") from exc
        if meta.get("planted") is not None:
            planted = tuple(parse_rational(a) for a in meta["planted"])
            if is_member(basis, planted) is None:
                raise InstanceFormatError("planted answer is not a lattice point")
            meta["planted"] = planted
        return cls(basis, target, gamma, meta)

    @classmethod
    def loads(cls, text: str) -> "InstanceFile":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InstanceFormatError(f"not valid JSON: {exc}") from exc
        return cls.from_json(data)

    @classmethod
    def load(cls, path) -> "InstanceFile":
        with open(path) as fh:
            return cls.loads(fh.read())

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.dumps())


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int
    m: int
    entry_bits: int = 4
    seed: int = 0
    bdd_slack: Fraction = Fraction(1, 2)
    gamma: Fraction = Fraction(1)

    def __post_init__(self):
        if self.kind not in GENERATOR_KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if not 1 <= self.n <= self.m:
            raise ValueError("need 1 <= n <= m")
        if self.entry_bits < 1:
            raise ValueError("entry_bits must be at least 1")
        slack = Fraction(self.bdd_slack)
        if not 0 < slack < 1:
            raise ValueError("bdd_slack must lie in (0, 1)")
        object.__setattr__(self, "bdd_slack", slack)
        object.__setattr__(self, "gamma", Fraction(self.gamma))


def random_basis(rng: random.Random, n: int, m: int, bits: int) -> LatticeBasis:
    bound = 2**bits
    while True:
        cols = [[rng.randint(-bound, bound) for _ in range(m)] for _ in range(n)]
        try:
            return LatticeBasis.from_columns(cols)
        except DegenerateError:
            continue


def random_unit_vector(rng: random.Random, m: int) -> Vector:
    """A rational point on the unit sphere (inverse stereographic projection)."""
    if m == 1:
        return (Fraction(rng.choice((-1, 1))),)
    y = [Fraction(rng.randint(-8, 8), rng.randint(1, 4)) for _ in range(m - 1)]
    s = sum(a * a for a in y)
    u = [2 * a / (s + 1) for a in y] + [(s - 1) / (s + 1)]
    rng.shuffle(u)
    return tuple(u)


def random_point(rng: random.Random, B: LatticeBasis, spread: int = 3) -> Vector:
    return B.point([rng.randint(-spread, spread) for _ in range(B.n)]).coords


def plant_bdd(rng: random.Random, B: LatticeBasis, gamma_sq: Fraction, slack: Fraction) -> tuple[Vector, Vector, Fraction]:
    """Return ``(t, p, r)`` with ``t = p + e``, ``||e|| = r`` rational and
    ``r <= slack * lambda_1 / (2 gamma)``, so ``p`` is the unique closest point."""
    lam1_sq = successive_minima(B)[0]
    r = sqrt_lower(slack * slack * lam1_sq / (4 * gamma_sq))
    p = random_point(rng, B)
    e = scale(r, random_unit_vector(rng, B.m))
    return add(p, e), p, r


def planted_cvp(B: LatticeBasis, p: Vector, offset: Vector) -> tuple[Vector, Vector]:
    """Target ``p + offset`` and its brute-force closest lattice point."""
    t = add(tuple(Fraction(a) for a in p), tuple(Fraction(a) for a in offset))
    return t, brute_cvp(B, t).coords


def generate(spec: GeneratorSpec) -> InstanceFile:
    rng = random.Random(f"{spec.kind}:{spec.n}:{spec.m}:{spec.entry_bits}:{spec.seed}")
    B = random_basis(rng, spec.n, spec.m, spec.entry_bits)
    meta = {"seed": spec.seed, "kind": spec.kind, "planted": None}
    if spec.kind == "uniform":
        span = 2 ** (spec.entry_bits + 2)
        t = tuple(Fraction(rng.randint(-span, span), 4) for _ in range(spec.m))
    elif spec.kind == "planted-bdd":
        meta["bdd_slack"] = format_rational(spec.bdd_slack)
        t, p, r = plant_bdd(rng, B, spec.gamma * spec.gamma, spec.bdd_slack)
        if brute_cvp(B, t).coords != p:
            raise RuntimeError("planted point is not the closest vector; generator invariant broken")
        meta["planted"] = p
        meta["distance"] = format_rational(r)
    else:
        p = random_point(rng, B)
        span = 2 ** spec.entry_bits
        offset = tuple(Fraction(rng.randint(-span, span), rng.randint(1, 4)) for _ in range(spec.m))
        t, answer = planted_cvp(B, p, offset)
        meta["planted"] = answer
    return InstanceFile(B, t, spec.gamma, meta)
