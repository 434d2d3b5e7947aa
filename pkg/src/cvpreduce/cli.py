"""Command-line front end.

Exit codes: 0 success (bounds hold), 1 bound violation or failed check,
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .bdd_embed import solve_bdd
from .cvp_reduce import CvpInstance, collect_bit_stats, cvp_solve
from .exact_linalg import format_rational, norm_sq, parse_rational, sub
from .instances import GENERATOR_KINDS, GeneratorSpec, InstanceFile, InstanceFormatError, generate
from .lattice_core import is_member
from .reference_oracles import BudgetExceeded, EnumerationBudget, cvp_distance_sq
from .svp_oracle import OracleSpec, oracle_query

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

EXPECTATIONS = "expectations.json"


class UsageError(Exception):
    pass


def fmt_vec(v) -> str:
    return "(" + ", ".join(format_rational(a) for a in v) + ")"


def _load(path) -> InstanceFile:
    try:
        return InstanceFile.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except (InstanceFormatError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def _need_target(inst: InstanceFile, path) -> None:
    if inst.target is None:
        raise UsageError(f"{path} has no target vector")


def _oracle(text: str) -> OracleSpec:
    try:
        return OracleSpec.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_gen(args, out) -> int:
    spec = GeneratorSpec(
        args.kind, args.n, args.m or args.n, args.bits, args.seed,
        parse_rational(args.slack), parse_rational(args.gamma),
    )
    text = generate(spec).dumps()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_svp(args, out) -> int:
    inst = _load(args.instance)
    res = oracle_query(_oracle(args.oracle), inst.basis)
    out.write(f"vector {fmt_vec(res.vector.coords)}\n")
    out.write(f"coeffs {fmt_vec(res.vector.coeffs)}\n")
    out.write(f"norm2 {format_rational(norm_sq(res.vector.coords))}\n")
    return EXIT_OK


def _reference_dist_sq(inst: InstanceFile, budget: EnumerationBudget):
    try:
        return cvp_distance_sq(inst.basis, inst.target, budget)
    except BudgetExceeded:
        return None


def cmd_cvp(args, out) -> int:
    inst = _load(args.instance)
    _need_target(inst, args.instance)
    res = cvp_solve(CvpInstance(inst.basis, inst.target, _oracle(args.oracle)))
    out.write(f"answer {fmt_vec(res.answer.coords)}\n")
    out.write(f"coeffs {fmt_vec(res.answer.coeffs)}\n")
    out.write(f"dist2 {format_rational(res.dist_sq_achieved)}\n")
    out.write(f"bits {collect_bit_stats(res.trace)}\n")
    if args.emit_trace:
        with open(args.emit_trace, "w") as fh:
            fh.write(res.trace.dump())
    if args.output:
        with open(args.output, "w") as fh:
            json.dump({"answer": [format_rational(a) for a in res.answer.coords]}, fh, indent=2)
            fh.write("\n")
    opt = _reference_dist_sq(inst, EnumerationBudget(max_dim=args.max_dim))
    if opt is None:
        out.write("bound-unchecked\n")
        return EXIT_OK
    if res.within_bound(opt):
        out.write("bound-ok\n")
        return EXIT_OK
    out.write(f"bound-violated optimum {format_rational(opt)}\n")
    return EXIT_VIOLATION


def cmd_bdd(args, out) -> int:
    inst = _load(args.instance)
    _need_target(inst, args.instance)
    res = solve_bdd(inst.basis, inst.target, _oracle(args.oracle))
    out.write(f"candidate {fmt_vec(res.candidate.coords)}\n")
    out.write(f"dist2 {format_rational(norm_sq(sub(res.candidate.coords, inst.target)))}\n")
    out.write(f"certified {'yes' if res.promise_certified else 'no'}\n")
    return EXIT_OK


def _load_answer(path, m: int):
    try:
        with open(path) as fh:
            data = json.load(fh)
        ans = tuple(parse_rational(a) for a in data["answer"])
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"malformed answer file {path}: {exc}") from exc
    if len(ans) != m:
        raise UsageError("answer dimension does not match the instance")
    return ans


def cmd_check(args, out) -> int:
    inst = _load(args.instance)
    _need_target(inst, args.instance)
    ans = _load_answer(args.answer, inst.m)
    if is_member(inst.basis, ans) is None:
        out.write("not a lattice member\n")
        return EXIT_VIOLATION
    dist = norm_sq(sub(ans, inst.target))
    opt = _reference_dist_sq(inst, EnumerationBudget(max_dim=args.max_dim))
    if opt is None:
        out.write(f"member; dist2 {format_rational(dist)}; bound-unchecked\n")
        return EXIT_OK
    g2 = inst.gamma * inst.gamma
    if dist <= g2 * g2 * inst.n * opt:
        out.write(f"member; dist2 {format_rational(dist)}; optimum {format_rational(opt)}; bound-ok\n")
        return EXIT_OK
    out.write(f"member; dist2 {format_rational(dist)}; optimum {format_rational(opt)}; bound-violated\n")
    return EXIT_VIOLATION


def build_corpus(directory, count: int, seed: int, max_n: int = 6, bits: int = 8) -> list[str]:
    """Write a deterministic regression corpus plus its expectations file."""
    os.makedirs(directory, exist_ok=True)
    names = []
    expectations = {}
    for i in range(count):
        n = 2 + i % (max_n - 1)
        kind = ("uniform", "planted-cvp", "planted-bdd")[i % 3]
        inst = generate(GeneratorSpec(kind, n, n, 1 + (seed + i) % bits, seed * 1000 + i))
        name = f"inst_{i:03d}.json"
        inst.save(os.path.join(directory, name))
        res = cvp_solve(CvpInstance(inst.basis, inst.target))
        M = res.trace.M
        expectations[name] = {
            "dist_sq": format_rational(cvp_distance_sq(inst.basis, inst.target)),
            "M": M,
            "bit_gate": 64 * M * M,
        }
        names.append(name)
    with open(os.path.join(directory, EXPECTATIONS), "w") as fh:
        json.dump(expectations, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return names


def run_corpus(directory, oracle: OracleSpec, out) -> int:
    try:
        with open(os.path.join(directory, EXPECTATIONS)) as fh:
            expectations = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read expectations in {directory}: {exc.strerror}") from exc
    failures = 0
    max_bits = 0
    for name in sorted(expectations):
        inst = _load(os.path.join(directory, name))
        exp = expectations[name]
        res = cvp_solve(CvpInstance(inst.basis, inst.target, oracle))
        bits = collect_bit_stats(res.trace)
        max_bits = max(max_bits, bits)
        bound_ok = res.within_bound(parse_rational(exp["dist_sq"]))
        bits_ok = bits <= exp["bit_gate"] and res.trace.M == exp["M"]
        ok = bound_ok and bits_ok
        failures += not ok
        out.write(
            f"{name} {'PASS' if ok else 'FAIL'} dist2={format_rational(res.dist_sq_achieved)} "
            f"opt={exp['dist_sq']} bits={bits} gate={exp['bit_gate']}\n"
        )
    out.write(f"corpus {len(expectations)} instances, {failures} failures, max bits {max_bits}\n")
    return EXIT_VIOLATION if failures else EXIT_OK


def cmd_corpus(args, out) -> int:
    if args.build:
        names = build_corpus(args.dir, args.count, args.seed)
        out.write(f"wrote {len(names)} instances to {args.dir}\n")
        return EXIT_OK
    return run_corpus(args.dir, _oracle(args.oracle), out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cvpreduce", description="Approximate CVP through an SVP oracle.")
    sub_p = p.add_subparsers(dest="command", required=True)

    g = sub_p.add_parser("gen", help="generate an instance file")
    g.add_argument("--kind", choices=GENERATOR_KINDS, default="uniform")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, default=None)
    g.add_argument("--bits", type=int, default=4)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--slack", default="1/2")
    g.add_argument("--gamma", default="1")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    for name, func, help_text in (
        ("svp", cmd_svp, "query an SVP oracle"),
        ("cvp", cmd_cvp, "approximate CVP via the reduction"),
        ("bdd", cmd_bdd, "bounded distance decoding via embedding"),
    ):
        s = sub_p.add_parser(name, help=help_text)
        s.add_argument("--instance", required=True)
        s.add_argument("--oracle", default="exact")
        if name == "cvp":
            s.add_argument("--emit-trace")
            s.add_argument("--output", help="write the answer as JSON")
            s.add_argument("--max-dim", type=int, default=10)
        s.set_defaults(func=func)

    c = sub_p.add_parser("check", help="validate an answer file")
    c.add_argument("--instance", required=True)
    c.add_argument("--answer", required=True)
    c.add_argument("--max-dim", type=int, default=10)
    c.set_defaults(func=cmd_check)

    r = sub_p.add_parser("corpus", help="run or build the regression corpus")
    r.add_argument("--dir", required=True)
    r.add_argument("--oracle", default="exact")
    r.add_argument("--build", action="store_true")
    r.add_argument("--count", type=int, default=30)
    r.add_argument("--seed", type=int, default=1)
    r.set_defaults(func=cmd_corpus)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
