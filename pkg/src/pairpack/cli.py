"""Command line front end.

Subcommands: partition, pack, dyson, cn-coeff, conjecture-scan, sumset,
verify.  Exit codes distinguish outcomes so pipelines can tell "no" from
"broken": 0 for feasible/passing, 2 for a certified negative (infeasible
instance, zero coefficient, violated bound, failed verification), 1 for
any error.  Output is JSON with sorted keys (TSV for scan reports on
request); identical configuration, seed included, gives byte-identical
bytes.  Timing is therefore omitted unless --timing asks for it.

Parallelism: --jobs, else the PAIRPACK_JOBS environment variable, else
single-threaded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .algebra import ZZ, ModRing
from .conjectures import scan_conjecture
from .dyson import (DEFAULT_DEGREE_BUDGET, DysonInstance, dyson_bruteforce,
                    dyson_formula, dyson_via_evaluation)
from .nullstellensatz import GridSpec, cn_coefficient, cn_witness
from .poly import BudgetExceeded, MultiPoly
from .solvers import (Infeasible, InvalidInstance, PackingInstance,
                      PairPartition, PartitionInstance,
                      VectorPartitionInstance, check_packing_hypotheses,
                      solve_pair_partition, solve_translate_packing,
                      solve_vector_partition, verify_solution)
from .sumsets import SumsetInstance, check_bound, sumset, verify_cd_bound


class CliError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def _emit(doc) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x != "")
    except ValueError:
        raise CliError(f"expected comma-separated integers, got {text!r}")


def _int_sets(text: str) -> tuple[tuple[int, ...], ...]:
    return tuple(_ints(part) for part in text.split(";"))


def _load(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _jobs(args) -> "int | None":
    if getattr(args, "jobs", None) is not None:
        return args.jobs
    env = os.environ.get("PAIRPACK_JOBS")
    return int(env) if env else None


# ---------------------------------------------------------------------------
# subcommands


def cmd_partition(args) -> int:
    if args.file:
        doc = _load(args.file)
    else:
        if args.n is None or args.d is None:
            raise CliError("need --n and --d, or --file")
        universe = args.universe or ("nonzero" if args.n % 2 else "full")
        doc = {"n": args.n, "universe": universe, "d": list(_ints(args.d))}

    if "bases" in doc:
        inst = VectorPartitionInstance.from_json(doc)
        res = solve_vector_partition(inst)
        if isinstance(res, Infeasible):
            _emit(res.to_json())
            return 2
        pairs, g = res
        _emit({"result": "feasible",
               "pairs": [[list(x), list(y)] for x, y in pairs],
               "g": list(g)})
        return 0

    inst = PartitionInstance.from_json(doc)
    res = solve_pair_partition(inst)
    _emit(res.to_json())
    return 2 if isinstance(res, Infeasible) else 0


def cmd_pack(args) -> int:
    if args.file:
        doc = _load(args.file)
    else:
        if None in (args.n, args.X, args.T, args.d):
            raise CliError("need --n, --X, --T and --d, or --file")
        ambient = args.n if args.n == "integers" else int(args.n)
        doc = {"n": ambient,
               "X": [list(s) for s in _int_sets(args.X)],
               "T": [list(s) for s in _int_sets(args.T)],
               "d": args.d}
    inst = PackingInstance.from_json(doc)
    report = check_packing_hypotheses(inst).to_json()
    res = solve_translate_packing(inst)
    if isinstance(res, Infeasible):
        _emit({"result": "infeasible", "nodes": res.nodes,
               "hypotheses": report})
        return 2
    _emit({"result": "feasible", "t": list(res), "hypotheses": report})
    return 0


def cmd_dyson(args) -> int:
    inst = DysonInstance(_ints(args.a))
    formula = dyson_formula(inst)
    brute = dyson_bruteforce(inst, args.max_degree)
    evaluated = dyson_via_evaluation(inst)
    _emit({"a": list(inst.a), "formula": formula, "bruteforce": brute,
           "evaluation": evaluated})
    return 0 if formula == brute == evaluated else 1


def cmd_cn_coeff(args) -> int:
    ring = ModRing(args.mod) if args.mod else ZZ
    f = MultiPoly.from_json(ring, _load(args.file))
    grid = GridSpec(_int_sets(args.grid))
    coeff = cn_coefficient(f, grid)
    doc = {"coefficient": coeff, "nonzero": coeff != 0}
    if args.witness:
        point = cn_witness(f, grid)
        doc["witness"] = list(point) if point is not None else None
    _emit(doc)
    return 0 if coeff != 0 else 2


def cmd_conjecture_scan(args) -> int:
    report = scan_conjecture(args.n, sample=args.sample, seed=args.seed,
                             jobs=_jobs(args), checkpoint=args.checkpoint)
    if args.format == "tsv":
        cols = ["n", "universe", "total", "feasible", "failures"]
        vals = [report.n, report.universe, report.instances_total,
                report.instances_feasible,
                ";".join(",".join(map(str, f)) for f in report.failures)
                or "-"]
        if args.timing:
            cols.append("seconds")
            vals.append(round(report.wall_time, 3))
        print("\t".join(cols))
        print("\t".join(str(v) for v in vals))
    else:
        _emit(report.to_json(include_timing=args.timing))
    return 0 if not report.failures else 2


def cmd_sumset(args) -> int:
    if args.A is not None or args.B is not None:
        if args.A is None or args.B is None:
            raise CliError("--A and --B go together")
        inst = SumsetInstance(args.p, args.alpha, _ints(args.A),
                              _ints(args.B))
        card, bound, holds, tight = check_bound(inst)
        _emit({"p": inst.p, "alpha": inst.alpha, "A": list(inst.A),
               "B": list(inst.B),
               "sum": list(sumset(inst.A, inst.B, inst.modulus)),
               "cardinality": card, "beta": bound, "holds": holds,
               "tight": tight})
        return 0 if holds else 2
    report = verify_cd_bound(args.p, args.alpha, sample=args.sample,
                             seed=args.seed, jobs=_jobs(args),
                             tight_cap=args.tight_cap)
    _emit(report.to_json(include_timing=args.timing))
    return 0 if not report.violations else 2


def cmd_verify(args) -> int:
    inst_doc = _load(args.instance)
    sol_doc = _load(args.solution)
    if "bases" in inst_doc:
        inst = VectorPartitionInstance.from_json(inst_doc)
    elif "X" in inst_doc:
        inst = PackingInstance.from_json(inst_doc)
    else:
        inst = PartitionInstance.from_json(inst_doc)

    if sol_doc.get("result") != "feasible":
        _emit({"verified": False})
        return 2

    if isinstance(inst, PackingInstance):
        solution = tuple(sol_doc["t"])
    elif isinstance(inst, VectorPartitionInstance):
        pairs = tuple((tuple(x), tuple(y)) for x, y in sol_doc["pairs"])
        solution = (pairs, tuple(sol_doc["g"]))
    else:
        solution = PairPartition(tuple((x, y) for x, y in sol_doc["pairs"]))

    ok = verify_solution(inst, solution)
    _emit({"verified": ok})
    return 0 if ok else 2


# ---------------------------------------------------------------------------
# wiring


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="pairpack",
                  description="pair partitions, translate packings and "
                              "sumset bounds over Z/(n)")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", parents=[], add_help=True,
                       help="solve a prescribed-difference pair partition")
    p.add_argument("--n", type=int, help="modulus")
    p.add_argument("--d", help="comma-separated differences")
    p.add_argument("--universe", choices=["nonzero", "full"])
    p.add_argument("--file", help="instance JSON (plain or vector form)")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("pack", help="solve a translate packing")
    p.add_argument("--n", help="modulus, or 'integers'")
    p.add_argument("--X", help="semicolon-separated sets, e.g. 0;0,1")
    p.add_argument("--T", help="semicolon-separated translate sets")
    p.add_argument("--d", type=int, help="packing parameter")
    p.add_argument("--file", help="instance JSON")
    p.set_defaults(func=cmd_pack)

    p = sub.add_parser("dyson", help="constant term three ways")
    p.add_argument("--a", required=True, help="comma-separated exponents")
    p.add_argument("--max-degree", type=int, default=DEFAULT_DEGREE_BUDGET,
                   help="expansion budget for the brute-force route")
    p.set_defaults(func=cmd_dyson)

    p = sub.add_parser("cn-coeff",
                       help="grid interpolation coefficient of a polynomial")
    p.add_argument("--file", required=True, help="polynomial JSON")
    p.add_argument("--grid", required=True,
                   help="semicolon-separated axis sets, e.g. 0,1;0,1,2")
    p.add_argument("--mod", type=int, help="work mod this (default: exact)")
    p.add_argument("--witness", action="store_true",
                   help="also search the grid for a nonvanishing point")
    p.set_defaults(func=cmd_cn_coeff)

    p = sub.add_parser("conjecture-scan",
                       help="feasibility scan over unit difference vectors")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sample", type=int, help="sample size (default: all)")
    p.add_argument("--seed", type=int, help="mandatory with --sample")
    p.add_argument("--jobs", type=int)
    p.add_argument("--checkpoint", help="shard progress file for resume")
    p.add_argument("--format", choices=["json", "tsv"], default="json")
    p.add_argument("--timing", action="store_true",
                   help="include wall time in the output")
    p.set_defaults(func=cmd_conjecture_scan)

    p = sub.add_parser("sumset",
                       help="cardinality bound checks in Z/(p^alpha)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--alpha", type=int, default=1)
    p.add_argument("--A", help="check a single pair: first subset")
    p.add_argument("--B", help="check a single pair: second subset")
    p.add_argument("--sample", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--jobs", type=int)
    p.add_argument("--tight-cap", type=int, default=32,
                   help="how many equality pairs to keep in the report")
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_sumset)

    p = sub.add_parser("verify",
                       help="re-check an emitted solution against its instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--solution", required=True)
    p.set_defaults(func=cmd_verify)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InvalidInstance, BudgetExceeded, ValueError, ArithmeticError,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
