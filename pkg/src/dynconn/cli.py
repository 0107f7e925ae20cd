"""Command line front end: bench, verify, gen-workload."""

from __future__ import annotations

import argparse
import sys

from .bench import emit_csv, run_benchmark
from .core import STRUCTURE_NAMES, make_structure
from .datasets import gen_graph, parse_dataset_spec
from .memmodel import model_from_env
from .oracle import OracleGraph
from .workload import (
    WorkloadConfig,
    generate_churn,
    generate_updates,
    place_testing_points,
    read_workload,
    validate_replay,
    write_workload,
)


def _canonical(labels):
    rep = {}
    out = {}
    for v in sorted(labels):
        lab = labels[v]
        if lab not in rep:
            rep[lab] = v
        out[v] = rep[lab]
    return out


def _structures_arg(value: str):
    if value == "all":
        return list(STRUCTURE_NAMES)
    names = [v.strip() for v in value.split(",") if v.strip()]
    for name in names:
        if name not in STRUCTURE_NAMES:
            raise argparse.ArgumentTypeError(
                f"unknown structure {name!r}; pick from {', '.join(STRUCTURE_NAMES)} or 'all'"
            )
    return names


def _build_ops(args):
    if getattr(args, "workload", None):
        ops, meta = read_workload(args.workload)
        n = 1 + max((max(op[1], op[2]) for op in ops if op[0] != "Q"), default=0)
        return ops, n, f"workload:{args.workload}"
    spec = parse_dataset_spec(args.dataset)
    edges, n = gen_graph(spec, seed=args.seed)
    cfg = WorkloadConfig(
        u_r=args.ur,
        test_num=args.test_num,
        queries_per_point=args.queries_per_point,
        seed=args.seed,
    )
    ops = generate_updates(edges, cfg)
    ops = place_testing_points(ops, cfg) if cfg.test_num > 0 else ops
    return ops, n, args.dataset


def cmd_bench(args) -> int:
    ops, n, label = _build_ops(args)
    model = model_from_env()
    rows = []
    for name in args.structure:
        res = run_benchmark(
            name,
            label,
            ops,
            n,
            args.ur,
            args.seed,
            model=model,
            timeout_secs=args.timeout_secs,
            beta=args.beta,
        )
        rows.extend(res.rows)
        status = "TIMEOUT" if res.timed_out else "ok"
        print(f"bench {name:6s} {label} ops={res.ops_done} [{status}]")
        if res.timed_out:
            print(f"  warning: {name} stopped after {args.timeout_secs}s", file=sys.stderr)
    emit_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def cmd_verify(args) -> int:
    universe, n = gen_graph(("gnm", args.n, 3 * args.n), seed=args.seed)
    cfg = WorkloadConfig(u_r=3, seed=args.seed)
    ops = generate_churn(universe, cfg, args.ops)
    validate_replay(ops)
    failures = 0
    for name in args.structure:
        s = make_structure(name, seed=args.seed)
        oracle = OracleGraph()
        bad = None
        for idx, op in enumerate(ops):
            if op[0] == "I":
                s.insert_edge(op[1], op[2])
                oracle.insert_edge(op[1], op[2])
            else:
                s.delete_edge(op[1], op[2])
                oracle.delete_edge(op[1], op[2])
            if _canonical(s.component_labels()) != _canonical(oracle.component_labels()):
                bad = (idx, op)
                break
        if bad is None:
            print(f"verify {name:6s} PASS ({len(ops)} ops, n={args.n})")
        else:
            failures += 1
            print(f"verify {name:6s} FAIL at op {bad[0]}: {bad[1]}")
    return 1 if failures else 0


def cmd_gen_workload(args) -> int:
    spec = parse_dataset_spec(args.dataset)
    edges, n = gen_graph(spec, seed=args.seed)
    cfg = WorkloadConfig(
        u_r=args.ur,
        test_num=args.test_num,
        queries_per_point=args.queries_per_point,
        seed=args.seed,
    )
    ops = generate_updates(edges, cfg)
    ops = place_testing_points(ops, cfg) if cfg.test_num > 0 else ops
    validate_replay(ops)
    write_workload(args.out, ops, args.seed, args.ur)
    print(f"wrote {len(ops)} operations ({n} vertices) to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dynconn", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bench", help="replay a workload and write a CSV report")
    b.add_argument("--structure", type=_structures_arg, default="all",
                   help="structure name, comma list, or 'all'")
    b.add_argument("--dataset", default="gnm:1000,3000",
                   help="file:PATH | star:N | path:N | complete:N | gnm:N,M | powerlaw:N,M")
    b.add_argument("--workload", default=None, help="replay a workload file instead")
    b.add_argument("--ur", type=int, default=1000, help="insertions per deletion")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--test-num", type=int, default=0, help="number of query testing points")
    b.add_argument("--queries-per-point", type=int, default=1000)
    b.add_argument("--timeout-secs", type=int, default=0)
    b.add_argument("--beta", type=int, default=2, help="lazy local tree buffer threshold")
    b.add_argument("--out", default="bench.csv")
    b.set_defaults(func=cmd_bench)

    v = sub.add_parser("verify", help="oracle equivalence suite on a random churn workload")
    v.add_argument("--n", type=int, default=100)
    v.add_argument("--ops", type=int, default=2000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--structure", type=_structures_arg, default="all")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gen-workload", help="write a replayable workload file")
    g.add_argument("--dataset", default="gnm:1000,3000")
    g.add_argument("--ur", type=int, default=1000)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--test-num", type=int, default=0)
    g.add_argument("--queries-per-point", type=int, default=1000)
    g.add_argument("--out", default="workload.txt")
    g.set_defaults(func=cmd_gen_workload)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if isinstance(getattr(args, "structure", None), str):
        args.structure = _structures_arg(args.structure)  # plain default value
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
