"""sgtree command line: tables, sampling, distances, predictions, experiments."""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional

from . import asymptotics, oracle
from .harness import ExperimentSpec, run_experiment
from .partition import build_ztable, load_ztable, save_ztable, write_ztable_csv
from .sampler import RandomSource, sample_composition, rotate_word
from .trees import branch_sizes_word, read_trees, tree_distance
from .weights import WeightSequence


def _load_weights(arg: str) -> WeightSequence:
    """Inline JSON, or a path to a JSON file."""
    if os.path.exists(arg):
        with open(arg, "r", encoding="utf-8") as fh:
            return WeightSequence.from_config(json.load(fh))
    return WeightSequence.from_config(json.loads(arg))


def _cmd_ztable(args: argparse.Namespace) -> int:
    ws = _load_weights(args.weights)
    table = build_ztable(
        ws,
        args.nmax,
        exact_upto=args.exact_upto,
        truncate=args.truncate,
        allow_large=args.allow_large,
    )
    save_ztable(table, args.out)
    if args.dump_csv:
        write_ztable_csv(table, args.dump_csv)
    print(f"wrote {args.out}: n_max={args.nmax}, logZ_N(n_max)={table.log_z_n(args.nmax):.6f}")
    return 0


def _cmd_sample(args: argparse.Namespace) -> int:
    ws = _load_weights(args.weights)
    if args.table and os.path.exists(args.table):
        table = load_ztable(args.table)
        if table.ws.to_config() != ws.to_config():
            raise SystemExit("table weight family does not match --weights")
        if table.n_max < args.n:
            raise SystemExit(f"table bound {table.n_max} below requested size {args.n}")
    else:
        table = build_ztable(ws, args.n, allow_large=args.allow_large)
    gen = RandomSource(args.seed, args.stream).generator()
    out = open(args.out, "w", encoding="ascii") if args.out else sys.stdout
    try:
        if args.stats_only:
            words = []
            for _ in range(args.count):
                comp = sample_composition(table, args.n, args.n - 1, gen)
                words.append(rotate_word(comp))
            max_deg = max(2, max((max(w) + 1) for w in words))
            cols = ["sigma_s"] + [f"x{d}" for d in range(2, max_deg + 1)] + ["max_branch_size"]
            out.write(",".join(cols) + "\n")
            for w in words:
                sizes = branch_sizes_word(w)
                row = [str(w[0] + 1)]
                row += [str(w.count(d - 1)) for d in range(2, max_deg + 1)]
                row.append(str(max(sizes) if sizes else 0))
                out.write(",".join(row) + "\n")
        else:
            for _ in range(args.count):
                comp = sample_composition(table, args.n, args.n - 1, gen)
                out.write(" ".join(str(d) for d in rotate_word(comp)) + "\n")
    finally:
        if args.out:
            out.close()
    return 0


def _cmd_distance(args: argparse.Namespace) -> int:
    left = read_trees(args.file_a)
    right = read_trees(args.file_b)
    if not left or not right:
        raise SystemExit("both files must contain at least one tree")
    d = tree_distance(left[0], right[0])
    print(str(d))
    return 0


def _cmd_predict(args: argparse.Namespace) -> int:
    prediction = asymptotics.predict(args.alpha, args.n, eta=args.eta)
    payload = {
        "alpha": prediction.alpha,
        "n_edges": prediction.n_edges,
        "k_cutoff": prediction.k_cutoff,
        "scales": list(prediction.scales),
        "centers": list(prediction.centers),
        "poisson_mean": prediction.poisson_mean,
        "objective_max": prediction.objective_max,
        "log_zn_prediction": prediction.log_zn,
    }
    print(json.dumps(payload, indent=2))
    return 0


def _cmd_oracle_check(args: argparse.Namespace) -> int:
    ws = _load_weights(args.weights)
    measure = oracle.exact_nu(args.n, ws)
    table = build_ztable(ws, args.n, exact_upto=args.n if ws.is_exact else 0)
    log_oracle = oracle.log_total_weight(measure, ws)
    log_dp = table.log_z_n(args.n)
    rel = abs(math.expm1(log_oracle - log_dp))
    payload = {
        "n_edges": args.n,
        "tree_count": len(measure.entries),
        "log_zn_oracle": log_oracle,
        "log_zn_table": log_dp,
        "rel_error": rel,
        "exact_mode": measure.exact,
    }
    if measure.exact:
        payload["exact_equal"] = measure.total == table.exact_z_n(args.n)
    print(json.dumps(payload, indent=2))
    return 0 if rel < 1e-9 else 1


def _cmd_experiment(args: argparse.Namespace) -> int:
    with open(args.spec, "r", encoding="utf-8") as fh:
        spec = ExperimentSpec.from_json(fh.read())
    report = run_experiment(spec, emit_csv_dir=args.emit_csv)
    text = report.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        print(
            f"{status} {check.name}: {check.value:.6g} {check.op} {check.threshold:.6g}",
            file=sys.stderr,
        )
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sgtree", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ztable", help="build and persist a Z(N,n) table")
    p.add_argument("--weights", required=True, help="weight family JSON (inline or path)")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--exact-upto", type=int, default=0, dest="exact_upto")
    p.add_argument("--truncate", action="store_true")
    p.add_argument("--allow-large", action="store_true", dest="allow_large")
    p.add_argument("--out", required=True)
    p.add_argument("--dump-csv", default=None, dest="dump_csv")
    p.set_defaults(func=_cmd_ztable)

    p = sub.add_parser("sample", help="draw exact samples from the tree measure")
    p.add_argument("--weights", required=True)
    p.add_argument("--n", type=int, required=True, help="number of edges")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stream", type=int, default=0)
    p.add_argument("--table", default=None, help="reuse a saved table")
    p.add_argument("--out", default=None)
    p.add_argument("--stats-only", action="store_true", dest="stats_only")
    p.add_argument("--allow-large", action="store_true", dest="allow_large")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("distance", help="local-topology distance between two trees")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(func=_cmd_distance)

    p = sub.add_parser("predict", help="asymptotic predictions for factorial-power weights")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eta", type=float, default=asymptotics.DEFAULT_ETA)
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("oracle-check", help="compare the table against full enumeration")
    p.add_argument("--weights", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_oracle_check)

    p = sub.add_parser("experiment", help="run a JSON experiment spec")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--emit-csv", default=None, dest="emit_csv")
    p.set_defaults(func=_cmd_experiment)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
