"""Command-line entry point: ``cyclemod <subcommand> ...``.

Exit codes are a fixed contract:
0 success (or no cycle found), 10 cycle found, 11 bound mismatch,
12 lemma failure, 2 usage or parse error, 3 cycle cap exceeded,
4 search budget exhausted.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import sys
from pathlib import Path

from .gadgets import (
    AdjustablePathSpec,
    GadgetError,
    K4SubdivisionSpec,
    ThetaSpec,
    build_Gn,
    build_k4_subdivision,
    build_L8,
    build_L13,
    build_necklace,
    build_T1,
    build_T2,
    build_theta,
)
from .graph_core import GraphError, read_graph, write_graph
from .modcycle import DEFAULT_CAP, ZERO_MOD_FOUR, CycleCapExceeded, ResidueClass, has_cycle_mod, residue_histogram

EXIT_OK = 0
EXIT_CYCLE = 10
EXIT_MISMATCH = 11
EXIT_LEMMA = 12
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_BUDGET = 4

CONFIG_KEYS = {"workers": int, "budget": int, "cap": int, "cache_dir": str, "trials": int, "size_budget": int, "seed": int}


class UsageError(Exception):
    pass


def _read_config(path: str) -> dict:
    cp = configparser.ConfigParser()
    try:
        text = Path(path).read_text()
        cp.read_string("[defaults]\n" + text)
    except (OSError, configparser.Error) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    out = {}
    for key, value in cp["defaults"].items():
        key = key.replace("-", "_")
        if key not in CONFIG_KEYS:
            raise UsageError(f"unknown config key {key!r}")
        try:
            out[key] = CONFIG_KEYS[key](value)
        except ValueError:
            raise UsageError(f"bad value for {key}: {value!r}") from None
    return out


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


# detect --------------------------------------------------------------------------


def cmd_detect(args) -> int:
    rc = ResidueClass(args.residue, args.mod)
    if args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(args.input).read_text()
        except OSError as exc:
            raise UsageError(str(exc)) from None
    try:
        g = read_graph(text, args.format)
    except GraphError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        w = has_cycle_mod(g, rc, cap=args.cap, fast_path=args.fast_path)
        hist = residue_histogram(g, args.mod, cap=args.cap) if args.histogram else None
    except CycleCapExceeded as exc:
        print(f"CAP_EXCEEDED: {exc}", file=sys.stderr)
        return EXIT_CAP
    if args.json:
        report = {"n": g.n, "m": g.m, "residue": rc.ell, "mod": rc.k, "found": w is not None,
                  "witness": list(w.vertices) if w else None}
        if hist is not None:
            report["histogram"] = hist.as_dict()
        print(json.dumps(report, sort_keys=True))
    else:
        print(f"CYCLE_FOUND length={w.length}" if w else "NO_CYCLE")
        if w and args.witness:
            print(str(w))
        if hist is not None:
            for r, c in enumerate(hist.counts):
                print(f"residue {r} mod {args.mod}: {c}")
    return EXIT_CYCLE if w else EXIT_OK


# construct --------------------------------------------------------------------------


def _adjustable(text: str) -> AdjustablePathSpec:
    vals = _int_list(text)
    if len(vals) != 4:
        raise argparse.ArgumentTypeError("adjustable path needs tail1,cycle_len,tail2,attach_gap")
    try:
        return AdjustablePathSpec(*vals)
    except GadgetError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _build(args):
    kind = args.gadget
    if kind == "theta":
        if not args.lengths or len(args.lengths) != 3:
            raise UsageError("theta needs --lengths a,b,c")
        return build_theta(ThetaSpec(*args.lengths))
    if kind == "necklace":
        if not args.adjustable or len(args.adjustable) != 3:
            raise UsageError("necklace needs three --adjustable t1,L,t2,gap")
        return build_necklace(*args.adjustable)
    if kind == "k4sub":
        if not args.lengths or len(args.lengths) != 6:
            raise UsageError("k4sub needs --lengths with six values (edges 12,13,14,23,24,34)")
        return build_k4_subdivision(K4SubdivisionSpec(tuple(args.lengths)))
    if kind == "gn":
        if args.n is None or args.n < 2:
            raise UsageError("gn needs --n N with N >= 2")
        return build_Gn(args.n)
    return {"t1": build_T1, "t2": build_T2, "l8": build_L8, "l13": build_L13}[kind]()


def cmd_construct(args) -> int:
    try:
        gad = _build(args)
    except GadgetError as exc:
        raise UsageError(str(exc)) from None
    g = gad.graph
    _emit(write_graph(g, args.format), args.out)
    try:
        verdict = "cycle found" if has_cycle_mod(g, ZERO_MOD_FOUR, cap=args.cap) else "no cycle"
    except CycleCapExceeded:
        verdict = "undetermined (cycle cap exceeded)"
    footer = f"n={g.n} e={g.m} (0 mod 4)-cycle: {verdict}"
    print(footer, file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return EXIT_OK


# search ------------------------------------------------------------------------------


def cmd_search(args) -> int:
    from .extremal_search import (
        FEASIBLE_MAX_N,
        SearchConfig,
        cached_ex_exact,
        formula_bound,
        refute_above_bound,
    )

    if not 1 <= args.n <= FEASIBLE_MAX_N:
        raise UsageError(f"--n must be in 1..{FEASIBLE_MAX_N}")
    if args.refute is not None:
        cfg = SearchConfig(args.n, "refute", target_edges=args.refute, workers=args.workers,
                           node_budget=args.budget, prune=not args.no_prune)
        res = refute_above_bound(cfg)
        _emit(res.to_json(timing=args.timing), args.out)
        if not res.complete:
            print("BUDGET_EXHAUSTED", file=sys.stderr)
            return EXIT_BUDGET
        if res.exists:
            print(f"graph with {res.target_edges} edges exists: {res.witness}", file=sys.stderr)
            return EXIT_MISMATCH if res.target_edges > formula_bound(args.n).value else EXIT_OK
        print("no graph", file=sys.stderr)
        return EXIT_OK
    cfg = SearchConfig(args.n, workers=args.workers, node_budget=args.budget, prune=not args.no_prune)
    res = cached_ex_exact(cfg, args.cache_dir)
    _emit(res.to_json(timing=args.timing), args.out)
    if not res.complete:
        print("BUDGET_EXHAUSTED", file=sys.stderr)
        return EXIT_BUDGET
    bound = formula_bound(args.n).value
    print(f"n={args.n} max_edges={res.max_edges} formula={bound}", file=sys.stderr)
    return EXIT_OK if res.max_edges == bound else EXIT_MISMATCH


# table --------------------------------------------------------------------------------

MISSING = "\u2014"  # em dash marks "not searched"


def table_rows(n_max: int, cache_dir: str | None) -> list[dict]:
    from .extremal_search import formula_bound, load_cached_value

    rows = []
    for n in range(2, n_max + 1):
        f = formula_bound(n).value
        g = build_Gn(n).graph
        cons = g.m
        searched = load_cached_value(cache_dir, n)
        agree = cons == f and (searched is None or searched == f)
        rows.append({
            "n": n,
            "formula": f,
            "search": MISSING if searched is None else searched,
            "construction": cons,
            "status": "ok" if agree else "MISMATCH",
        })
    return rows


def cmd_table(args) -> int:
    rows = table_rows(args.n_max, args.cache_dir)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=["n", "formula", "search", "construction", "status"], lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    _emit(buf.getvalue(), args.out)
    return EXIT_OK if all(r["status"] == "ok" for r in rows) else EXIT_MISMATCH


# lemmas ---------------------------------------------------------------------------------


def cmd_verify_lemma(args) -> int:
    from .lemma_lab import TrialConfig, verify

    try:
        cfg = TrialConfig(seed=args.seed, trials=args.trials, size_budget=args.size_budget, workers=args.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep = verify(args.lemma, cfg)
    _emit(rep.to_json(timing=args.timing), args.out)
    if rep.ok:
        return EXIT_OK
    if rep.first_counterexample is not None:
        path = Path(args.counterexample or f"counterexample_{args.lemma}_seed{args.seed}.json")
        path.write_text(json.dumps(rep.first_counterexample, indent=2, sort_keys=True) + "\n")
        print(f"LEMMA_FAILURE counterexample written to {path}", file=sys.stderr)
    else:
        print(f"LEMMA_FAILURE skipped={rep.skipped}", file=sys.stderr)
    return EXIT_LEMMA


def cmd_replay(args) -> int:
    from .lemma_lab import format_trace, replay

    try:
        text = Path(args.record).read_text()
        trace = replay(text)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot replay {args.record}: {exc}") from None
    _emit(format_trace(trace), args.out)
    ok = trace["conclusion"] == "conclusion holds" and trace["hypothesis"] == "hypothesis holds"
    return EXIT_OK if ok else EXIT_LEMMA


# parser -------------------------------------------------------------------------------------


def build_parser(defaults: dict | None = None) -> argparse.ArgumentParser:
    from .lemma_lab import LEMMA_IDS

    d = {"workers": 1, "budget": 5_000_000, "cap": DEFAULT_CAP, "cache_dir": None,
         "trials": 1000, "size_budget": 24, "seed": 0}
    d.update(defaults or {})
    p = argparse.ArgumentParser(prog="cyclemod", description="Cycles of prescribed length modulo k.")
    p.add_argument("--config", help="key=value file with default settings (flags override)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("detect", help="look for a cycle of length L mod K")
    s.add_argument("--input", required=True, help="graph file, or - for stdin")
    s.add_argument("--format", choices=["graph6", "edgelist"], default="graph6")
    s.add_argument("--residue", type=int, default=0)
    s.add_argument("--mod", type=int, default=4)
    s.add_argument("--witness", action="store_true", help="print the witness cycle")
    s.add_argument("--histogram", action="store_true", help="count all cycles by residue")
    s.add_argument("--json", action="store_true")
    s.add_argument("--fast-path", action="store_true", help="dense-graph shortcut for (0 mod 4)")
    s.add_argument("--cap", type=int, default=d["cap"])
    s.set_defaults(func=cmd_detect)

    s = sub.add_parser("construct", help="build a gadget or extremal graph")
    s.add_argument("gadget", choices=["theta", "necklace", "k4sub", "t1", "t2", "l8", "l13", "gn"])
    s.add_argument("--lengths", type=_int_list)
    s.add_argument("--adjustable", type=_adjustable, action="append", help="t1,L,t2,gap (three times)")
    s.add_argument("--n", type=int)
    s.add_argument("--out")
    s.add_argument("--format", choices=["graph6", "edgelist"], default="graph6")
    s.add_argument("--cap", type=int, default=d["cap"])
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("search", help="exact extremal number by exhaustive search")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--refute", type=int, metavar="T", help="only decide whether T edges are possible")
    s.add_argument("--workers", type=int, default=d["workers"])
    s.add_argument("--budget", type=int, default=d["budget"])
    s.add_argument("--no-prune", action="store_true")
    s.add_argument("--timing", action="store_true", help="include elapsed time in the result")
    s.add_argument("--cache-dir", default=d["cache_dir"])
    s.add_argument("--out")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("table", help="formula vs search vs construction")
    s.add_argument("--n-max", type=int, default=13)
    s.add_argument("--cache-dir", default=d["cache_dir"])
    s.add_argument("--out")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("verify-lemma", help="randomised lemma campaign")
    s.add_argument("--lemma", required=True, choices=LEMMA_IDS)
    s.add_argument("--trials", type=int, default=d["trials"])
    s.add_argument("--seed", type=int, default=d["seed"])
    s.add_argument("--size-budget", type=int, default=d["size_budget"])
    s.add_argument("--workers", type=int, default=d["workers"])
    s.add_argument("--timing", action="store_true", help="include elapsed time in the report")
    s.add_argument("--counterexample", help="where to write a failing instance")
    s.add_argument("--out")
    s.set_defaults(func=cmd_verify_lemma)

    s = sub.add_parser("replay", help="re-run a stored counterexample record")
    s.add_argument("--record", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_replay)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    try:
        defaults = _read_config(known.config) if known.config else {}
        args = build_parser(defaults).parse_args(argv)
    except SystemExit as exc:  # argparse usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
