"""Command line: ``oddminor {invariants,find,verify,sweep,oracle}``.

Exit statuses: 0 success, 1 oracle found no model, 2 precondition or input
error, 3 verification failure, 4 theorem-contradiction event.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .construct import (
    odd_clique_from_cut,
    odd_clique_via_clique_and_paths,
    special_bipartite_model,
    special_model_half_order,
)
from .errors import PreconditionError, TheoremContradiction, VerificationError
from .graph import Graph, read_graph, to_graph6
from .invariants import (
    SizeGuardError,
    chromatic_number,
    clique_number,
    independence_at_most_two,
    independence_number,
    max_clique,
    vertex_connectivity,
)
from .model import CertificateSchemaError, OddModel, Pattern, singleton_model, verify_odd_model
from .oracle import brute_force_odd_model
from .sweep import generate, parse_range, run_sweep

EXIT_OK = 0
EXIT_NONE = 1
EXIT_PRECONDITION = 2
EXIT_VERIFICATION = 3
EXIT_CONTRADICTION = 4


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_graph(args) -> Graph:
    return read_graph(_read_text(args.input), args.format)


def _emit(obj, path: str | None = None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path and path != "-":
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _refuse(reason: str) -> int:
    _emit({"error": "precondition", "reason": reason})
    return EXIT_PRECONDITION


def certificate(g: Graph, model: OddModel, special: bool, trace: list | None = None) -> dict:
    out = model.to_json()
    out["graph6"] = to_graph6(g)
    out["special"] = special
    if trace is not None:
        out["trace"] = trace
    return out


def cmd_invariants(args) -> int:
    g = _load_graph(args)
    alpha2 = independence_at_most_two(g)
    try:
        alpha = independence_number(g)
    except SizeGuardError:
        alpha = 2 if alpha2 and g.n and not g.is_complete() else (1 if alpha2 else ">=3")
    report = {"n": g.n, "alpha": alpha}
    chi, _ = chromatic_number(g)
    report.update(chi=chi, omega=clique_number(g), kappa=vertex_connectivity(g))
    _emit(report, args.output)
    return EXIT_OK


def _clique_dispatch(g: Graph, trace: list) -> OddModel:
    # cut construction first, then the clique-and-paths one, then a bare clique
    half = (g.n + 1) // 2
    if not independence_at_most_two(g):
        raise PreconditionError("alpha>2")
    if not g.is_complete() and vertex_connectivity(g) < half:
        return odd_clique_from_cut(g, trace)
    k = max_clique(g)
    if len(k) >= half:
        trace.append({"rule": "big-clique", "clique": sorted(k)})
        return singleton_model(Pattern.clique(len(k)), sorted(k), [])
    return odd_clique_via_clique_and_paths(g, trace)


def cmd_find(args) -> int:
    g = _load_graph(args)
    trace: list = []
    if args.pattern in ("bipartite", "half-order") and args.ell is None:
        return _refuse("--ell is required for this pattern")
    if args.pattern == "bipartite":
        model = special_bipartite_model(g, args.ell, trace)
        special = True
    elif args.pattern == "half-order":
        model = special_model_half_order(g, args.ell, trace)
        special = True
    else:
        model = _clique_dispatch(g, trace)
        special = False
    violations = verify_odd_model(g, model, require_special=special)
    cert = certificate(g, model, special, trace)
    if violations:
        cert["violations"] = [v.to_json() for v in violations]
        _emit(cert, args.output)
        return EXIT_VERIFICATION
    _emit(cert, args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_graph(args)
    data = json.loads(_read_text(args.certificate))
    model = OddModel.from_json(data, n=g.n)
    violations = verify_odd_model(g, model, require_special=args.special)
    _emit({"ok": not violations, "violations": [v.to_json() for v in violations]}, args.output)
    return EXIT_OK if not violations else EXIT_VERIFICATION


def cmd_sweep(args) -> int:
    errors: list = []
    lines = None
    if args.mode == "stream":
        lines = _read_text(args.input).splitlines()
    sizes = parse_range(args.n) if args.mode != "stream" else range(0)
    graphs = generate(args.mode, sizes, count=args.count, seed=args.seed, lines=lines, errors=errors)
    settings = {
        "mode": args.mode,
        "n": args.n,
        "count": args.count,
        "seed": args.seed,
        "oracle": args.oracle,
        "conjecture17": args.conjecture17,
    }
    report = run_sweep(
        graphs,
        jobs=args.jobs,
        oracle=args.oracle,
        conjecture17=args.conjecture17,
        settings=settings,
        stream_errors=errors,
    )
    _emit(report, args.output)
    summary = report["summary"]
    print(json.dumps(summary, sort_keys=True), file=sys.stderr)
    if summary["contradiction_events"]:
        return EXIT_CONTRADICTION
    if summary["failures"] or summary["oracle_disagreements"]:
        return EXIT_VERIFICATION
    return EXIT_OK


def _pattern_from_args(args) -> Pattern:
    if args.pattern == "clique":
        if args.size is None:
            raise PreconditionError("--size is required for the clique pattern")
        return Pattern.clique(args.size)
    if args.ell is None or args.size is None:
        raise PreconditionError("--ell and --size are required for bipartite patterns")
    if not 0 <= args.ell <= args.size:
        raise PreconditionError("--ell must lie between 0 and --size")
    make = Pattern.bipartite if args.pattern == "bipartite" else Pattern.plus_clique
    return make(args.ell, args.size - args.ell)


def cmd_oracle(args) -> int:
    g = _load_graph(args)
    pattern = _pattern_from_args(args)
    if pattern.size > g.n:
        _emit({"found": False, "pattern": str(pattern)}, args.output)
        return EXIT_NONE
    model = brute_force_odd_model(g, pattern, require_special=args.special)
    if model is None:
        _emit({"found": False, "pattern": str(pattern)}, args.output)
        return EXIT_NONE
    cert = certificate(g, model, args.special)
    cert["found"] = True
    _emit(cert, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oddminor", description="Odd minor models in graphs with independence number at most two.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_input(p, required=True):
        p.add_argument("-i", "--input", default="-" if not required else None, required=required, help="graph file, or - for stdin")
        p.add_argument("--format", default="auto", choices=["auto", "graph6", "dimacs", "edges"])
        p.add_argument("-o", "--output", help="write JSON here instead of stdout")

    p = sub.add_parser("invariants", help="n, alpha, chi, omega, kappa")
    graph_input(p)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("find", help="construct and verify a certificate")
    graph_input(p)
    p.add_argument("--pattern", choices=["bipartite", "half-order", "clique"], default="bipartite")
    p.add_argument("--ell", type=int)
    p.set_defaults(func=cmd_find)

    p = sub.add_parser("verify", help="check a certificate against a graph")
    graph_input(p)
    p.add_argument("-c", "--certificate", required=True)
    p.add_argument("--special", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="run the bipartite construction over many graphs")
    graph_input(p, required=False)
    p.add_argument("--mode", choices=["exhaustive", "random", "stream"], default="exhaustive")
    p.add_argument("--n", default="5", help="vertex count or inclusive range such as 3-7")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--conjecture17", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle", help="brute-force search for an odd model")
    graph_input(p)
    p.add_argument("--pattern", choices=["clique", "bipartite", "plus-clique"], default="clique")
    p.add_argument("--size", type=int, help="number of pattern vertices")
    p.add_argument("--ell", type=int, help="left side size")
    p.add_argument("--special", action="store_true")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except TheoremContradiction as exc:
        dump = {"error": "theorem-contradiction", "message": str(exc), "trace": exc.trace}
        if exc.graph is not None:
            dump["graph6"] = to_graph6(exc.graph)
        _emit(dump)
        return EXIT_CONTRADICTION
    except VerificationError as exc:
        _emit({"error": "verification", "message": str(exc), "violations": [v.to_json() for v in exc.violations]})
        return EXIT_VERIFICATION
    except CertificateSchemaError as exc:
        return _refuse(f"schema: {exc}")
    except (ValueError, OSError) as exc:
        # precondition, size guard, graph parse and JSON decode errors
        return _refuse(str(exc))


if __name__ == "__main__":
    sys.exit(main())
