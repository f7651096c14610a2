"""Sweep driver: run the constructions over many graphs and collect a JSON report."""

from __future__ import annotations

import random
import time
from collections.abc import Iterable, Iterator
from concurrent.futures import ProcessPoolExecutor

from .construct import route_of, special_bipartite_model, special_model_half_order
from .errors import PreconditionError, TheoremContradiction, VerificationError
from .graph import Graph, parse_graph6, to_graph6
from .invariants import (
    chromatic_number,
    clique_number,
    independence_number,
    vertex_connectivity,
)
from .model import Pattern, verify_odd_model
from .oracle import brute_force_odd_model, enumerate_alpha2_graphs, random_alpha2_graph, stream_alpha2_graphs

__all__ = ["process_graph", "run_sweep", "generate", "strip_timing", "parse_range"]

ORACLE_MAX_N = 6
EXHAUSTIVE_MAX_N = 7


def parse_range(text: str) -> range:
    """``"5"`` or ``"3-7"`` as an inclusive range of vertex counts."""
    lo, _, hi = str(text).partition("-")
    lo_i = int(lo)
    hi_i = int(hi) if hi else lo_i
    if lo_i < 1 or hi_i < lo_i:
        raise ValueError(f"bad vertex-count range {text!r}")
    return range(lo_i, hi_i + 1)


def generate(mode: str, sizes: Iterable[int], count: int = 1, seed: int = 0, lines=None, errors=None) -> Iterator[tuple[Graph, dict]]:
    """Yield ``(graph, provenance)`` pairs for one sweep mode."""
    if mode == "exhaustive":
        for n in sizes:
            if n > EXHAUSTIVE_MAX_N:
                raise PreconditionError(f"exhaustive sweeps are limited to n <= {EXHAUSTIVE_MAX_N}")
            for i, g in enumerate(enumerate_alpha2_graphs(n)):
                yield g, {"index": i}
    elif mode == "random":
        rng = random.Random(seed)
        for n in sizes:
            for i in range(count):
                s = rng.getrandbits(63)
                yield random_alpha2_graph(n, s), {"index": i, "seed": s}
    elif mode == "stream":
        if lines is None:
            raise PreconditionError("stream mode needs an input of graph6 lines")
        for i, g in enumerate(stream_alpha2_graphs(lines, errors)):
            yield g, {"index": i}
    else:
        raise PreconditionError(f"unknown sweep mode {mode!r}")


def process_graph(g6: str, oracle: bool = False, conjecture17: bool = False) -> dict:
    """All per-graph work of a sweep; never raises."""
    started = time.perf_counter()
    record: dict = {"graph6": g6}
    try:
        g = parse_graph6(g6)
        n = g.n
        chi, _ = chromatic_number(g)
        record.update(
            n=n,
            alpha=independence_number(g),
            chi=chi,
            omega=clique_number(g),
            kappa=vertex_connectivity(g),
        )
        record["outcomes"] = [_one_ell(g, ell, chi, oracle) for ell in range(1, chi)]
        if conjecture17:
            record["conjecture17"] = [_probe_plus_clique(g, ell, chi) for ell in range(1, chi // 2 + 1)]
    except Exception as exc:  # isolate any failure to this graph
        record["error"] = f"{type(exc).__name__}: {exc}"
    record["timing"] = {"seconds": round(time.perf_counter() - started, 6)}
    return record


def _one_ell(g: Graph, ell: int, chi: int, oracle: bool) -> dict:
    started = time.perf_counter()
    out: dict = {"ell": ell}
    trace: list = []
    try:
        model = special_bipartite_model(g, ell, trace)
        # re-check here so that nothing is reported verified without the checker
        if verify_odd_model(g, model, require_special=True):
            out["outcome"] = "verification-failure"
        else:
            out["outcome"] = "verified"
            out["branch_vertices"] = len(model.vertices())
        out["route"] = route_of(trace)
    except TheoremContradiction as exc:
        out.update(outcome="contradiction-event", message=str(exc), route=route_of(trace))
    except VerificationError as exc:
        out.update(outcome="verification-failure", message=str(exc))
    if oracle:
        if g.n <= ORACLE_MAX_N:
            found = brute_force_odd_model(g, Pattern.bipartite(ell, chi - ell), require_special=True)
            out["oracle"] = "found" if found is not None else "none"
        else:
            out["oracle"] = "skipped"
    out["timing"] = {"seconds": round(time.perf_counter() - started, 6)}
    return out


def _probe_plus_clique(g: Graph, ell: int, chi: int) -> dict:
    half = (g.n + 1) // 2
    out: dict = {"ell": ell, "pattern": str(Pattern.plus_clique(ell, chi - ell))}
    if chi == half and not g.is_complete():
        try:
            special_model_half_order(g, ell)
            out["status"] = "constructed"
            return out
        except (PreconditionError, TheoremContradiction, VerificationError) as exc:
            out["note"] = str(exc)
    if g.n <= 9:
        found = brute_force_odd_model(g, Pattern.plus_clique(ell, chi - ell), require_special=True)
        out["status"] = "oracle-found" if found is not None else "oracle-none"
    else:
        out["status"] = "skipped"
    return out


def _work(args: tuple[str, bool, bool]) -> dict:
    return process_graph(*args)


def run_sweep(
    graphs: Iterable[tuple[Graph, dict]],
    jobs: int = 1,
    oracle: bool = False,
    conjecture17: bool = False,
    settings: dict | None = None,
    stream_errors: list | None = None,
) -> dict:
    """Process every graph and assemble the report (records stay in input order)."""
    started = time.perf_counter()
    items = [(to_graph6(g), prov) for g, prov in graphs]
    tasks = [(g6, oracle, conjecture17) for g6, _ in items]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_work, tasks, chunksize=max(1, len(tasks) // (jobs * 8))))
    else:
        records = [_work(t) for t in tasks]
    for rec, (_, prov) in zip(records, items):
        rec["source"] = prov

    pairs = verified = 0
    events = []
    failures = []
    disagreements = []
    for rec in records:
        if "error" in rec:
            failures.append({"graph6": rec["graph6"], "error": rec["error"]})
            continue
        for o in rec["outcomes"]:
            pairs += 1
            if o["outcome"] == "verified":
                verified += 1
            elif o["outcome"] == "contradiction-event":
                events.append({"graph6": rec["graph6"], "ell": o["ell"], "message": o["message"]})
            else:
                failures.append({"graph6": rec["graph6"], "ell": o["ell"], "error": o.get("message", o["outcome"])})
            if o.get("oracle") == "none":
                disagreements.append({"graph6": rec["graph6"], "ell": o["ell"]})
    summary = {
        "graphs": len(records),
        "pairs": pairs,
        "verified": verified,
        "contradiction_events": len(events),
        "failures": len(failures),
        "oracle_disagreements": len(disagreements),
        "stream_errors": len(stream_errors or []),
    }
    return {
        "settings": settings or {},
        "summary": summary,
        "contradiction_events": events,
        "failures": failures,
        "oracle_disagreements": disagreements,
        "stream_errors": [{"line": no, "message": msg} for no, msg in (stream_errors or [])],
        "records": records,
        "timing": {"seconds": round(time.perf_counter() - started, 6)},
    }


def strip_timing(obj):
    """Copy of a report without its ``timing`` fields."""
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if k != "timing"}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj
