"""Constructions of odd clique and odd complete bipartite models.

For graphs with independence number at most two:

* ``odd_clique_from_cut``: a graph that is not ceil(n/2)-connected has an odd
  clique model on at least ceil(n/2) branch sets, built from a minimum cut and a
  matching of cut vertices into the far clique.
* ``odd_clique_via_clique_and_paths``: for odd n with a large clique, the clique
  plus disjoint induced P3s give an odd K_{ceil(n/2)} model.
* ``special_model_half_order``: a special odd K^l_{l, ceil(n/2)-l} model whenever
  2l <= ceil(n/2).
* ``special_bipartite_model``: a special odd K_{l, chi-l} model for every
  1 <= l < chi.

Each construction re-runs the independent verifier on its output before
returning.  Steps that are guaranteed by the underlying theorems but found by
search raise ``TheoremContradiction`` if the search ever comes back empty.
Every function takes an optional ``trace`` list that receives one record per
rule fired.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import PreconditionError, TheoremContradiction, VerificationError
from .graph import Graph, bits, mask_of
from .invariants import (
    chromatic_number,
    independence_at_most_two,
    max_clique,
    minimum_vertex_cut,
    vertex_connectivity,
)
from .model import (
    LEFT,
    RIGHT,
    BranchSet,
    OddModel,
    Pattern,
    clique_model_to_bipartite,
    normalize_colors,
    singleton_model,
    transpose_bipartite,
    verify_odd_model,
    weaken_pattern,
)
from .search import (
    P3,
    count_quantity,
    find_p3_packing,
    improve_packing_near_vertex,
    packing_vertices,
    saturating_matching,
)

__all__ = [
    "TerminalCaseState",
    "odd_clique_from_cut",
    "odd_clique_via_clique_and_paths",
    "special_model_half_order",
    "special_bipartite_model",
    "compose_join_models",
    "critical_reduction",
    "anti_components",
    "route_of",
]


def _half(n: int) -> int:
    return (n + 1) // 2


def _checked(g: Graph, model: OddModel, special: bool, what: str) -> OddModel:
    violations = verify_odd_model(g, model, require_special=special)
    if violations:
        raise VerificationError(f"{what} produced a certificate the verifier rejects", violations)
    return model


def _require_alpha2(g: Graph) -> None:
    if not independence_at_most_two(g):
        raise PreconditionError("alpha>2: the graph has three pairwise non-adjacent vertices")


def _path_set(p: P3) -> BranchSet:
    a, m, c = p
    return BranchSet((a, m, c), ((a, m), (m, c)))


def route_of(trace: list[dict]) -> str:
    """Rule names of a trace joined by ``>``, nested steps flattened in order."""
    names = []

    def walk(steps):
        for step in steps:
            names.append(step["rule"])
            for key in ("steps", "left_steps", "right_steps"):
                walk(step.get(key, ()))

    walk(trace)
    return ">".join(names)


# ---------------------------------------------------------------------------
# odd clique models


def odd_clique_from_cut(g: Graph, trace: list | None = None) -> OddModel:
    """Odd clique model with at least ceil(n/2) branch sets when kappa(G) < ceil(n/2).

    L-vertices become singleton branch sets; a matching of cut vertices complete
    to L into the opposite clique R gives two-vertex branch sets.  Colour 1 goes
    on L and the matched cut vertices, colour 2 on their partners in R.
    """
    trace = [] if trace is None else trace
    _require_alpha2(g)
    h = _half(g.n)
    if g.is_complete():
        raise PreconditionError("complete graphs have no vertex cut")
    kappa = vertex_connectivity(g)
    if kappa >= h:
        raise PreconditionError(f"graph is {h}-connected (kappa = {kappa})")
    cut = minimum_vertex_cut(g)
    take = min(len(cut.X_L), len(cut.R))
    chosen = sorted(cut.X_L)[:take]
    result = saturating_matching(g, chosen, cut.R)
    if not result.saturated:
        s = result.violator
        smaller = (cut.X - s) | (frozenset(bits(_nbhd(g, s))) & cut.R)
        raise TheoremContradiction(
            f"Hall violator {sorted(s)} inside a minimum cut; "
            f"{sorted(smaller)} would be a smaller cut",
            graph=g,
            trace=trace,
        )
    sets = [BranchSet((v,)) for v in sorted(cut.L)]
    colors = {v: 1 for v in cut.L}
    for x, r in result.matching:
        sets.append(BranchSet((x, r), ((x, r),)))
        colors[x] = 1
        colors[r] = 2
    if len(sets) < h:
        raise TheoremContradiction(f"cut construction gave {len(sets)} < {h} branch sets", g, trace)
    trace.append({"rule": "cut-clique", "cut": cut.as_dict(), "matching": [list(p) for p in result.matching], "size": len(sets)})
    model = OddModel(Pattern.clique(len(sets)), tuple(sets), colors)
    return _checked(g, model, True, "odd_clique_from_cut")


def _nbhd(g: Graph, s) -> int:
    m = 0
    for v in s:
        m |= g.adj[v]
    return m


def odd_clique_via_clique_and_paths(g: Graph, trace: list | None = None) -> OddModel:
    """Odd K_{ceil(n/2)} model from a maximum clique plus disjoint induced P3s.

    Needs n odd, omega >= (n+3)/4, omega < ceil(n/2) and kappa >= ceil(n/2).  The
    clique vertices are singletons of colour 1; each path has colour 1 on its
    ends and 2 in the middle.
    """
    trace = [] if trace is None else trace
    _require_alpha2(g)
    n = g.n
    h = _half(n)
    if n % 2 == 0:
        raise PreconditionError("parity: n must be odd")
    clique = sorted(max_clique(g))
    omega = len(clique)
    if 4 * omega < n + 3:
        raise PreconditionError(f"omega = {omega} is below (n+3)/4")
    if omega >= h:
        raise PreconditionError(f"omega = {omega} already reaches ceil(n/2) = {h}")
    kappa = vertex_connectivity(g)
    if kappa < h:
        raise PreconditionError(f"kappa = {kappa} < ceil(n/2) = {h}")
    need = h - omega
    packing = find_p3_packing(g, need, forbidden=clique)
    if packing is None:
        raise TheoremContradiction(f"no {need} disjoint induced P3s outside a maximum clique", g, trace)
    sets = [BranchSet((v,)) for v in clique] + [_path_set(p) for p in packing]
    colors = {v: 1 for v in clique}
    for a, m, c in packing:
        colors[a] = colors[c] = 1
        colors[m] = 2
    trace.append({"rule": "big-clique", "clique": clique, "paths": [list(p) for p in packing]})
    model = OddModel(Pattern.clique(h), tuple(sets), colors)
    return _checked(g, model, True, "odd_clique_via_clique_and_paths")


# ---------------------------------------------------------------------------
# special K^l_{l, ceil(n/2) - l} models


@dataclass(frozen=True)
class TerminalCaseState:
    """Data of the n = 4l - 1 case: packing in G - v and the leftover split."""

    v: int
    packing: tuple[P3, ...]
    B: frozenset[int]
    X: frozenset[int]
    Y: frozenset[int]
    Yprime: tuple[int, ...]

    def as_dict(self) -> dict:
        return {
            "v": self.v,
            "packing": [list(p) for p in self.packing],
            "B": sorted(self.B),
            "X": sorted(self.X),
            "Y": sorted(self.Y),
            "Yprime": list(self.Yprime),
        }


def special_model_half_order(g: Graph, ell: int, trace: list | None = None) -> OddModel:
    """Special odd K^ell_{ell, ceil(n/2)-ell} model for a graph with independence number 2."""
    trace = [] if trace is None else trace
    _require_alpha2(g)
    if g.is_complete():
        raise PreconditionError("independence number must be exactly 2")
    h = _half(g.n)
    if ell < 1 or 2 * ell > h:
        raise PreconditionError(f"need 1 <= ell and 2*ell <= ceil(n/2) = {h}, got ell = {ell}")
    model = _half_order(g, ell, trace)
    assert len(model.branch_sets) == h
    return model


def _truncate_clique(m: OddModel, k: int) -> OddModel:
    # keep k branch sets, singletons first
    order = sorted(range(len(m.branch_sets)), key=lambda i: len(m.branch_sets[i].vertices) != 1)
    keep = [m.branch_sets[i] for i in order[:k]]
    used = {v for b in keep for v in b.vertices}
    return OddModel(Pattern.clique(k), tuple(keep), {v: c for v, c in m.colors.items() if v in used})


def _half_order(g: Graph, ell: int, trace: list) -> OddModel:
    n = g.n
    h = _half(n)

    if n % 2 == 0:
        sub, index = g.delete(0)
        back = {new: old for old, new in index.items()}
        steps: list = []
        inner = _half_order(sub, ell, steps).relabel(back)
        trace.append({"rule": "parity-delete", "deleted": 0, "steps": steps})
        return _checked(g, inner, True, "parity-delete")

    if g.is_complete():
        model = singleton_model(Pattern.clique(h), range(h), ())
        trace.append({"rule": "big-clique", "clique": list(range(h)), "paths": []})
        return _checked(g, clique_model_to_bipartite(model, ell), True, "big-clique")

    kappa = vertex_connectivity(g)
    if kappa < h:
        steps = []
        clique = _truncate_clique(odd_clique_from_cut(g, steps), h)
        steps[-1]["kappa"] = kappa
        trace.extend(steps)
        return _checked(g, clique_model_to_bipartite(clique, ell), True, "cut-clique")

    big = sorted(max_clique(g))
    if len(big) >= h:
        model = singleton_model(Pattern.clique(h), big[:h], ())
        trace.append({"rule": "big-clique", "clique": big[:h], "paths": []})
        return _checked(g, clique_model_to_bipartite(model, ell), True, "big-clique")
    if 4 * len(big) >= n + 3:
        steps = []
        clique = odd_clique_via_clique_and_paths(g, steps)
        trace.extend(steps)
        return _checked(g, clique_model_to_bipartite(clique, ell), True, "big-clique")

    if n >= 4 * ell + 1:
        return _packing_route(g, ell, trace)
    if n == 4 * ell - 1:
        return _terminal_route(g, ell, trace)
    raise PreconditionError(f"n = {n} too small for ell = {ell}")  # pragma: no cover


def _packing_route(g: Graph, ell: int, trace: list) -> OddModel:
    h = _half(g.n)
    packing = find_p3_packing(g, ell)
    if packing is None:
        raise TheoremContradiction(f"no {ell} disjoint induced P3s (n = {g.n})", g, trace)
    rest = [v for v in range(g.n) if not packing_vertices(packing) >> v & 1]
    if len(rest) < h - ell:
        raise TheoremContradiction("too few vertices left beside the packing", g, trace)
    right = rest[: h - ell]
    sets = [replace_side(_path_set(p), LEFT) for p in packing]
    sets += [BranchSet((b,), (), RIGHT) for b in right]
    colors = {b: 2 for b in right}
    for a, m, c in packing:
        colors[a] = colors[c] = 2
        colors[m] = 1
    trace.append({"rule": "packing", "paths": [list(p) for p in packing], "B": right})
    model = OddModel(Pattern.plus_clique(ell, h - ell), tuple(sets), colors)
    return _checked(g, model, True, "packing")


def replace_side(b: BranchSet, side: str) -> BranchSet:
    return BranchSet(b.vertices, b.tree_edges, side)


def _terminal_route(g: Graph, ell: int, trace: list) -> OddModel:
    n = g.n
    full = g.full_mask
    attempts = []
    for v in range(n):
        packing = find_p3_packing(g, ell - 1, forbidden=[v])
        if packing is None:
            attempts.append({"v": v, "failed": "packing"})
            continue
        exchanges: list = []
        try:
            packing = improve_packing_near_vertex(g, v, packing, log=exchanges)
        except TheoremContradiction as exc:
            attempts.append({"v": v, "failed": str(exc)})
            continue
        bmask = full & ~packing_vertices(packing) & ~(1 << v)
        far = full & ~g.adj[v] & ~(1 << v)
        xs, ys = bmask & far, bmask & g.adj[v]
        if bmask.bit_count() != ell + 1 or xs.bit_count() > 1 or ys.bit_count() < ell:
            attempts.append({"v": v, "failed": "leftover split"})
            continue
        state = TerminalCaseState(
            v=v,
            packing=tuple(packing),
            B=frozenset(bits(bmask)),
            X=frozenset(bits(xs)),
            Y=frozenset(bits(ys)),
            Yprime=tuple(list(bits(ys))[:ell]),
        )
        sets = [replace_side(_path_set(p), LEFT) for p in packing]
        sets.append(BranchSet((v,), (), LEFT))
        sets += [BranchSet((y,), (), RIGHT) for y in state.Yprime]
        colors = {v: 2}
        colors.update({y: 2 for y in state.Yprime})
        for a, m, c in packing:
            colors[a] = colors[c] = 2
            colors[m] = 1
        trace.append(
            {
                "rule": "terminal",
                "state": state.as_dict(),
                "exchanges": exchanges,
                "quantity": count_quantity(g, v, packing),
                "attempts": attempts,
            }
        )
        model = OddModel(Pattern.plus_clique(ell, ell), tuple(sets), colors)
        return _checked(g, model, True, "terminal")
    raise TheoremContradiction(
        f"terminal case n = 4*{ell}-1 failed for every choice of v", g, trace + [{"rule": "terminal", "attempts": attempts}]
    )


# ---------------------------------------------------------------------------
# special K_{l, chi-l} models


@lru_cache(maxsize=4096)
def critical_reduction(g: Graph) -> tuple[Graph, tuple[int, ...]]:
    """Delete vertices, smallest index first, while the chromatic number stays put.

    Returns the vertex-critical induced subgraph and the deleted vertices (in
    the original numbering, in deletion order).
    """
    chi, _ = chromatic_number(g)
    kept = list(range(g.n))
    current = g
    removed = []
    changed = True
    while changed:
        changed = False
        for i, v in enumerate(kept):
            sub, _ = current.delete(i)
            if chromatic_number(sub)[0] == chi:
                removed.append(v)
                kept.pop(i)
                current = sub
                changed = True
                break
    return current, tuple(removed)


def anti_components(g: Graph) -> list[frozenset[int]]:
    """Connected components of the complement; distinct ones are complete to each other."""
    return g.complement().connected_components()


def compose_join_models(g: Graph, m1: OddModel, m2: OddModel, v1, v2) -> OddModel:
    """Union of two special K_{l_i, r_i} models living on parts complete to each other.

    After normalising both to singleton colour 1, every pair of branch sets from
    different parts has a monochromatic edge: two singletons are both colour 1,
    and a larger tree carries both colours.
    """
    s1, s2 = mask_of(v1), mask_of(v2)
    if s1 & s2:
        raise PreconditionError("join parts overlap")
    for v in bits(s1):
        if g.adj[v] & s2 != s2:
            raise PreconditionError(f"vertex {v} is not complete to the other part")
    parts = []
    for m, s in ((m1, s1), (m2, s2)):
        if m.pattern.kind != "bipartite":
            raise PreconditionError("join composition takes plain bipartite models")
        if mask_of(m.vertices()) & ~s:
            raise PreconditionError("sub-model leaves its part")
        if verify_odd_model(g, m, require_special=True):
            raise PreconditionError("sub-model is not a verified special odd model")
        parts.append(normalize_colors(m))
    a, b = parts
    colors = dict(a.colors)
    colors.update(b.colors)
    pattern = Pattern.bipartite(a.pattern.left + b.pattern.left, a.pattern.right + b.pattern.right)
    sets = _sorted_sides(a.branch_sets + b.branch_sets)
    return _checked(g, OddModel(pattern, sets, colors), True, "join-compose")


def _sorted_sides(sets) -> tuple[BranchSet, ...]:
    return tuple(b for b in sets if b.side == LEFT) + tuple(b for b in sets if b.side == RIGHT)


def special_bipartite_model(g: Graph, ell: int, trace: list | None = None) -> OddModel:
    """Special odd K_{ell, chi-ell} model for a graph with independence number at most 2."""
    trace = [] if trace is None else trace
    _require_alpha2(g)
    chi, _ = chromatic_number(g)
    if not 1 <= ell < chi:
        raise PreconditionError(f"need 1 <= ell < chi = {chi}, got ell = {ell}")
    model = _bipartite(g, ell, chi, trace)
    assert model.side_count(LEFT) == ell and model.side_count(RIGHT) == chi - ell
    return model


def _split_ell(ell: int, chi1: int, chi2: int) -> int:
    lo, hi = max(0, ell - chi2), min(ell, chi1)

    def proper(li: int, chi_i: int) -> bool:
        return 1 <= li <= chi_i - 1

    return max(
        range(lo, hi + 1),
        key=lambda l1: (proper(l1, chi1) + proper(ell - l1, chi2), -l1),
    )


def _degenerate(part: list[int], ell_i: int, chi_i: int) -> OddModel:
    # l_i in {0, chi_i}: chi_i vertices of the part as same-coloured singletons
    chosen = part[:chi_i]
    if ell_i == 0:
        return singleton_model(Pattern.bipartite(0, chi_i), (), chosen)
    return singleton_model(Pattern.bipartite(chi_i, 0), chosen, ())


def _bipartite(g: Graph, ell: int, chi: int, trace: list) -> OddModel:
    n = g.n
    if g.is_complete():
        model = singleton_model(Pattern.bipartite(ell, chi - ell), range(ell), range(ell, chi))
        trace.append({"rule": "complete", "n": n})
        return _checked(g, model, True, "complete")

    if ell == 1:
        center = max(range(n), key=lambda v: (g.degree(v), -v))
        leaves = list(bits(g.adj[center]))[: chi - 1]
        model = singleton_model(Pattern.bipartite(1, chi - 1), [center], leaves)
        trace.append({"rule": "star", "center": center, "leaves": leaves})
        return _checked(g, model, True, "star")

    reduced, removed = critical_reduction(g)
    kept = [v for v in range(n) if v not in set(removed)]
    if removed:
        trace.append({"rule": "reduce", "removed": list(removed), "n": reduced.n})

    anti = anti_components(reduced)
    if len(anti) >= 2:
        model = _join_route(reduced, ell, chi, anti, trace)
    else:
        if reduced.n != 2 * chi - 1:
            raise TheoremContradiction(
                f"anti-connected vertex-critical graph with n = {reduced.n} != 2*chi-1 = {2 * chi - 1}",
                g,
                trace,
            )
        short = min(ell, chi - ell)
        steps: list = []
        half = special_model_half_order(reduced, short, steps)
        model = weaken_pattern(half)
        if short != ell:
            model = transpose_bipartite(model)
        trace.append({"rule": "terminal-bipartite", "ell": short, "transposed": short != ell, "steps": steps})
    model = model.relabel(kept)
    return _checked(g, model, True, "special_bipartite_model")


def _join_route(g: Graph, ell: int, chi: int, anti: list[frozenset[int]], trace: list) -> OddModel:
    v1 = sorted(anti[0])
    v2 = sorted(set(range(g.n)) - anti[0])
    subs = []
    chis = []
    for part in (v1, v2):
        sub, _ = g.induced_subgraph(part)
        subs.append(sub)
        chis.append(chromatic_number(sub)[0])
    if chis[0] + chis[1] != chi:
        raise TheoremContradiction("chromatic number is not additive over the join", g, trace)
    l1 = _split_ell(ell, chis[0], chis[1])
    record = {"rule": "join-compose", "parts": [v1, v2], "chi": chis, "ell": [l1, ell - l1]}
    models = []
    for key, part, sub, li, ci in zip(("left_steps", "right_steps"), (v1, v2), subs, (l1, ell - l1), chis):
        if 1 <= li < ci:
            steps: list = []
            models.append(_bipartite(sub, li, ci, steps).relabel(part))
            record[key] = steps
        else:
            models.append(_degenerate(part, li, ci))
            record[key] = [{"rule": "degenerate", "ell": li, "chi": ci}]
    trace.append(record)
    return compose_join_models(g, models[0], models[1], v1, v2)
