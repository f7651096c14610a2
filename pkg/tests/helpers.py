"""Test-only helpers: a naive odd-model checker and certificate mutations.

The checker is written directly from the definition of an odd model and does
not import anything from the verifier.
"""

from __future__ import annotations

import random
from dataclasses import replace
from itertools import combinations

from oddminor.graph import Graph
from oddminor.model import BranchSet, OddModel

# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []

CIRCULANT_31 = (31, (1, 3, 5, 12))
CIRCULANT_33 = (33, (1, 6, 10, 15))


def circulant_complement(n: int, steps) -> Graph:
    """Complement of the circulant graph on ``n`` vertices with the given distances."""
    dist = {s % n for s in steps} | {(-s) % n for s in steps}
    edges = [(i, j) for i, j in combinations(range(n), 2) if (j - i) % n not in dist]
    return Graph.from_edges(n, edges)


def pattern_edges(model: OddModel) -> list[tuple[int, int]]:
    kind = model.pattern.kind
    sides = [b.side for b in model.branch_sets]
    out = []
    for i, j in combinations(range(len(sides)), 2):
        if kind == "clique":
            out.append((i, j))
        elif sides[i] != sides[j]:
            out.append((i, j))
        elif kind == "bipartite_plus_clique" and sides[i] == "left":
            out.append((i, j))
    return out


def naive_is_odd_model(g: Graph, model: OddModel, special: bool = False) -> bool:
    p = model.pattern
    sets = model.branch_sets
    if p.kind == "clique":
        if len(sets) != p.left:
            return False
    else:
        left = sum(1 for b in sets if b.side == "left")
        right = sum(1 for b in sets if b.side == "right")
        if (left, right) != (p.left, p.right) or left + right != len(sets):
            return False
    used = []
    for b in sets:
        used.extend(b.vertices)
    if len(used) != len(set(used)) or any(not 0 <= v < g.n for v in used):
        return False
    col = model.colors
    if any(col.get(v) not in (1, 2) for v in used):
        return False
    for b in sets:
        vs = set(b.vertices)
        if not vs or len(b.tree_edges) != len(vs) - 1:
            return False
        reach = {b.vertices[0]}
        changed = True
        while changed:
            changed = False
            for u, v in b.tree_edges:
                if u not in vs or v not in vs or not g.has_edge(u, v) or col[u] == col[v]:
                    return False
                if (u in reach) != (v in reach):
                    reach |= {u, v}
                    changed = True
        if reach != vs:
            return False
    for i, j in pattern_edges(model):
        if not any(g.has_edge(u, w) and col[u] == col[w] for u in sets[i].vertices for w in sets[j].vertices):
            return False
    if special:
        if len({col[b.vertices[0]] for b in sets if len(b.vertices) == 1}) > 1:
            return False
    return True


MUTATIONS = ("recolor", "uncolor", "drop-edge", "move-vertex", "share-vertex", "bogus-edge")

# violation kinds that correctly describe each mutation
EXPECTED_KINDS = {
    "recolor": {"tree-edge-monochromatic", "missing-mono-cross-edge", "not-special"},
    "uncolor": {"uncolored-vertex"},
    "drop-edge": {"not-tree"},
    "move-vertex": {"not-tree", "tree-edge-monochromatic", "missing-mono-cross-edge", "not-special"},
    "share-vertex": {"overlap"},
    "bogus-edge": {"not-tree"},
}


def mutate(g: Graph, model: OddModel, rng: random.Random, kind: str) -> OddModel | None:
    """Apply one corruption of type ``kind``; None if it does not apply to this model."""
    sets = list(model.branch_sets)
    colors = dict(model.colors)
    verts = sorted(colors)
    if kind == "recolor":
        v = rng.choice(verts)
        colors[v] = 3 - colors[v]
        return replace(model, colors=colors)
    if kind == "uncolor":
        v = rng.choice(verts)
        del colors[v]
        return replace(model, colors=colors)
    if kind == "drop-edge":
        idx = [i for i, b in enumerate(sets) if b.tree_edges]
        if not idx:
            return None
        i = rng.choice(idx)
        edges = list(sets[i].tree_edges)
        edges.pop(rng.randrange(len(edges)))
        sets[i] = replace(sets[i], tree_edges=tuple(edges))
        return replace(model, branch_sets=tuple(sets))
    if kind == "bogus-edge":
        idx = [i for i, b in enumerate(sets) if len(b.vertices) >= 2]
        if not idx:
            return None
        i = rng.choice(idx)
        u, v = rng.sample(list(sets[i].vertices), 2)
        sets[i] = replace(sets[i], tree_edges=sets[i].tree_edges + ((u, v),))
        return replace(model, branch_sets=tuple(sets))
    if len(sets) < 2:
        return None
    i, j = rng.sample(range(len(sets)), 2)
    v = rng.choice(sets[i].vertices)
    target = sets[j]
    nbrs = [w for w in target.vertices if g.has_edge(v, w)]
    extra = ((v, nbrs[0]),) if nbrs else ()
    if kind == "share-vertex":
        sets[j] = BranchSet(target.vertices + (v,), target.tree_edges + extra, target.side)
        return replace(model, branch_sets=tuple(sets))
    if kind == "move-vertex":
        src = sets[i]
        sets[i] = BranchSet(
            tuple(w for w in src.vertices if w != v),
            tuple(e for e in src.tree_edges if v not in e),
            src.side,
        )
        sets[j] = BranchSet(target.vertices + (v,), target.tree_edges + extra, target.side)
        return replace(model, branch_sets=tuple(sets))
    raise ValueError(kind)
