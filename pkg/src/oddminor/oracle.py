"""Brute-force ground truth and generators of independence-number-two graphs."""

from __future__ import annotations

import logging
import random
from collections.abc import Iterable, Iterator
from itertools import combinations

from .graph import Graph, GraphFormatError, bits, parse_graph6
from .invariants import guard, independence_at_most_two
from .model import CLIQUE, LEFT, PLUS_CLIQUE, RIGHT, BranchSet, OddModel, Pattern

__all__ = [
    "brute_force_odd_model",
    "enumerate_alpha2_graphs",
    "stream_alpha2_graphs",
    "random_alpha2_graph",
    "colored_branch_sets",
]

log = logging.getLogger(__name__)


def _bichromatic_spans(adj, mask: int, ones: int) -> bool:
    # does the subgraph of bichromatic edges inside `mask` connect `mask`?
    twos = mask & ~ones
    start = mask & -mask
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        for v in bits(frontier):
            other = twos if ones >> v & 1 else ones
            nxt |= adj[v] & other
        nxt &= ~seen
        seen |= nxt
        frontier = nxt
    return seen == mask


def colored_branch_sets(g: Graph) -> list[tuple[int, int]]:
    """All ``(vertex set, colour-1 subset)`` pairs that can carry a bichromatic spanning tree.

    Ordered by size, then vertex bitset, then colour bitset.
    """
    out = []
    for mask in range(1, 1 << g.n):
        if len(g.components_within(mask)) != 1:
            continue
        sub = mask
        while True:
            # enumerate every subset of mask as the colour-1 part
            if _bichromatic_spans(g.adj, mask, sub):
                out.append((mask, sub))
            if sub == 0:
                break
            sub = (sub - 1) & mask
    out.sort(key=lambda t: (t[0].bit_count(), t[0], t[1]))
    return out


def _tree(g: Graph, mask: int, ones: int) -> tuple[tuple[int, int], ...]:
    twos = mask & ~ones
    root = (mask & -mask).bit_length() - 1
    seen = 1 << root
    queue = [root]
    edges = []
    for v in queue:
        other = twos if ones >> v & 1 else ones
        for w in bits(g.adj[v] & other & ~seen):
            seen |= 1 << w
            edges.append((v, w))
            queue.append(w)
    return tuple(edges)


_CANDIDATE_CACHE: dict[Graph, list] = {}


def _candidates(g: Graph) -> list[tuple[int, int, int, int, int]]:
    cached = _CANDIDATE_CACHE.get(g)
    if cached is not None:
        return cached
    rows = []
    for mask, ones in colored_branch_sets(g):
        twos = mask & ~ones
        n1 = n2 = 0
        for v in bits(ones):
            n1 |= g.adj[v]
        for v in bits(twos):
            n2 |= g.adj[v]
        rows.append((mask, ones, twos, n1, n2))
    if len(_CANDIDATE_CACHE) > 256:
        _CANDIDATE_CACHE.clear()
    _CANDIDATE_CACHE[g] = rows
    return rows


def brute_force_odd_model(g: Graph, pattern: Pattern, require_special: bool = False) -> OddModel | None:
    """Search every odd model of ``pattern`` in ``g`` straight from the definition.

    Branch sets range over all connected vertex subsets together with every
    colouring that admits a bichromatic spanning tree.  Branch sets playing the
    same role are taken in increasing candidate order, and the first vertex of
    the first branch set is fixed to colour 1 (a global colour swap preserves
    validity).  Returns the first model found, or None.
    """
    guard(g.n, 9, "brute_force_odd_model")
    if pattern.size > g.n:
        raise ValueError(f"pattern on {pattern.size} vertices cannot fit into {g.n} vertices")
    if pattern.kind == CLIQUE:
        slots = [None] * pattern.left
    else:
        slots = [LEFT] * pattern.left + [RIGHT] * pattern.right
    if not slots:
        return OddModel(pattern, (), {})
    cands = _candidates(g)

    def linked(i: int, j: int) -> bool:
        si, sj = slots[i], slots[j]
        if pattern.kind == CLIQUE or si != sj:
            return True
        return pattern.kind == PLUS_CLIQUE and si == LEFT

    links = [[j for j in range(i) if linked(i, j)] for i in range(len(slots))]
    total = len(slots)
    full = g.full_mask
    picked: list[int] = []

    def search(slot: int, used: int, start: int, single: int) -> bool:
        if slot == total:
            return True
        if (full & ~used).bit_count() < total - slot:
            return False
        for idx in range(start, len(cands)):
            mask, ones, twos, n1, n2 = cands[idx]
            if mask & used:
                continue
            if slot == 0 and not ones & (mask & -mask):
                continue
            shade = single
            if require_special and mask & (mask - 1) == 0:
                shade = 1 if ones else 2
                if single and shade != single:
                    continue
            ok = True
            for j in links[slot]:
                _, o2, t2, _, _ = cands[picked[j]]
                if not (n1 & o2 or n2 & t2):
                    ok = False
                    break
            if not ok:
                continue
            picked.append(idx)
            nxt = slot + 1
            nstart = idx + 1 if nxt < total and slots[nxt] == slots[slot] else 0
            if search(nxt, used | mask, nstart, shade):
                return True
            picked.pop()
        return False

    if not search(0, 0, 0, 0):
        return None
    sets = []
    colors = {}
    for slot, idx in enumerate(picked):
        mask, ones, _, _, _ = cands[idx]
        sets.append(BranchSet(tuple(bits(mask)), _tree(g, mask, ones), slots[slot]))
        for v in bits(mask):
            colors[v] = 1 if ones >> v & 1 else 2
    return OddModel(pattern, tuple(sets), colors)


# ---------------------------------------------------------------------------
# generators


def _triangle_free(n: int) -> Iterator[tuple[int, ...]]:
    pairs = list(combinations(range(n), 2))
    adj = [0] * n
    total = len(pairs)

    def walk(k: int) -> Iterator[tuple[int, ...]]:
        if k == total:
            yield tuple(adj)
            return
        yield from walk(k + 1)
        u, v = pairs[k]
        if not adj[u] & adj[v]:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            yield from walk(k + 1)
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)

    yield from walk(0)


def enumerate_alpha2_graphs(n: int) -> Iterator[Graph]:
    """Every labelled graph on ``n`` vertices with independence number at most 2, once each.

    Generated as complements of all labelled triangle-free graphs.
    """
    guard(n, 8, "exhaustive enumeration")
    full = (1 << n) - 1
    for adj in _triangle_free(n):
        yield Graph._trusted(n, [full & ~nb & ~(1 << v) for v, nb in enumerate(adj)])


def stream_alpha2_graphs(lines: Iterable[str], errors: list | None = None) -> Iterator[Graph]:
    """Complements of the triangle-free graphs in a graph6 stream.

    Malformed lines and graphs containing a triangle are logged, appended to
    ``errors`` as ``(line number, message)``, and skipped.
    """
    for no, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            g = parse_graph6(line)
        except GraphFormatError as exc:
            log.warning("line %d: %s", no, exc)
            if errors is not None:
                errors.append((no, str(exc)))
            continue
        h = g.complement()
        if not independence_at_most_two(h):
            msg = "graph contains a triangle"
            log.warning("line %d: %s", no, msg)
            if errors is not None:
                errors.append((no, msg))
            continue
        yield h


def random_alpha2_graph(n: int, seed: int) -> Graph:
    """Complement of a random maximal triangle-free graph.

    Vertex pairs are visited in a seeded random order and kept unless they close
    a triangle; the result is deterministic in ``(n, seed)``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    adj = [0] * n
    for u, v in pairs:
        if not adj[u] & adj[v]:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    full = (1 << n) - 1
    return Graph._trusted(n, [full & ~nb & ~(1 << v) for v, nb in enumerate(adj)])
