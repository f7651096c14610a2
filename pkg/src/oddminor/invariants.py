"""Exact graph parameters: independence, chromatic and clique numbers, connectivity."""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

import networkx as nx

from .errors import PreconditionError
from .graph import Graph, bits, mask_of

__all__ = [
    "SizeGuardError",
    "CutCertificate",
    "independence_at_most_two",
    "independence_number",
    "chromatic_number",
    "exact_coloring_search",
    "maximum_matching",
    "max_clique",
    "clique_number",
    "vertex_connectivity",
    "local_vertex_connectivity",
    "minimum_vertex_cut",
    "is_proper_coloring",
]

GUARD_ENV = "ODDMINOR_GUARD_OVERRIDE"


class SizeGuardError(PreconditionError):
    """The input is larger than the exact search is meant for."""


def guard(n: int, limit: int, what: str) -> None:
    if n > limit and not os.environ.get(GUARD_ENV):
        raise SizeGuardError(
            f"{what} is limited to n <= {limit} (got n = {n}); set {GUARD_ENV}=1 to lift the guard"
        )


def independence_at_most_two(g: Graph) -> bool:
    """True iff no three vertices are pairwise non-adjacent."""
    full = g.full_mask
    non = [full & ~nb & ~(1 << v) for v, nb in enumerate(g.adj)]
    for u in range(g.n):
        later = non[u] >> (u + 1) << (u + 1)
        for v in bits(later):
            if non[u] & non[v] >> (v + 1) << (v + 1):
                return False
    return True


# ---------------------------------------------------------------------------
# cliques


def _clique_bound(adj, cand: int) -> int:
    # Greedy colouring of the candidate set; colour count bounds any clique in it.
    colors = 0
    rest = cand
    while rest:
        colors += 1
        avail = rest
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            rest ^= low
            avail &= ~adj[v] & ~low
    return colors


def _max_clique_mask(adj, cand: int) -> int:
    """Largest clique inside ``cand``; among those, the lexicographically first."""
    best = 0
    best_size = 0

    def extend(clique: int, size: int, cand: int) -> None:
        nonlocal best, best_size
        if size > best_size:
            best, best_size = clique, size
        if not cand or size + cand.bit_count() <= best_size:
            return
        if size + _clique_bound(adj, cand) <= best_size:
            return
        rest = cand
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            if size + 1 + rest.bit_count() <= best_size:
                return
            # later candidates only: keeps the depth-first order lexicographic
            extend(clique | low, size + 1, rest & adj[v])

    extend(0, 0, cand)
    return best


@lru_cache(maxsize=4096)
def max_clique(g: Graph) -> frozenset[int]:
    """A maximum clique, ties broken towards the lexicographically smallest vertex list."""
    guard(g.n, 64, "max_clique")
    return frozenset(bits(_max_clique_mask(g.adj, g.full_mask)))


def clique_number(g: Graph) -> int:
    return len(max_clique(g))


def independence_number(g: Graph) -> int:
    guard(g.n, 64, "independence_number")
    return len(max_clique(g.complement()))


# ---------------------------------------------------------------------------
# colouring


def is_proper_coloring(g: Graph, coloring) -> bool:
    return all(coloring[u] != coloring[v] for u, v in g.edges())


def _matching_small(cadj, mask: int, memo: dict) -> int:
    if mask in memo:
        return memo[mask]
    low = mask & -mask
    u = low.bit_length() - 1
    rest = mask ^ low
    best = _matching_small(cadj, rest, memo) if rest else 0
    cap = mask.bit_count() // 2
    if best < cap:
        for w in bits(cadj[u] & rest):
            val = 1 + _matching_small(cadj, rest & ~(1 << w), memo)
            if val > best:
                best = val
                if best == cap:
                    break
    memo[mask] = best
    return best


def maximum_matching(g: Graph) -> list[tuple[int, int]]:
    """A maximum matching of ``g`` as sorted pairs."""
    if g.n <= 14:
        memo: dict[int, int] = {0: 0}
        pairs = []
        mask = g.full_mask
        while mask:
            low = mask & -mask
            u = low.bit_length() - 1
            rest = mask ^ low
            target = _matching_small(g.adj, mask, memo)
            if (_matching_small(g.adj, rest, memo) if rest else 0) == target:
                mask = rest
                continue
            for w in bits(g.adj[u] & rest):
                nxt = rest & ~(1 << w)
                if 1 + (_matching_small(g.adj, nxt, memo) if nxt else 0) == target:
                    pairs.append((u, w))
                    mask = nxt
                    break
            else:  # pragma: no cover - memo is exact
                raise AssertionError("matching reconstruction failed")
        return pairs
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    matched = nx.max_weight_matching(h, maxcardinality=True)
    return sorted((min(a, b), max(a, b)) for a, b in matched)


def _alpha2_coloring(g: Graph) -> tuple[int, ...]:
    # With alpha <= 2 every colour class is a single vertex or a non-edge, so an
    # optimal colouring is a maximum matching of the complement plus singletons.
    coloring = [-1] * g.n
    k = 0
    for a, b in maximum_matching(g.complement()):
        coloring[a] = coloring[b] = k
        k += 1
    for v in range(g.n):
        if coloring[v] < 0:
            coloring[v] = k
            k += 1
    return tuple(coloring)


def _dsatur_greedy(g: Graph) -> list[int]:
    n = g.n
    coloring = [-1] * n
    seen = [0] * n  # bitset of colours among coloured neighbours
    for _ in range(n):
        v = max(
            (u for u in range(n) if coloring[u] < 0),
            key=lambda u: (seen[u].bit_count(), g.adj[u].bit_count(), -u),
        )
        c = 0
        while seen[v] >> c & 1:
            c += 1
        coloring[v] = c
        for u in bits(g.adj[v]):
            seen[u] |= 1 << c
    return coloring


def _k_colorable(g: Graph, k: int) -> list[int] | None:
    n = g.n
    coloring = [-1] * n
    seen = [0] * n
    deg = [nb.bit_count() for nb in g.adj]

    def solve(done: int, used: int) -> bool:
        if done == n:
            return True
        v = max(
            (u for u in range(n) if coloring[u] < 0),
            key=lambda u: (seen[u].bit_count(), deg[u], -u),
        )
        for c in range(min(used + 1, k)):
            if seen[v] >> c & 1:
                continue
            coloring[v] = c
            touched = [u for u in bits(g.adj[v]) if coloring[u] < 0 and not seen[u] >> c & 1]
            for u in touched:
                seen[u] |= 1 << c
            if all(seen[u].bit_count() < k for u in touched) and solve(done + 1, max(used, c + 1)):
                return True
            for u in touched:
                seen[u] &= ~(1 << c)
            coloring[v] = -1
        return False

    return coloring if solve(0, 0) else None


def _exact_coloring(g: Graph) -> tuple[int, ...]:
    if g.n == 0:
        return ()
    upper = _dsatur_greedy(g)
    ub = max(upper) + 1
    lb = max(clique_number(g), 1)
    for k in range(lb, ub):
        found = _k_colorable(g, k)
        if found is not None:
            return tuple(found)
    return tuple(upper)


@lru_cache(maxsize=16384)
def chromatic_number(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Exact chromatic number with an optimal colouring (colours ``0..chi-1``)."""
    guard(g.n, 40, "chromatic_number")
    if independence_at_most_two(g):
        coloring = _alpha2_coloring(g)
    else:
        coloring = _exact_coloring(g)
    return (max(coloring) + 1 if coloring else 0), coloring


def exact_coloring_search(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Branch-and-bound colouring without the independence-two shortcut."""
    guard(g.n, 40, "chromatic_number")
    coloring = _exact_coloring(g)
    return (max(coloring) + 1 if coloring else 0), coloring


# ---------------------------------------------------------------------------
# connectivity


def local_vertex_connectivity(g: Graph, s: int, t: int) -> int:
    """Maximum number of internally disjoint s-t paths for non-adjacent s, t.

    Unit-capacity max-flow on the split graph: vertex ``v`` becomes ``2v -> 2v+1``.
    """
    if s == t or g.has_edge(s, t):
        raise ValueError("local connectivity needs two distinct non-adjacent vertices")
    source, sink = 2 * s + 1, 2 * t
    # residual[a] maps b -> remaining capacity of arc a -> b
    residual: dict[int, dict[int, int]] = {}

    def arc(a: int, b: int, cap: int) -> None:
        residual.setdefault(a, {})[b] = residual.get(a, {}).get(b, 0) + cap
        residual.setdefault(b, {}).setdefault(a, 0)

    big = g.n + 1
    for v in range(g.n):
        if v not in (s, t):
            arc(2 * v, 2 * v + 1, 1)
        for u in bits(g.adj[v]):
            arc(2 * v + 1, 2 * u, big)

    flow = 0
    while True:
        parent = {source: source}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b, cap in residual.get(a, {}).items():
                if cap > 0 and b not in parent:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            return flow
        b = sink
        while b != source:
            a = parent[b]
            residual[a][b] -= 1
            residual[b][a] += 1
            b = a
        flow += 1


@lru_cache(maxsize=4096)
def vertex_connectivity(g: Graph) -> int:
    """kappa(G); n-1 for complete graphs and 0 for disconnected ones."""
    n = g.n
    if n <= 1:
        return 0
    if len(g.components_within(g.full_mask)) > 1:
        return 0
    best = min(nb.bit_count() for nb in g.adj)
    if g.is_complete():
        return n - 1
    # Some vertex among the first best+1 lies outside a minimum cut, and every
    # vertex it is separated from has a larger index.
    i = 0
    while i <= best and i < n:
        for j in range(i + 1, n):
            if not g.has_edge(i, j):
                best = min(best, local_vertex_connectivity(g, i, j))
        i += 1
    return best


@dataclass(frozen=True)
class CutCertificate:
    X: frozenset[int]
    L: frozenset[int]
    R: frozenset[int]
    X_L: frozenset[int]
    X_R: frozenset[int]

    def as_dict(self) -> dict:
        return {k: sorted(getattr(self, k)) for k in ("X", "L", "R", "X_L", "X_R")}


def _first_separating_clique(g: Graph, size: int) -> int | None:
    """First clique L (lexicographic order) with |N(L)| = size and N[L] != V."""
    adj, full = g.adj, g.full_mask
    stack = [(0, 0, full)]
    # explicit preorder DFS; children pushed in reverse to pop in ascending order
    while stack:
        clique, nbhd, cand = stack.pop()
        if clique:
            outside = nbhd & ~clique
            if outside.bit_count() == size and (clique | outside) != full:
                return clique
        children = []
        for v in bits(cand):
            later = cand >> (v + 1) << (v + 1)
            children.append((clique | 1 << v, nbhd | adj[v], later & adj[v]))
        stack.extend(reversed(children))
    return None


def minimum_vertex_cut(g: Graph) -> CutCertificate:
    """Minimum vertex cut of a graph with independence number at most two.

    Every minimum cut X of such a graph leaves exactly two clique components and
    equals the neighbourhood of either one.  The certificate returned is the one
    whose component L comes first in lexicographic clique order.
    """
    if g.is_complete():
        raise PreconditionError("complete graphs have no vertex cut")
    if not independence_at_most_two(g):
        raise PreconditionError("alpha>2: minimum_vertex_cut requires independence number at most 2")
    kappa = vertex_connectivity(g)
    lmask = _first_separating_clique(g, kappa)
    assert lmask is not None, "no clique component realises the connectivity"
    xmask = 0
    for v in bits(lmask):
        xmask |= g.adj[v]
    xmask &= ~lmask
    comps = g.components_within(g.full_mask & ~xmask)
    assert len(comps) == 2, "removing a minimum cut must leave exactly two components"
    assert all(g.is_clique(c) for c in comps), "components of G - X must be cliques"
    rmask = comps[1] if comps[0] == lmask else comps[0]

    def complete_to(side: int) -> int:
        return mask_of(x for x in bits(xmask) if g.adj[x] & side == side)

    xl, xr = complete_to(lmask), complete_to(rmask)
    assert xl | xr == xmask, "every cut vertex is complete to one side"
    # cut vertices complete to both sides join X_L, in either orientation
    xr &= ~xl
    alt_xl = complete_to(rmask)
    alt_xr = xmask & ~alt_xl
    if rmask.bit_count() + alt_xl.bit_count() > lmask.bit_count() + xl.bit_count():
        lmask, rmask, xl, xr = rmask, lmask, alt_xl, alt_xr
    return CutCertificate(
        X=frozenset(bits(xmask)),
        L=frozenset(bits(lmask)),
        R=frozenset(bits(rmask)),
        X_L=frozenset(bits(xl)),
        X_R=frozenset(bits(xr)),
    )
