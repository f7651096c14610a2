"""Search subroutines used by the constructions.

Saturating bipartite matchings (with a Hall violator when none exists),
exact packings of vertex-disjoint induced 3-vertex paths, and the local
exchange that pushes a packing's leftover vertices into a neighbourhood.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .errors import TheoremContradiction
from .graph import Graph, bits, mask_of

__all__ = [
    "MatchingOrViolator",
    "P3",
    "saturating_matching",
    "induced_p3s",
    "find_p3_packing",
    "improve_packing_near_vertex",
    "count_quantity",
    "packing_vertices",
]

P3 = tuple[int, int, int]  # (end, mid, end)


@dataclass(frozen=True)
class MatchingOrViolator:
    """Either a matching saturating the requested side or a Hall violator."""

    matching: tuple[tuple[int, int], ...] | None = None
    violator: frozenset[int] | None = None

    @property
    def saturated(self) -> bool:
        return self.matching is not None


def saturating_matching(g: Graph, a: Iterable[int], r: Iterable[int]) -> MatchingOrViolator:
    """Match every vertex of ``a`` into ``r`` along edges of ``g``.

    Augmenting paths are tried from each vertex of ``a`` in ascending order.  When
    one fails, the ``a``-vertices reached by the failed alternating search form a
    set S with ``|N(S) & r| = |S| - 1``, which is returned as the violator.
    """
    a = sorted(set(a))
    rmask = mask_of(r)
    if mask_of(a) & rmask:
        raise ValueError("the two sides of a matching must be disjoint")
    match_r: dict[int, int] = {}

    def augment(u: int, visited: set[int], reached: set[int]) -> bool:
        reached.add(u)
        for w in bits(g.adj[u] & rmask):
            if w in visited:
                continue
            visited.add(w)
            if w not in match_r or augment(match_r[w], visited, reached):
                match_r[w] = u
                return True
        return False

    for u in a:
        reached: set[int] = set()
        if not augment(u, set(), reached):
            return MatchingOrViolator(violator=frozenset(reached))
    pairs = sorted((u, w) for w, u in match_r.items())
    return MatchingOrViolator(matching=tuple(pairs))


def induced_p3s(g: Graph, forbidden: int = 0) -> list[P3]:
    """All induced 3-vertex paths avoiding the ``forbidden`` bitset, in lexicographic order."""
    allowed = g.full_mask & ~forbidden
    paths = []
    for mid in bits(allowed):
        nb = g.adj[mid] & allowed
        for a in bits(nb):
            later = nb >> (a + 1) << (a + 1) & ~g.adj[a]
            for c in bits(later):
                paths.append((a, mid, c))
    paths.sort()
    return paths


def packing_vertices(packing: Iterable[Sequence[int]]) -> int:
    m = 0
    for p in packing:
        for v in p:
            m |= 1 << v
    return m


def find_p3_packing(g: Graph, k: int, forbidden: Iterable[int] = ()) -> list[P3] | None:
    """Exactly ``k`` pairwise disjoint induced P3s avoiding ``forbidden``, or None.

    Exact backtracking over the lexicographically ordered candidate list; the
    first packing in that order is returned.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return []
    fmask = mask_of(forbidden)
    cands = induced_p3s(g, fmask)
    cmasks = [(1 << p[0]) | (1 << p[1]) | (1 << p[2]) for p in cands]
    free_total = (g.full_mask & ~fmask).bit_count()
    chosen: list[int] = []

    def extend(start: int, used: int, need: int) -> bool:
        if need == 0:
            return True
        if free_total - used.bit_count() < 3 * need:
            return False
        for i in range(start, len(cands) - need + 1):
            cm = cmasks[i]
            if cm & used:
                continue
            chosen.append(i)
            if extend(i + 1, used | cm, need - 1):
                return True
            chosen.pop()
        return False

    if not extend(0, 0, k):
        return None
    return [cands[i] for i in chosen]


def count_quantity(g: Graph, v: int, packing: Iterable[Sequence[int]]) -> int:
    """``|N[v] - V(packing)|``, the quantity the exchange loop increases."""
    closed = g.adj[v] | (1 << v)
    return (closed & ~packing_vertices(packing)).bit_count()


def _normal(p: P3) -> P3:
    return p if p[0] < p[2] else (p[2], p[1], p[0])


def improve_packing_near_vertex(
    g: Graph, v: int, packing: Sequence[P3], log: list | None = None
) -> list[P3]:
    """Exchange path vertices until at most one leftover vertex misses ``N(v)``.

    Leftover vertices are ``B = V - V(packing) - {v}``; ``X = B & M(v)`` where
    ``M(v) = V - N[v]``.  While ``|X| >= 2`` a path lying inside ``N(v)`` swaps one
    of its vertices for the smallest ``x`` in ``X``.  Each swap moves a vertex of
    ``N(v)`` back into B, so ``count_quantity`` strictly increases.
    """
    packing = [_normal(tuple(p)) for p in packing]
    adj = g.adj
    full = g.full_mask
    vbit = 1 << v
    if packing_vertices(packing) & vbit:
        raise ValueError("v must not lie on a packed path")
    far = full & ~adj[v] & ~vbit
    for _ in range(g.n + 1):
        used = packing_vertices(packing)
        xs = full & ~used & ~vbit & far
        if xs.bit_count() <= 1:
            return packing
        x = (xs & -xs).bit_length() - 1
        for idx, p in enumerate(packing):
            if mask_of(p) & ~adj[v] == 0:
                break
        else:
            raise TheoremContradiction(
                f"no packed path lies inside N({v}) although |X| = {xs.bit_count()}", graph=g
            )
        a1, a2, a3 = p
        if not adj[a1] >> x & 1:
            a1, a3 = a3, a1
        if not adj[a1] >> x & 1:
            raise TheoremContradiction(
                f"{a1}, {a3}, {x} are pairwise non-adjacent; independence number exceeds 2", graph=g
            )
        if adj[a3] >> x & 1:
            new = (a3, x, a1)
        elif not adj[a2] >> x & 1:
            new = (a2, a1, x)
        else:
            new = (a3, a2, x)
        before = count_quantity(g, v, packing)
        packing = packing[:idx] + [_normal(new)] + packing[idx + 1:]
        after = count_quantity(g, v, packing)
        assert after > before, "exchange did not increase |N[v] - V(P)|"
        if log is not None:
            log.append({"replaced": list(p), "by": list(new), "x": x, "quantity": after})
    raise TheoremContradiction("exchange loop did not reach a fixpoint", graph=g)
