"""Simple undirected graphs on vertices 0..n-1 with bitset adjacency.

Every vertex's neighbourhood is stored as a Python int used as a bitset, so
set algebra on neighbourhoods (the inner loop of every search in this
package) is a handful of integer operations.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Sequence

__all__ = [
    "Graph",
    "Graph6Error",
    "GraphFormatError",
    "bits",
    "mask_of",
    "parse_graph6",
    "to_graph6",
    "parse_edge_list",
    "complement",
    "induced_subgraph",
    "connected_components",
    "read_graph",
]


class GraphFormatError(ValueError):
    """Raised when a textual graph description cannot be parsed."""


class Graph6Error(GraphFormatError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Immutable simple graph.

    ``adj[v]`` is the neighbour bitset of ``v``.  ``labels`` optionally keeps
    the external names of the vertices (e.g. 1-based DIMACS ids); labels take
    no part in equality or hashing.
    """

    __slots__ = ("n", "adj", "labels", "_hash")

    def __init__(self, n: int, adj: Sequence[int], labels: Sequence | None = None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        if len(adj) != n:
            raise ValueError("adjacency length does not match vertex count")
        full = (1 << n) - 1
        for v, nb in enumerate(adj):
            if nb & ~full:
                raise ValueError(f"vertex {v} has a neighbour outside 0..{n - 1}")
            if nb >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in bits(nb):
                if not adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
        self.n = n
        self.adj = tuple(adj)
        self.labels = tuple(labels) if labels is not None else None
        self._hash = hash((n, self.adj))

    @classmethod
    def _trusted(cls, n: int, adj: Sequence[int]) -> Graph:
        # Skips validation; only for adjacency derived from an existing Graph.
        g = object.__new__(cls)
        g.n = n
        g.adj = tuple(adj)
        g.labels = None
        g._hash = hash((n, g.adj))
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls._with_labels(cls._trusted(n, adj), labels)

    @staticmethod
    def _with_labels(g: Graph, labels) -> Graph:
        if labels is not None:
            g.labels = tuple(labels)
        return g

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls._trusted(n, [0] * n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls._trusted(n, [full ^ (1 << v) for v in range(n)])

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def petersen(cls) -> Graph:
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return cls.from_edges(10, outer + spokes + inner)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> set[int]:
        return set(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def max_degree(self) -> int:
        return max((nb.bit_count() for nb in self.adj), default=0)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def edge_count(self) -> int:
        return sum(nb.bit_count() for nb in self.adj) // 2

    def is_complete(self) -> bool:
        return all(nb.bit_count() == self.n - 1 for nb in self.adj)

    def complement(self) -> Graph:
        full = self.full_mask
        return Graph._trusted(self.n, [full & ~nb & ~(1 << v) for v, nb in enumerate(self.adj)])

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
        keep = sorted(set(vertices))
        for v in keep:
            if not 0 <= v < self.n:
                raise ValueError(f"vertex {v} out of range for a graph on {self.n} vertices")
        index = {old: new for new, old in enumerate(keep)}
        adj = []
        for old in keep:
            nb = 0
            for u in bits(self.adj[old]):
                j = index.get(u)
                if j is not None:
                    nb |= 1 << j
            adj.append(nb)
        sub = Graph._trusted(len(keep), adj)
        if self.labels is not None:
            sub.labels = tuple(self.labels[v] for v in keep)
        return sub, index

    def delete(self, v: int) -> tuple[Graph, dict[int, int]]:
        return self.induced_subgraph(u for u in range(self.n) if u != v)

    def components_within(self, mask: int) -> list[int]:
        """Connected components of ``G[mask]`` as bitsets, ordered by least member."""
        comps = []
        rest = mask
        while rest:
            seen = rest & -rest
            frontier = seen
            while frontier:
                nxt = 0
                for u in bits(frontier):
                    nxt |= self.adj[u]
                nxt &= rest & ~seen
                seen |= nxt
                frontier = nxt
            comps.append(seen)
            rest &= ~seen
        return comps

    def connected_components(self) -> list[frozenset[int]]:
        return [frozenset(bits(c)) for c in self.components_within(self.full_mask)]

    def is_clique(self, mask: int) -> bool:
        return all(mask & ~(1 << v) & ~self.adj[v] == 0 for v in bits(mask))


def complement(g: Graph) -> Graph:
    return g.complement()


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    return g.induced_subgraph(vertices)


def connected_components(g: Graph) -> list[frozenset[int]]:
    return g.connected_components()


# ---------------------------------------------------------------------------
# graph6

_G6_PREFIX = ">>graph6<<"


def _g6_value(line: str, i: int, base: int) -> int:
    c = ord(line[i])
    if not 63 <= c <= 126:
        raise Graph6Error(f"character {line[i]!r} outside the graph6 range", base + i)
    return c - 63


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line (an optional ``>>graph6<<`` prefix is accepted)."""
    line = text.strip()
    base = 0
    if line.startswith(_G6_PREFIX):
        line = line[len(_G6_PREFIX):]
        base = len(_G6_PREFIX)
    if not line:
        raise Graph6Error("empty input", base)
    if line[0] != "~":
        header = range(0, 1)
    elif line[1:2] == "~":
        header = range(2, 8)
    else:
        header = range(1, 4)
    if len(line) < header.stop:
        raise Graph6Error("truncated size header", base + len(line))
    n = 0
    for i in header:
        n = n << 6 | _g6_value(line, i, base)
    pos = header.stop

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    payload = line[pos:]
    if len(payload) < nbytes:
        raise Graph6Error(
            f"truncated payload: {n} vertices need {nbytes} bytes, got {len(payload)}",
            base + len(line),
        )
    if len(payload) > nbytes:
        raise Graph6Error("unexpected bytes after payload", base + pos + nbytes)

    values = [_g6_value(line, pos + j, base) for j in range(nbytes)]
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte, bit = divmod(k, 6)
            if values[byte] >> (5 - bit) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph._trusted(n, adj)


def _g6_size(n: int) -> str:
    if n < 63:
        return chr(63 + n)
    if n < 258048:
        return "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    return "~~" + "".join(chr(63 + (n >> s & 63)) for s in (30, 24, 18, 12, 6, 0))


def to_graph6(g: Graph) -> str:
    """Canonical graph6 encoding (zero padding, no prefix, no newline)."""
    out = [_g6_size(g.n)]
    acc = 0
    filled = 0
    for j in range(1, g.n):
        col = g.adj[j]
        for i in range(j):
            acc = acc << 1 | (col >> i & 1)
            filled += 1
            if filled == 6:
                out.append(chr(63 + acc))
                acc = filled = 0
    if filled:
        out.append(chr(63 + (acc << (6 - filled))))
    return "".join(out)


# ---------------------------------------------------------------------------
# edge lists and DIMACS

_COMMENT = re.compile(r"#.*")


def parse_edge_list(text: str) -> Graph:
    """Parse a plain edge list (``n`` then ``u v`` pairs) or DIMACS ``p edge``/``e`` lines.

    DIMACS vertices are 1-based and keep their original ids in ``labels``.
    """
    lines = [(no, _COMMENT.sub("", raw).strip()) for no, raw in enumerate(text.splitlines(), 1)]
    lines = [(no, ln) for no, ln in lines if ln]
    if not lines:
        raise GraphFormatError("empty input")
    if any(ln.split()[0] == "p" for _, ln in lines):
        return _parse_dimacs(lines)

    tokens: list[tuple[int, str]] = [(no, tok) for no, ln in lines for tok in ln.split()]
    try:
        n = int(tokens[0][1])
    except ValueError:
        raise GraphFormatError(f"line {tokens[0][0]}: vertex count expected, got {tokens[0][1]!r}") from None
    if n < 0:
        raise GraphFormatError(f"line {tokens[0][0]}: negative vertex count")
    rest = tokens[1:]
    if len(rest) % 2:
        raise GraphFormatError(f"line {rest[-1][0]}: dangling endpoint {rest[-1][1]!r}")
    edges = []
    for k in range(0, len(rest), 2):
        (no, a), (_, b) = rest[k], rest[k + 1]
        try:
            u, v = int(a), int(b)
        except ValueError:
            raise GraphFormatError(f"line {no}: non-integer vertex in {a!r} {b!r}") from None
        edges.append(_checked_edge(no, u, v, n, 0))
    return Graph.from_edges(n, edges)


def _checked_edge(no: int, u: int, v: int, n: int, offset: int) -> tuple[int, int]:
    for x in (u, v):
        if not offset <= x < n + offset:
            raise GraphFormatError(f"line {no}: vertex index {x} out of range for n={n}")
    if u == v:
        raise GraphFormatError(f"line {no}: self-loop at vertex {u}")
    return u - offset, v - offset


def _parse_dimacs(lines: list[tuple[int, str]]) -> Graph:
    n = None
    edges = []
    for no, ln in lines:
        parts = ln.split()
        head = parts[0]
        if head == "c":
            continue
        if head == "p":
            if len(parts) < 3 or n is not None:
                raise GraphFormatError(f"line {no}: bad problem line {ln!r}")
            try:
                n = int(parts[2])
            except ValueError:
                raise GraphFormatError(f"line {no}: bad vertex count in {ln!r}") from None
        elif head == "e":
            if n is None:
                raise GraphFormatError(f"line {no}: edge before problem line")
            if len(parts) != 3:
                raise GraphFormatError(f"line {no}: bad edge line {ln!r}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError(f"line {no}: non-integer vertex in {ln!r}") from None
            edges.append(_checked_edge(no, u, v, n, 1))
        else:
            raise GraphFormatError(f"line {no}: unrecognised DIMACS line {ln!r}")
    if n is None:
        raise GraphFormatError("missing DIMACS problem line")
    return Graph.from_edges(n, edges, labels=range(1, n + 1))


def read_graph(text: str, fmt: str = "auto") -> Graph:
    """Parse ``text`` as graph6, DIMACS or a plain edge list.

    ``auto`` treats a single non-numeric token as graph6 and anything else as an
    edge list (DIMACS is recognised by its ``p`` line).
    """
    if fmt == "graph6":
        return parse_graph6(text)
    if fmt in ("edges", "dimacs"):
        return parse_edge_list(text)
    if fmt != "auto":
        raise ValueError(f"unknown graph format {fmt!r}")
    stripped = text.strip()
    if stripped and len(stripped.split()) == 1 and not stripped.isdigit():
        return parse_graph6(stripped)
    return parse_edge_list(text)
