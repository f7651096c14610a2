"""Odd minor certificates and their verifier.

A certificate lists disjoint branch sets, each with an explicit spanning tree,
together with a colouring of the used vertices by 1 and 2.  It is an odd model
of its pattern when every tree edge joins two colours and every pattern edge is
witnessed by a host edge whose ends share a colour.  The verifier below checks
exactly that and nothing else; it does not share code with the constructions.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field, replace
from itertools import combinations

from .errors import PreconditionError
from .graph import Graph

__all__ = [
    "LEFT",
    "RIGHT",
    "Pattern",
    "BranchSet",
    "OddModel",
    "Violation",
    "CertificateSchemaError",
    "verify_odd_model",
    "normalize_colors",
    "clique_model_to_bipartite",
    "transpose_bipartite",
    "weaken_pattern",
    "singleton_model",
]

LEFT, RIGHT = "left", "right"
CLIQUE, BIPARTITE, PLUS_CLIQUE = "clique", "bipartite", "bipartite_plus_clique"

VIOLATION_KINDS = (
    "overlap",
    "not-tree",
    "tree-edge-monochromatic",
    "missing-mono-cross-edge",
    "uncolored-vertex",
    "not-special",
    "shape-mismatch",
    "bad-vertex",
)


class CertificateSchemaError(ValueError):
    """A serialized certificate does not follow the expected layout."""


@dataclass(frozen=True)
class Pattern:
    """Target minor shape.

    ``Pattern.clique(m)`` stores ``m`` in ``left``; its branch sets carry no side.
    ``bipartite_plus_clique`` is K_{l,r} with the left side completed to a clique.
    """

    kind: str
    left: int
    right: int = 0

    def __post_init__(self):
        if self.kind not in (CLIQUE, BIPARTITE, PLUS_CLIQUE):
            raise ValueError(f"unknown pattern kind {self.kind!r}")
        if self.left < 0 or self.right < 0:
            raise ValueError("pattern part sizes must be non-negative")
        if self.kind == CLIQUE and (self.left < 1 or self.right):
            raise ValueError("Clique(m) needs m >= 1")

    @classmethod
    def clique(cls, m: int) -> Pattern:
        return cls(CLIQUE, m)

    @classmethod
    def bipartite(cls, left: int, right: int) -> Pattern:
        return cls(BIPARTITE, left, right)

    @classmethod
    def plus_clique(cls, left: int, right: int) -> Pattern:
        return cls(PLUS_CLIQUE, left, right)

    @property
    def size(self) -> int:
        return self.left + self.right

    def __str__(self) -> str:
        if self.kind == CLIQUE:
            return f"K_{self.left}"
        if self.kind == BIPARTITE:
            return f"K_{{{self.left},{self.right}}}"
        return f"K^{self.left}_{{{self.left},{self.right}}}"

    def to_json(self) -> dict:
        if self.kind == CLIQUE:
            return {"kind": CLIQUE, "size": self.left}
        return {"kind": self.kind, "left": self.left, "right": self.right}

    @classmethod
    def from_json(cls, data) -> Pattern:
        try:
            if data["kind"] == CLIQUE:
                return cls.clique(int(data["size"]))
            return cls(data["kind"], int(data["left"]), int(data["right"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise CertificateSchemaError(f"bad pattern {data!r}: {exc}") from None


@dataclass(frozen=True)
class BranchSet:
    vertices: tuple[int, ...]
    tree_edges: tuple[tuple[int, int], ...] = ()
    side: str | None = None


@dataclass(frozen=True, eq=True)
class OddModel:
    pattern: Pattern
    branch_sets: tuple[BranchSet, ...]
    colors: Mapping[int, int] = field(default_factory=dict)

    def vertices(self) -> set[int]:
        return {v for b in self.branch_sets for v in b.vertices}

    def side_count(self, side: str) -> int:
        return sum(1 for b in self.branch_sets if b.side == side)

    def relabel(self, mapping) -> OddModel:
        """Rename every vertex ``v`` to ``mapping[v]``."""
        sets = tuple(
            BranchSet(
                tuple(mapping[v] for v in b.vertices),
                tuple((mapping[u], mapping[v]) for u, v in b.tree_edges),
                b.side,
            )
            for b in self.branch_sets
        )
        return OddModel(self.pattern, sets, {mapping[v]: c for v, c in self.colors.items()})

    def to_json(self) -> dict:
        return {
            "pattern": self.pattern.to_json(),
            "branch_sets": [
                {"side": b.side, "vertices": list(b.vertices), "tree_edges": [list(e) for e in b.tree_edges]}
                for b in self.branch_sets
            ],
            "colors": {str(v): self.colors[v] for v in sorted(self.colors)},
        }

    @classmethod
    def from_json(cls, data, n: int | None = None) -> OddModel:
        """Parse a certificate; with ``n`` given, vertices must lie in ``0..n-1``."""
        if not isinstance(data, Mapping):
            raise CertificateSchemaError("certificate must be a JSON object")
        for key in ("pattern", "branch_sets", "colors"):
            if key not in data:
                raise CertificateSchemaError(f"missing field {key!r}")
        pattern = Pattern.from_json(data["pattern"])
        sets = []
        try:
            for i, raw in enumerate(data["branch_sets"]):
                side = raw.get("side")
                if side not in (None, LEFT, RIGHT):
                    raise CertificateSchemaError(f"branch set {i}: bad side {side!r}")
                verts = tuple(_vertex(v, n) for v in raw["vertices"])
                edges = []
                for e in raw.get("tree_edges", []):
                    if len(e) != 2:
                        raise CertificateSchemaError(f"branch set {i}: tree edge {e!r} is not a pair")
                    edges.append((_vertex(e[0], n), _vertex(e[1], n)))
                sets.append(BranchSet(verts, tuple(edges), side))
            colors = {_vertex(k, n): _color(c) for k, c in data["colors"].items()}
        except (KeyError, TypeError, AttributeError) as exc:
            raise CertificateSchemaError(f"malformed certificate: {exc}") from None
        return cls(pattern, tuple(sets), colors)


def _vertex(raw, n: int | None) -> int:
    if isinstance(raw, bool):
        raise CertificateSchemaError(f"bad vertex {raw!r}")
    try:
        v = int(raw)
    except (TypeError, ValueError):
        raise CertificateSchemaError(f"bad vertex {raw!r}") from None
    if v < 0 or (n is not None and v >= n):
        raise CertificateSchemaError(f"vertex {v} is outside the host graph")
    return v


def _color(raw) -> int:
    if raw not in (1, 2) or isinstance(raw, bool):
        raise CertificateSchemaError(f"colour must be 1 or 2, got {raw!r}")
    return raw


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: tuple = ()

    def to_json(self) -> dict:
        return {"kind": self.kind, "detail": list(self.detail)}


# ---------------------------------------------------------------------------
# verification


def _required_pairs(pattern: Pattern, sides: Sequence[str | None]) -> list[tuple[int, int]]:
    pairs = []
    for i, j in combinations(range(len(sides)), 2):
        if pattern.kind == CLIQUE:
            pairs.append((i, j))
        elif sides[i] != sides[j]:
            pairs.append((i, j))
        elif pattern.kind == PLUS_CLIQUE and sides[i] == LEFT:
            pairs.append((i, j))
    return pairs


def _is_spanning_tree(g: Graph, verts: set[int], edges) -> str | None:
    if not verts:
        return "empty branch set"
    if len(edges) != len(verts) - 1:
        return f"{len(edges)} edges for {len(verts)} vertices"
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in edges:
        if u not in verts or v not in verts:
            return f"edge {u}-{v} leaves the branch set"
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            return f"edge {u}-{v} is not a host edge"
        ru, rv = find(u), find(v)
        if ru == rv:
            return f"edge {u}-{v} closes a cycle"
        parent[ru] = rv
    return None


def verify_odd_model(g: Graph, m: OddModel, require_special: bool = False) -> list[Violation]:
    """Every way in which ``m`` fails to be an odd model of its pattern in ``g``.

    An empty list means the certificate is valid.  All violations are reported,
    not just the first.
    """
    out: list[Violation] = []
    pattern = m.pattern
    sets = m.branch_sets
    colors = m.colors

    sides = [b.side for b in sets]
    if pattern.kind == CLIQUE:
        if len(sets) != pattern.left:
            out.append(Violation("shape-mismatch", (len(sets), pattern.left)))
    else:
        nl, nr = sides.count(LEFT), sides.count(RIGHT)
        if nl != pattern.left or nr != pattern.right or nl + nr != len(sets):
            out.append(Violation("shape-mismatch", (nl, nr, pattern.left, pattern.right)))

    owner: dict[int, int] = {}
    for i, b in enumerate(sets):
        for v in b.vertices:
            if not 0 <= v < g.n:
                out.append(Violation("bad-vertex", (i, v)))
            if v in owner:
                out.append(Violation("overlap", (owner[v], i, v)))
            else:
                owner[v] = i

    for i, b in enumerate(sets):
        problem = _is_spanning_tree(g, set(b.vertices), b.tree_edges)
        if problem is not None:
            out.append(Violation("not-tree", (i, problem)))

    for v in sorted(owner):
        if colors.get(v) not in (1, 2):
            out.append(Violation("uncolored-vertex", (v,)))

    for i, b in enumerate(sets):
        for u, v in b.tree_edges:
            cu, cv = colors.get(u), colors.get(v)
            if cu is not None and cu == cv:
                out.append(Violation("tree-edge-monochromatic", (i, u, v)))

    for i, j in _required_pairs(pattern, sides):
        witnessed = any(
            0 <= u < g.n
            and 0 <= w < g.n
            and g.has_edge(u, w)
            and colors.get(u) in (1, 2)
            and colors.get(u) == colors.get(w)
            for u in sets[i].vertices
            for w in sets[j].vertices
        )
        if not witnessed:
            out.append(Violation("missing-mono-cross-edge", (i, j)))

    if require_special:
        singles = [(i, b.vertices[0]) for i, b in enumerate(sets) if len(b.vertices) == 1]
        shades = {colors.get(v) for _, v in singles}
        if len(shades) > 1:
            out.append(Violation("not-special", tuple(i for i, _ in singles)))
    return out


# ---------------------------------------------------------------------------
# transformations


def singleton_colors(m: OddModel) -> set[int]:
    return {m.colors.get(b.vertices[0]) for b in m.branch_sets if len(b.vertices) == 1}


def normalize_colors(m: OddModel) -> OddModel:
    """Globally swap colours if needed so that every singleton branch set has colour 1."""
    shades = singleton_colors(m)
    if len(shades) > 1:
        raise PreconditionError("model is not special: singleton branch sets use both colours")
    if shades == {2}:
        return replace(m, colors={v: 3 - c for v, c in m.colors.items()})
    return m


def clique_model_to_bipartite(m: OddModel, ell: int) -> OddModel:
    """Read an odd K_k model as an odd K^ell_{ell,k-ell} model: the first ``ell`` sets go left."""
    if m.pattern.kind != CLIQUE:
        raise PreconditionError("expected a clique model")
    k = m.pattern.left
    if not 0 <= ell <= k:
        raise PreconditionError(f"ell = {ell} outside 0..{k}")
    sets = tuple(replace(b, side=LEFT if i < ell else RIGHT) for i, b in enumerate(m.branch_sets))
    return OddModel(Pattern.plus_clique(ell, k - ell), sets, dict(m.colors))


def transpose_bipartite(m: OddModel) -> OddModel:
    """K_{l,r} model to K_{r,l} model by swapping the side tags."""
    if m.pattern.kind != BIPARTITE:
        raise PreconditionError("only plain complete bipartite patterns can be transposed")
    flip = {LEFT: RIGHT, RIGHT: LEFT}
    sets = tuple(replace(b, side=flip.get(b.side, b.side)) for b in m.branch_sets)
    return OddModel(Pattern.bipartite(m.pattern.right, m.pattern.left), sets, dict(m.colors))


def weaken_pattern(m: OddModel) -> OddModel:
    """Drop the left-left requirements of a K^l_{l,r} model, leaving a K_{l,r} model."""
    if m.pattern.kind != PLUS_CLIQUE:
        raise PreconditionError("expected a bipartite-plus-clique model")
    return replace(m, pattern=Pattern.bipartite(m.pattern.left, m.pattern.right))


def singleton_model(pattern: Pattern, left: Sequence[int], right: Sequence[int], color: int = 1) -> OddModel:
    """Model whose branch sets are single vertices, all sharing one colour."""
    if pattern.kind == CLIQUE:
        sets = tuple(BranchSet((v,)) for v in list(left) + list(right))
    else:
        sets = tuple(BranchSet((v,), (), LEFT) for v in left) + tuple(BranchSet((v,), (), RIGHT) for v in right)
    return OddModel(pattern, sets, {b.vertices[0]: color for b in sets})
