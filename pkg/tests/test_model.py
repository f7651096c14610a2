from __future__ import annotations

import json
import random
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import EXPECTED_KINDS, MUTATIONS, mutate, naive_is_odd_model
from oddminor.construct import special_bipartite_model
from oddminor.errors import PreconditionError
from oddminor.graph import Graph
from oddminor.invariants import chromatic_number
from oddminor.model import (
    LEFT,
    RIGHT,
    BranchSet,
    CertificateSchemaError,
    OddModel,
    Pattern,
    clique_model_to_bipartite,
    normalize_colors,
    singleton_model,
    transpose_bipartite,
    verify_odd_model,
    weaken_pattern,
)
from oddminor.oracle import random_alpha2_graph

C5 = Graph.cycle(5)


def c5_clique_model() -> OddModel:
    return OddModel(
        Pattern.clique(3),
        (
            BranchSet((0,), ()),
            BranchSet((1, 2), ((1, 2),)),
            BranchSet((4, 3), ((4, 3),)),
        ),
        {0: 1, 1: 1, 4: 1, 2: 2, 3: 2},
    )


def kinds(violations) -> set[str]:
    return {v.kind for v in violations}


def test_pattern_invariants():
    with pytest.raises(ValueError):
        Pattern.clique(0)
    with pytest.raises(ValueError):
        Pattern.bipartite(-1, 2)
    assert Pattern.bipartite(2, 3).size == 5
    assert Pattern.clique(4).size == 4


def test_c5_clique_model_verifies():
    assert verify_odd_model(C5, c5_clique_model()) == []
    assert naive_is_odd_model(C5, c5_clique_model())


def test_recolouring_breaks_tree_and_cross_edge():
    m = c5_clique_model()
    bad = replace(m, colors={**m.colors, 2: 1})
    found = verify_odd_model(C5, bad)
    assert kinds(found) == {"tree-edge-monochromatic", "missing-mono-cross-edge"}
    assert any(v.kind == "tree-edge-monochromatic" and v.detail == (1, 1, 2) for v in found)
    assert any(v.kind == "missing-mono-cross-edge" and v.detail == (1, 2) for v in found)


def test_overlap_reported():
    m = c5_clique_model()
    sets = list(m.branch_sets)
    sets[0] = BranchSet((3,), ())
    bad = replace(m, branch_sets=tuple(sets))
    assert "overlap" in kinds(verify_odd_model(C5, bad))


def test_other_violation_kinds():
    m = c5_clique_model()
    assert "uncolored-vertex" in kinds(verify_odd_model(C5, replace(m, colors={k: c for k, c in m.colors.items() if k != 3})))
    sets = list(m.branch_sets)
    sets[1] = BranchSet((1, 2), ())
    assert "not-tree" in kinds(verify_odd_model(C5, replace(m, branch_sets=tuple(sets))))
    sets[1] = BranchSet((1, 3), ((1, 3),))
    assert "not-tree" in kinds(verify_odd_model(C5, replace(m, branch_sets=tuple(sets))))
    assert "shape-mismatch" in kinds(verify_odd_model(C5, replace(m, pattern=Pattern.clique(4))))
    star = singleton_model(Pattern.bipartite(1, 2), [0], [1, 4])
    mixed = replace(star, colors={0: 1, 1: 2, 4: 1})
    found = kinds(verify_odd_model(C5, mixed, require_special=True))
    assert "not-special" in found
    assert "not-special" not in kinds(verify_odd_model(C5, mixed))


def test_normalize_colors():
    star = singleton_model(Pattern.bipartite(1, 2), [0], [1, 4], color=2)
    flipped = normalize_colors(star)
    assert flipped.colors == {0: 1, 1: 1, 4: 1}
    assert normalize_colors(flipped) == flipped
    m = c5_clique_model()
    no_singletons = OddModel(Pattern.clique(2), m.branch_sets[1:], m.colors)
    assert normalize_colors(no_singletons) == no_singletons
    with pytest.raises(PreconditionError):
        normalize_colors(replace(star, colors={0: 1, 1: 2, 4: 1}))
    swapped = replace(m, colors={v: 3 - c for v, c in m.colors.items()})
    assert verify_odd_model(C5, swapped) == []
    assert normalize_colors(swapped) == m


def test_clique_model_to_bipartite():
    m = c5_clique_model()
    one = clique_model_to_bipartite(m, 1)
    assert one.pattern == Pattern.plus_clique(1, 2)
    assert [b.side for b in one.branch_sets] == [LEFT, RIGHT, RIGHT]
    assert one.branch_sets[0].vertices == (0,)
    assert verify_odd_model(C5, one, require_special=True) == []
    for ell in (0, 3):
        out = clique_model_to_bipartite(m, ell)
        assert verify_odd_model(C5, out, require_special=True) == []
    with pytest.raises(ValueError):
        clique_model_to_bipartite(m, 4)


def test_transpose_and_weaken():
    star = singleton_model(Pattern.bipartite(1, 2), [0], [1, 4])
    assert verify_odd_model(C5, star, require_special=True) == []
    t = transpose_bipartite(star)
    assert t.pattern == Pattern.bipartite(2, 1)
    assert verify_odd_model(C5, t, require_special=True) == []
    assert transpose_bipartite(t) == star
    plus = clique_model_to_bipartite(c5_clique_model(), 1)
    with pytest.raises(ValueError):
        transpose_bipartite(plus)
    weak = weaken_pattern(plus)
    assert weak.pattern == Pattern.bipartite(1, 2)
    assert verify_odd_model(C5, weak, require_special=True) == []


def test_json_round_trip():
    m = c5_clique_model()
    data = json.loads(json.dumps(m.to_json()))
    assert set(data) == {"pattern", "branch_sets", "colors"}
    assert data["pattern"] == {"kind": "clique", "size": 3}
    assert OddModel.from_json(data, n=5) == m
    plus = clique_model_to_bipartite(m, 1)
    assert OddModel.from_json(json.loads(json.dumps(plus.to_json()))) == plus


@pytest.mark.parametrize(
    "patch",
    [
        lambda d: d.pop("colors"),
        lambda d: d["branch_sets"][0].__setitem__("vertices", [9]),
        lambda d: d["colors"].__setitem__("0", 3),
        lambda d: d["branch_sets"][0].__setitem__("side", "middle"),
        lambda d: d.__setitem__("pattern", {"kind": "wheel"}),
    ],
)
def test_json_schema_errors(patch):
    data = c5_clique_model().to_json()
    patch(data)
    with pytest.raises(CertificateSchemaError):
        OddModel.from_json(data, n=5)


def verified_models():
    def build(n, seed, ell_seed):
        g = random_alpha2_graph(n, seed)
        chi, _ = chromatic_number(g)
        if chi < 2:
            return None
        ell = 1 + ell_seed % (chi - 1)
        return g, special_bipartite_model(g, ell)

    return st.builds(build, st.integers(2, 12), st.integers(0, 10**6), st.integers(0, 100)).filter(
        lambda x: x is not None
    )


@settings(max_examples=150, deadline=None)
@given(verified_models(), st.sampled_from(MUTATIONS), st.integers(0, 10**6))
def test_mutations_never_fool_the_verifier(pair, kind, seed):
    g, model = pair
    assert verify_odd_model(g, model, require_special=True) == []
    bad = mutate(g, model, random.Random(seed), kind)
    if bad is None:
        return
    found = verify_odd_model(g, bad, require_special=True)
    valid = naive_is_odd_model(g, bad, special=True)
    assert valid == (not found)
    if not valid:
        assert kinds(found) & EXPECTED_KINDS[kind]


def test_global_swap_preserves_validity():
    for seed in range(30):
        g = random_alpha2_graph(9, seed)
        m = special_bipartite_model(g, 1)
        swapped = replace(m, colors={v: 3 - c for v, c in m.colors.items()})
        assert verify_odd_model(g, swapped, require_special=True) == []
        assert verify_odd_model(g, normalize_colors(swapped), require_special=True) == []
