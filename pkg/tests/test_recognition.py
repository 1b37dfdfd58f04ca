import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deltaraag.graphs import (
    Graph,
    GraphError,
    all_graphs,
    canonical_form,
    complete,
    cycle,
    disjoint_union,
    edgeless,
    join,
    path,
    pattern_free,
    relabel,
)
from deltaraag.recognition import enumerate_GrP, is_in_GrP, reconstruct, tree_to_json

from strategies import graphs


def test_c4_reason_and_witness():
    r = is_in_GrP(cycle(4))
    assert not r.accepted
    assert r.reason == "connected, no dominating vertex"
    assert r.witness == (1, 2, 3, 4)
    assert r.to_json()["in_GrP"] is False


def test_tree_for_example_graph():
    g = Graph.from_edges(5, [(1, 2), (3, 4)])
    r = is_in_GrP(g)
    assert r.accepted
    assert tree_to_json(r.tree) == {
        "node": "coproduct",
        "children": [
            {"node": "cone", "u": 2, "child": {"node": "base"}},
            {"node": "cone", "u": 2, "child": {"node": "base"}},
        ],
    }


def test_isolated_deficit():
    r = is_in_GrP(disjoint_union(path(2), path(2)))
    assert not r.accepted
    assert "isolated" in r.reason


@settings(max_examples=200, deadline=None)
@given(graphs(7))
def test_tree_reconstructs_input(g):
    r = is_in_GrP(g)
    if r.accepted:
        assert canonical_form(reconstruct(r.tree))[0] == canonical_form(g)[0]


@settings(max_examples=200, deadline=None)
@given(graphs(7), st.randoms(use_true_random=False))
def test_isomorphism_invariant(g, rng):
    perm = list(range(g.n))
    rng.shuffle(perm)
    assert is_in_GrP(g).accepted == is_in_GrP(relabel(g, perm)).accepted


@settings(max_examples=200, deadline=None)
@given(graphs(7))
def test_members_avoid_c4_and_p4(g):
    if is_in_GrP(g).accepted:
        assert pattern_free(g, "C4")[0]
        assert pattern_free(g, "P4")[0]


def test_closure_rules_preserve_membership():
    rng = random.Random(11)
    members = sorted(enumerate_GrP(4), key=lambda h: (h.n, sorted(h.edges)))
    for _ in range(100):
        a, b = rng.choice(members), rng.choice(members)
        assert is_in_GrP(join(complete(rng.randint(1, 2)), a)).accepted
        assert is_in_GrP(disjoint_union(a, b, edgeless(1))).accepted


def test_enumeration_counts():
    members = enumerate_GrP(6)
    counts = {}
    for g in members:
        counts[g.n] = counts.get(g.n, 0) + 1
    assert counts == {0: 1, 1: 1, 2: 2, 3: 4, 4: 8, 5: 17, 6: 36}


def test_enumeration_limit():
    with pytest.raises(GraphError):
        enumerate_GrP(9)


def test_oracle_on_six_vertices():
    keys = {canonical_form(g)[0] for g in enumerate_GrP(6)}
    for g in all_graphs(6):
        assert is_in_GrP(g).accepted == (canonical_form(g)[0] in keys)
