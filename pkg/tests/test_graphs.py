import random
from itertools import combinations, permutations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deltaraag.graphs import (
    Graph,
    GraphError,
    all_graphs,
    canonical_form,
    canonical_graph,
    clique_polynomial,
    complete,
    components,
    cycle,
    disjoint_union,
    dominating_clique,
    edgeless,
    graph_document,
    induced,
    is_connected,
    join,
    parse_graph,
    path,
    pattern_free,
    relabel,
)

from strategies import graphs


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(1, g.n + 1))
    h.add_edges_from(g.edges)
    return h


def shuffled(g, rng):
    perm = list(range(g.n))
    rng.shuffle(perm)
    return relabel(g, perm)


class TestParse:
    def test_roundtrip(self):
        g = parse_graph('{"vertices": 4, "edges": [[1,2],[2,3],[3,4],[4,1]]}')
        assert g == cycle(4)
        assert parse_graph(graph_document(g)) == g

    def test_edges_are_undirected(self):
        assert parse_graph({"vertices": 2, "edges": [[2, 1]]}) == path(2)

    @pytest.mark.parametrize(
        "doc, fragment",
        [
            ('{"vertices": 3, "edges": [[1,2],', "line 1"),
            ('{"vertices": -1, "edges": []}', "nonnegative"),
            ('{"vertices": 3, "edges": [[1,1]]}', "edges[0]"),
            ('{"vertices": 3, "edges": [[1,2],[2,5]]}', "edges[1]"),
            ('{"vertices": 3, "edges": [[1,2,3]]}', "pair"),
            ('{"edges": []}', "vertices"),
            ("[1, 2]", "object"),
            ('{"vertices": true, "edges": []}', "nonnegative"),
        ],
    )
    def test_errors_carry_position(self, doc, fragment):
        with pytest.raises(GraphError, match=fragment.replace("[", r"\[").replace("]", r"\]")):
            parse_graph(doc)


class TestCliques:
    def test_small_values(self):
        assert clique_polynomial(edgeless(0)) == [1]
        assert clique_polynomial(cycle(4)) == [1, 4, 4]
        assert clique_polynomial(complete(4)) == [1, 4, 6, 4, 1]
        assert clique_polynomial(edgeless(3)) == [1, 3]

    @settings(max_examples=200, deadline=None)
    @given(graphs())
    def test_matches_networkx(self, g):
        counts = [1] + [0] * g.n
        for c in nx.enumerate_all_cliques(to_nx(g)):
            counts[len(c)] += 1
        while len(counts) > 1 and counts[-1] == 0:
            counts.pop()
        assert clique_polynomial(g) == counts


class TestStructure:
    def test_dominating_clique(self):
        g = join(complete(2), edgeless(3))
        assert dominating_clique(g) == frozenset({1, 2})
        assert dominating_clique(cycle(4)) == frozenset()

    def test_components_counts_isolated(self):
        g = disjoint_union(path(2), path(2), edgeless(1))
        parts, m, m0 = components(g)
        assert (m, m0) == (2, 1)
        assert sorted(p.n for p, _ in parts) == [1, 2, 2]
        assert not is_connected(g)
        assert is_connected(edgeless(1))

    def test_induced_keeps_labels(self):
        h, vmap = induced(cycle(5), [1, 2, 3])
        assert h == path(3)
        assert vmap == (1, 2, 3)

    def test_join_and_union_sizes(self):
        g = join(edgeless(2), edgeless(3))
        assert len(g.edges) == 6
        assert disjoint_union(complete(3), complete(2)).n == 5

    @pytest.mark.parametrize("g, pat, free", [
        (cycle(4), "C4", False),
        (cycle(4), "P4", True),
        (path(4), "P4", False),
        (path(4), "C4", True),
        (complete(5), "C4", True),
        (cycle(5), "P4", False),
    ])
    def test_pattern_free(self, g, pat, free):
        ok, wit = pattern_free(g, pat)
        assert ok is free
        if not ok:
            h, _ = induced(g, wit)
            assert nx.is_isomorphic(to_nx(h), to_nx(cycle(4) if pat == "C4" else path(4)))

    @settings(max_examples=100, deadline=None)
    @given(graphs(6))
    def test_p4_free_is_cograph(self, g):
        # cographs: every connected induced subgraph on >= 2 vertices has a disconnected complement
        ok, _ = pattern_free(g, "P4")
        brute = all(
            not nx.is_isomorphic(to_nx(induced(g, q)[0]), nx.path_graph(4))
            for q in combinations(range(1, g.n + 1), 4)
        )
        assert ok == brute


class TestCanonical:
    @settings(max_examples=150, deadline=None)
    @given(graphs(8), st.randoms(use_true_random=False))
    def test_invariant_under_relabel(self, g, rng):
        assert canonical_form(g)[0] == canonical_form(shuffled(g, rng))[0]

    @settings(max_examples=150, deadline=None)
    @given(graphs(6), graphs(6))
    def test_separates_non_isomorphic(self, a, b):
        same = a.n == b.n and nx.is_isomorphic(to_nx(a), to_nx(b))
        assert (canonical_form(a)[0] == canonical_form(b)[0]) == same

    def test_perm_realises_canonical_graph(self):
        g = path(5)
        (n, code), perm = canonical_form(g)
        assert canonical_graph(g) == relabel(g, perm)
        assert canonical_form(canonical_graph(g))[0] == (n, code)

    def test_class_counts(self):
        counts = {}
        for g in all_graphs(7):
            counts[g.n] = counts.get(g.n, 0) + 1
        assert counts == {0: 1, 1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044}

    def test_all_graphs_are_canonical_and_distinct(self):
        seen = set()
        for g in all_graphs(6):
            key = canonical_form(g)[0]
            assert key not in seen
            seen.add(key)
            assert canonical_graph(g) == g

    def test_brute_force_agrees_on_small(self):
        rng = random.Random(5)
        g = Graph.from_edges(5, [(1, 2), (2, 3), (3, 4), (1, 5)])
        keys = {canonical_form(relabel(g, list(p)))[0] for p in permutations(range(5))}
        assert len(keys) == 1
        assert canonical_form(shuffled(g, rng))[0] in keys
