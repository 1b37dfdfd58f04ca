import random

import pytest
from hypothesis import given, settings

from deltaraag.graphs import Graph, all_graphs, clique_polynomial, complete, cycle, edgeless, path
from deltaraag.quadratic import (
    PresentationError,
    QuadraticPresentation,
    build_E_gamma,
    build_Ez,
    critical_reductions,
    default_order,
    free_presentation,
    h2_basis,
    hilbert_series,
    hilbert_series_dense,
    parse_order,
    parse_presentation,
    pbw_check,
    presentation_document,
    quadratic_dual,
)
from deltaraag.recognition import is_in_GrP
from deltaraag.series import gocha_series
from deltaraag.words import parse_z, trivial_z

from strategies import graphs

C4 = cycle(4)
C4_ORDER = [0, 1, 3, 2, 4]


def c4_ez():
    return build_Ez(C4, trivial_z(4))


def rel_set(p, sep="."):
    return {p.format_relation(r, sep) for r in p.relations}


class TestPresentation:
    def test_c4_relations(self):
        assert rel_set(c4_ez(), "") == {
            "X0X0",
            "X1X2 + X2X1",
            "X1X4 + X4X1",
            "X2X3 + X3X2",
            "X3X4 + X4X3",
            "X0X1 + X1X0 + X1X1",
            "X0X2 + X2X0 + X2X2",
            "X0X3 + X3X0 + X3X3",
            "X0X4 + X4X0 + X4X4",
        }

    def test_twisted_term(self):
        g = Graph.from_edges(5, [(1, 2), (3, 4)])
        p = build_Ez(g, parse_z({"z": ["1", "1", "x5", "x5", "1"]}, 5))
        assert "X0X3 + X3X0 + X3X3 + X3X5 + X5X3" in rel_set(p, "")

    def test_invalid_twist_rejected(self):
        g = Graph.from_edges(3, [(1, 2)])
        with pytest.raises(PresentationError):
            build_Ez(g, parse_z({"z": ["x3", "1", "1"]}, 3))

    def test_dependent_relations_dropped(self):
        p = QuadraticPresentation(("A", "B"), (frozenset({(0, 1)}), frozenset({(0, 1)}), frozenset({(0, 1), (1, 0)})))
        assert len(p.relations) == 2

    def test_document_roundtrip(self):
        p = c4_ez()
        q = parse_presentation(presentation_document(p))
        assert q.same_span(p)

    def test_parse_errors(self):
        with pytest.raises(PresentationError, match=r"relations\[0\]\[1\]"):
            parse_presentation({"generators": ["A"], "relations": [[["A", "A"], ["A", "B"]]]})

    def test_order_parsing(self):
        p = c4_ez()
        assert parse_order("x0,x1,x3,x2,x4", p) == C4_ORDER
        assert default_order(p, C4) == C4_ORDER
        with pytest.raises(PresentationError):
            parse_order("x0,x1", p)


class TestHilbert:
    def test_c4(self):
        assert hilbert_series(c4_ez(), 8) == [1, 5, 16, 44, 112, 272, 640, 1472, 3328]

    @settings(max_examples=40, deadline=None)
    @given(graphs(5))
    def test_incremental_matches_dense(self, g):
        p = build_Ez(g, trivial_z(g.n))
        assert hilbert_series(p, 4) == hilbert_series_dense(p, 4)

    def test_free_algebra(self):
        assert hilbert_series(free_presentation(["A", "B", "C"]), 5) == [3**k for k in range(6)]

    def test_partial_stops_at_budget(self):
        p = build_Ez(edgeless(5), trivial_z(5))
        out = hilbert_series(p, 8, column_budget=500, partial=True)
        assert 2 <= len(out) < 9
        assert out == gocha_series(clique_polynomial(edgeless(5)), len(out) - 1).tolist()
        with pytest.raises(MemoryError):
            hilbert_series(p, 8, column_budget=500)

    def test_twisted_matches_gocha(self):
        g = Graph.from_edges(5, [(1, 2), (3, 4)])
        p = build_Ez(g, parse_z({"z": ["1", "1", "x5", "x5", "1"]}, 5))
        assert hilbert_series(p, 6) == gocha_series(clique_polynomial(g), 6).tolist()


class TestPBW:
    def test_c4_confluent(self):
        res = pbw_check(c4_ez(), C4_ORDER)
        assert res.confluent
        out = res.to_json(c4_ez().generators)
        assert out["leading_monomials"] == [
            "X0X0", "X0X1", "X0X2", "X0X3", "X0X4", "X1X2", "X1X4", "X3X2", "X3X4",
        ]
        assert out["critical_monomials"] == 9

    def test_c4_double_reduction(self):
        rs = pbw_check(c4_ez(), C4_ORDER).system
        left, right = critical_reductions(rs, (0, 1, 2))
        want = frozenset({(2, 1, 0), (2, 2, 1), (2, 1, 1)})
        assert left == right == want

    def test_non_confluent_fixture(self):
        p = QuadraticPresentation(("X", "Y"), (frozenset({(0, 0), (0, 1)}),))
        res = pbw_check(p)
        assert not res.confluent
        ce = res.to_json(p.generators)["counterexample"]
        assert ce == {"monomial": "XXX", "left": ["XYX"], "right": ["XYY"]}

    def test_normal_words_count_hilbert(self):
        rs = pbw_check(c4_ez(), C4_ORDER).system
        assert rs.count_normal_words(6) == hilbert_series(c4_ez(), 6)

    @pytest.mark.parametrize("g", [complete(3), edgeless(3), path(3), Graph.from_edges(5, [(1, 2), (3, 4)])])
    def test_accepted_graphs_confluent_natural_order(self, g):
        p = build_Ez(g, trivial_z(g.n))
        res = pbw_check(p, default_order(p, g))
        if res.confluent:
            assert res.system.count_normal_words(5) == hilbert_series(p, 5)


class TestDual:
    def test_c4_dual_relations(self):
        D = quadratic_dual(c4_ez())
        names = ["chi0", "psi1", "psi2", "psi3", "psi4"]
        assert list(D.generators) == names
        # written relation set: chi0 psi_i + psi_i chi0, psi_i psi_j + psi_j psi_i,
        # chi0 psi_i + psi_i^2, psi1 psi3, psi2 psi4
        want = []
        for i in range(1, 5):
            want.append({(0, i), (i, 0)})
            want.append({(0, i), (i, i)})
        for i in range(1, 5):
            for j in range(i + 1, 5):
                want.append({(i, j), (j, i)})
        want += [{(1, 3)}, {(2, 4)}]
        ref = QuadraticPresentation(tuple(names), tuple(frozenset(w) for w in want))
        assert D.same_span(ref)

    def test_c4_h2(self):
        D = quadratic_dual(c4_ez())
        H = h2_basis(D, C4_ORDER)
        assert H.dim == 9
        assert H.names(".") == [
            "chi0.chi0", "chi0.psi1", "chi0.psi3", "chi0.psi2", "chi0.psi4",
            "psi1.psi2", "psi1.psi4", "psi3.psi2", "psi3.psi4",
        ]

    def test_raag_c4_h2(self):
        H = h2_basis(quadratic_dual(build_E_gamma(C4)), [0, 2, 1, 3])
        assert H.dim == 4
        assert H.names(".") == ["psi1.psi2", "psi1.psi4", "psi3.psi2", "psi3.psi4"]

    def test_double_dual(self):
        p = c4_ez()
        dd = quadratic_dual(quadratic_dual(p))
        assert dd.same_span(p)
        assert dd.generators == p.generators

    def test_h2_coords_are_a_projection(self):
        D = quadratic_dual(c4_ez())
        H = h2_basis(D, C4_ORDER)
        for r in D.relations:
            assert H.coords(r) == 0
        for k, m in enumerate(H.monomials):
            assert H.coords([m]) == 1 << k

    def test_random_accepted_graphs(self):
        rng = random.Random(2024)
        accepted = [g for g in all_graphs(6) if g.n and is_in_GrP(g).accepted]
        for g in rng.sample(accepted, 20):
            p = build_Ez(g, trivial_z(g.n))
            assert h2_basis(quadratic_dual(p)).dim == g.n + len(g.edges) + 1
