import json
from collections import Counter

import pytest
from hypothesis import given

from spectral_strata import (
    CurveShape,
    Divisor,
    StrataError,
    StratumLabel,
    Subgraph,
    adjacency_multiplicity,
    build_graph,
    cr_strata,
    enumerate_indegree,
    enumerate_strata,
    hasse_diagram,
    hasse_to_dot,
    irreducible_components,
    local_model,
    path_count_multiplicity,
    strata_csv,
    stratum_dimension,
    stratum_report_json_obj,
    stratum_rows,
)

from helpers import divisor, make_e2, make_k3, make_k4, make_loop, multigraphs


def shape_lines(n):
    vertices = [f"v{i + 1}" for i in range(n)]
    pairs = [(vertices[i], vertices[j]) for i in range(n) for j in range(i + 1, n)]
    return CurveShape(build_graph(vertices, pairs), 1, n)


def label(shape, edges, values):
    g = shape.dual_graph
    return StratumLabel(Subgraph(g, frozenset(edges)), Divisor(g.vertices, values))


class TestEnumerateStrata:
    def test_two_lines_three_strata(self):
        strata = enumerate_strata(shape_lines(2))
        assert [(s.subgraph.edge_list(), s.divisor.values) for s in strata] == [
            ((), (0, 0)),
            ((0,), (0, 1)),
            ((0,), (1, 0)),
        ]

    def test_three_lines_twenty_six(self):
        assert len(enumerate_strata(shape_lines(3))) == 26

    def test_single_vertex_shape(self):
        shape = CurveShape(build_graph(["v1"], []), 1, 1)
        strata = enumerate_strata(shape)
        assert len(strata) == 1
        assert strata[0].subgraph.n_edges == 0

    def test_invalid_shape_parameters(self):
        with pytest.raises(StrataError):
            CurveShape(make_e2(), 0, 2)


class TestStratumDimension:
    def test_three_lines_profile(self):
        shape = shape_lines(3)
        profile = Counter(
            stratum_dimension(shape, s) for s in enumerate_strata(shape)
        )
        assert profile == {3: 7, 2: 12, 1: 6, 0: 1}

    def test_two_lines(self):
        shape = shape_lines(2)
        assert stratum_dimension(shape, label(shape, (0,), (0, 1))) == 1
        assert stratum_dimension(shape, label(shape, (), (0, 0))) == 0

    def test_negative_dimension_is_error(self):
        # one matrix-polynomial parameter but two nodes: invalid shape
        g = build_graph(["a", "b"], [("a", "b"), ("a", "b")])
        shape = CurveShape(g, 1, 2)
        with pytest.raises(StrataError):
            stratum_dimension(shape, StratumLabel(Subgraph(g, frozenset()), Divisor(g.vertices, (0, 0))))

    def test_foreign_stratum_rejected(self):
        shape2, shape3 = shape_lines(2), shape_lines(3)
        with pytest.raises(StrataError):
            stratum_dimension(shape3, label(shape2, (0,), (0, 1)))


class TestAdjacency:
    def test_interior_double_point(self):
        shape = shape_lines(3)
        s1 = label(shape, (0, 1, 2), (1, 1, 1))
        s2 = label(shape, (), (0, 0, 0))
        assert adjacency_multiplicity(shape, s1, s2) == 2

    def test_vertex_strata_are_smooth_at_origin(self):
        shape = shape_lines(3)
        s2 = label(shape, (), (0, 0, 0))
        for values in [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]:
            s1 = label(shape, (0, 1, 2), values)
            assert adjacency_multiplicity(shape, s1, s2) == 1

    def test_self_adjacency(self):
        shape = shape_lines(3)
        s = label(shape, (0, 1), (0, 1, 1))
        assert adjacency_multiplicity(shape, s, s) == 1

    def test_non_nested_subgraphs_give_zero(self):
        shape = shape_lines(3)
        s1 = label(shape, (0,), (0, 1, 0))
        s2 = label(shape, (1,), (0, 0, 1))
        assert adjacency_multiplicity(shape, s1, s2) == 0

    def test_domination_is_not_sufficient(self):
        # Nested subgraphs with pointwise-dominated divisors may still be
        # non-adjacent: the K4 counterexample.
        g = make_k4()
        shape = CurveShape(g, 2, 4)
        s1 = StratumLabel(Subgraph(g, frozenset(range(6))), Divisor(g.vertices, (2, 2, 1, 1)))
        s2 = StratumLabel(Subgraph(g, frozenset({0, 1, 3})), Divisor(g.vertices, (0, 2, 1, 0)))
        assert s2.divisor.pointwise_le(s1.divisor)
        assert s1.subgraph.contains(s2.subgraph)
        assert adjacency_multiplicity(shape, s1, s2) == 0


class TestLocalModel:
    def test_two_lines_node(self):
        shape = shape_lines(2)
        model = local_model(shape, label(shape, (), (0, 0)))
        assert (model.p, model.q) == (1, 0)
        census = {
            (s.subgraph.edge_list(), s.divisor.values): m
            for s, m in model.census.items()
        }
        assert census == {
            ((), (0, 0)): 1,
            ((0,), (0, 1)): 1,
            ((0,), (1, 0)): 1,
        }

    def test_three_lines_origin(self):
        shape = shape_lines(3)
        model = local_model(shape, label(shape, (), (0, 0, 0)))
        assert (model.p, model.q) == (3, 0)
        assert sum(model.census.values()) == 27
        top = {
            s.divisor.values: m
            for s, m in model.census.items()
            if s.subgraph.n_edges == 3
        }
        assert sum(top.values()) == 8
        assert sorted(top.values()) == [1, 1, 1, 1, 1, 1, 2]
        assert top[(1, 1, 1)] == 2

    def test_top_stratum_trivial_census(self):
        shape = shape_lines(3)
        s = label(shape, (0, 1, 2), (0, 1, 2))
        model = local_model(shape, s)
        assert (model.p, model.q) == (0, 3)
        assert model.census == {s: 1}

    def test_census_total_is_power_of_three(self):
        shape = shape_lines(3)
        for s in enumerate_strata(shape):
            model = local_model(shape, s)
            assert sum(model.census.values()) == 3 ** model.p
            assert model.census[s] == 1


class TestIrreducibleComponents:
    def test_three_lines_seven(self):
        assert len(irreducible_components(shape_lines(3))) == 7

    def test_four_lines_thirty_eight(self):
        assert len(irreducible_components(shape_lines(4))) == 38

    def test_two_lines_two(self):
        assert len(irreducible_components(shape_lines(2))) == 2


class TestHasseDiagram:
    def test_single_edge_poset(self):
        g = make_e2()
        poset = hasse_diagram(g)
        keys = [(s.subgraph.bitmask, s.divisor.values) for s in poset.elements]
        assert keys == [(0, (0, 0)), (1, (0, 1)), (1, (1, 0))]
        assert poset.cover_relations == ((0, 1), (0, 2))

    def test_triangle_element_count(self):
        # Brute-force enumeration of pairs (subgraph, indegree divisor).
        g = make_k3()
        poset = hasse_diagram(g)
        expected = sum(
            len(enumerate_indegree(Subgraph(g, frozenset(edges)).as_multigraph()))
            for edges in [
                set(),
                {0}, {1}, {2},
                {0, 1}, {0, 2}, {1, 2},
                {0, 1, 2},
            ]
        )
        assert len(poset.elements) == expected == 26

    def test_edgeless_graph(self):
        g = build_graph(["a", "b"], [])
        poset = hasse_diagram(g)
        assert len(poset.elements) == 1
        assert poset.cover_relations == ()

    def test_loops_rejected(self):
        with pytest.raises(StrataError):
            hasse_diagram(make_loop())

    def test_covers_differ_by_one_edge_and_raise_dimension(self):
        poset = hasse_diagram(make_k3())
        for a, b in poset.cover_relations:
            lower, upper = poset.elements[a], poset.elements[b]
            assert upper.subgraph.n_edges == lower.subgraph.n_edges + 1
            assert lower.subgraph.edge_set < upper.subgraph.edge_set
            diff = upper.divisor - lower.divisor
            assert diff.degree == 1 and all(x >= 0 for x in diff.values)


class TestPathCountMultiplicity:
    def test_triangle_interior_from_origin(self):
        g = make_k3()
        poset = hasse_diagram(g)
        s2 = StratumLabel(Subgraph(g, frozenset()), Divisor(g.vertices, (0, 0, 0)))
        s1 = StratumLabel(Subgraph(g, frozenset({0, 1, 2})), Divisor(g.vertices, (1, 1, 1)))
        assert path_count_multiplicity(poset, s1, s2) == 2

    def test_single_edge(self):
        g = make_e2()
        poset = hasse_diagram(g)
        s2 = StratumLabel(Subgraph(g, frozenset()), Divisor(g.vertices, (0, 0)))
        s1 = StratumLabel(Subgraph(g, frozenset({0})), Divisor(g.vertices, (0, 1)))
        assert path_count_multiplicity(poset, s1, s2) == 1

    def test_self_path(self):
        g = make_e2()
        poset = hasse_diagram(g)
        s = StratumLabel(Subgraph(g, frozenset()), Divisor(g.vertices, (0, 0)))
        assert path_count_multiplicity(poset, s, s) == 1

    def test_unrelated_pair_gives_zero(self):
        g = make_k3()
        poset = hasse_diagram(g)
        s1 = StratumLabel(Subgraph(g, frozenset({0})), Divisor(g.vertices, (0, 1, 0)))
        s2 = StratumLabel(Subgraph(g, frozenset({1})), Divisor(g.vertices, (0, 0, 1)))
        assert path_count_multiplicity(poset, s1, s2) == 0

    @given(multigraphs(max_edges=4, loops=False))
    def test_matches_relative_multiplicity(self, g):
        from spectral_strata import relative_multiplicity

        poset = hasse_diagram(g)
        for s1 in poset.elements:
            for s2 in poset.elements:
                if not s1.subgraph.contains(s2.subgraph):
                    continue
                diff = s1.divisor - s2.divisor
                if any(x < 0 for x in diff.values):
                    expected = 0
                else:
                    expected = relative_multiplicity(
                        s1.subgraph, s1.divisor, s2.subgraph, s2.divisor
                    )
                assert path_count_multiplicity(poset, s1, s2) == expected


class TestCrStrata:
    def test_three_lines(self):
        shape = shape_lines(3)
        got = [(s.subgraph.edge_list(), s.divisor.values) for s in cr_strata(shape)]
        assert got == [((), (0, 0, 0)), ((0, 1, 2), (1, 1, 1))]

    def test_two_lines(self):
        shape = shape_lines(2)
        got = [(s.subgraph.edge_list(), s.divisor.values) for s in cr_strata(shape)]
        assert got == [((), (0, 0))]

    def test_edgeless_shape(self):
        shape = CurveShape(build_graph(["v1"], []), 1, 1)
        assert len(cr_strata(shape)) == 1


class TestReports:
    def test_rows_match_table_contract(self):
        shape = shape_lines(2)
        rows = stratum_rows(shape)
        assert [r["id"] for r in rows] == [0, 1, 2]
        assert rows[1]["divisor"] == {"v1": 0, "v2": 1}
        assert rows[0]["class"] == "completely_reducible"

    def test_csv_header(self):
        out = strata_csv(shape_lines(2))
        header = out.splitlines()[0]
        assert header == "id,edge_bitmask,divisor,dimension,class,multiplicity"
        assert len(out.splitlines()) == 4

    def test_stratum_report(self):
        shape = shape_lines(3)
        report = stratum_report_json_obj(shape, label(shape, (0, 1, 2), (1, 1, 1)))
        assert report["dimension"] == 3
        assert report["class"] == "completely_reducible"
        origin_rows = [
            row for row in report["adjacency"] if row["subgraph_edges"] == []
        ]
        assert origin_rows and origin_rows[0]["multiplicity"] == 2
        json.dumps(report)

    def test_hasse_dot(self):
        out = hasse_to_dot(hasse_diagram(make_e2()))
        assert out.startswith("digraph hasse {")
        assert 'label="0|0,0"' in out
        assert "n0 -> n1;" in out


class TestPosetStructure:
    @given(multigraphs(max_edges=4, loops=False))
    def test_census_sum_over_poset(self, g):
        shape = CurveShape(g, max(g.n_edges, 1), 2)
        for s2 in enumerate_strata(shape):
            model = local_model(shape, s2)
            assert sum(model.census.values()) == 3 ** model.p
