import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import alpha_by_subsets, odd_girth_by_subsets, odd_girth_by_walks, random_graph
from thetalab.graphs import (
    CycleWitness,
    Graph,
    GraphError,
    build_graph,
    chromatic_number_small,
    clique_number,
    complement,
    disjoint_union,
    edge_intersection,
    edge_union,
    graph_from_name,
    independence_number,
    is_bipartite,
    odd_girth,
    read_graph_text,
    strong_product,
    write_graph_text,
)


def edge_set(g: Graph) -> set[tuple[int, int]]:
    return set(g.edges())


class TestConstruction:
    def test_triangle(self):
        g = build_graph(3, [(0, 1), (1, 2), (2, 0)])
        assert g.num_edges == 3
        assert g.has_edge(0, 2)

    def test_empty(self):
        g = build_graph(4, [])
        assert g.num_edges == 0

    def test_five_cycle(self):
        g = build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
        assert g == graph_from_name("cycle:5")

    def test_duplicate_edges_collapse(self):
        g = build_graph(3, [(0, 1), (1, 0), (0, 1)])
        assert g.num_edges == 1

    def test_rejects_out_of_range(self):
        with pytest.raises(GraphError, match="edge #1"):
            build_graph(3, [(0, 1), (0, 3)])

    def test_rejects_self_loop(self):
        with pytest.raises(GraphError, match="edge #0.*self-loop"):
            build_graph(3, [(2, 2)])

    def test_asymmetric_adjacency_rejected(self):
        with pytest.raises(GraphError, match="asymmetric"):
            Graph(2, [0b10, 0b00])


class TestComplementAndBoolean:
    def test_complement_complete(self):
        assert complement(graph_from_name("complete:5")).num_edges == 0

    def test_complement_c5_is_pentagram(self):
        got = edge_set(complement(graph_from_name("cycle:5")))
        assert got == {(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)}

    def test_union_c5_with_complement_is_complete(self):
        c5 = graph_from_name("cycle:5")
        assert edge_union(c5, complement(c5)) == graph_from_name("complete:5")

    def test_union_identity_and_idempotence(self):
        g = random_graph(random.Random(1), 8, 0.5)
        empty = graph_from_name("empty:8")
        assert edge_union(g, empty) == g
        assert edge_union(g, g) == g

    def test_intersection_identity(self):
        g = random_graph(random.Random(2), 8, 0.5)
        assert edge_intersection(g, graph_from_name("complete:8")) == g

    def test_intersection_disjoint(self):
        c5 = graph_from_name("cycle:5")
        assert edge_intersection(c5, complement(c5)).num_edges == 0

    def test_mismatched_orders_rejected(self):
        with pytest.raises(GraphError, match="vertex counts differ"):
            edge_union(graph_from_name("empty:3"), graph_from_name("empty:4"))

    @given(st.integers(0, 2**28 - 1), st.integers(0, 2**28 - 1))
    @settings(max_examples=60, deadline=None)
    def test_de_morgan(self, seed1, seed2):
        rng1, rng2 = random.Random(seed1), random.Random(seed2)
        g1 = random_graph(rng1, 8, rng1.random())
        g2 = random_graph(rng2, 8, rng2.random())
        lhs = complement(edge_intersection(g1, g2))
        rhs = edge_union(complement(g1), complement(g2))
        assert lhs == rhs

    @given(st.integers(0, 2**28 - 1))
    @settings(max_examples=60, deadline=None)
    def test_complement_involution(self, seed):
        g = random_graph(random.Random(seed), 8, 0.5)
        assert complement(complement(g)) == g


class TestDisjointUnionAndProduct:
    def test_two_triangles(self):
        g = disjoint_union([graph_from_name("complete:3")] * 2)
        assert g.n == 6 and g.num_edges == 6
        assert not g.has_edge(0, 3)

    def test_odd_girth_of_union(self):
        g = disjoint_union([graph_from_name("cycle:5"), graph_from_name("cycle:7")])
        girth, _ = odd_girth(g)
        assert girth.value == 5

    def test_singleton_union(self):
        g = graph_from_name("petersen")
        assert disjoint_union([g]) == g

    def test_empty_list_rejected(self):
        with pytest.raises(GraphError):
            disjoint_union([])

    def test_k2_strong_k2(self):
        got = strong_product(graph_from_name("complete:2"), graph_from_name("complete:2"))
        assert got == graph_from_name("complete:4")

    def test_unit_element(self):
        g = graph_from_name("petersen")
        assert strong_product(g, graph_from_name("empty:1")) == g

    def test_indexing_contract(self):
        g1 = build_graph(2, [(0, 1)])
        g2 = graph_from_name("empty:3")
        prod = strong_product(g1, g2)
        # (u, v) -> u * n2 + v; (0, 1) and (1, 1) differ in the first factor edge
        assert prod.has_edge(0 * 3 + 1, 1 * 3 + 1)
        assert not prod.has_edge(0 * 3 + 0, 0 * 3 + 1)

    def test_size_cap(self):
        big = graph_from_name("empty:70")
        with pytest.raises(GraphError, match="cap"):
            strong_product(big, big)

    def test_alpha_product_superadditive(self):
        rng = random.Random(7)
        for _ in range(10):
            g1 = random_graph(rng, rng.randint(3, 6), rng.random())
            g2 = random_graph(rng, rng.randint(3, 6), rng.random())
            a1 = independence_number(g1).value
            a2 = independence_number(g2).value
            prod = independence_number(strong_product(g1, g2)).value
            assert prod >= a1 * a2


class TestOddGirth:
    @pytest.mark.parametrize(
        "name,expected",
        [("cycle:5", 5), ("cycle:6", None), ("petersen", 5), ("complete:4", 3)],
    )
    def test_known_values(self, name, expected):
        girth, witness = odd_girth(graph_from_name(name))
        assert girth.value == expected
        if expected is None:
            assert witness is None
        else:
            witness.validate(graph_from_name(name))
            assert len(witness) == expected

    def test_witness_deterministic(self):
        g = graph_from_name("petersen")
        w1 = odd_girth(g)[1]
        w2 = odd_girth(g)[1]
        assert w1 == w2

    def test_against_subset_oracle(self):
        rng = random.Random(123)
        for _ in range(1000):
            n = rng.randint(3, 9)
            g = random_graph(rng, n, rng.uniform(0.1, 0.9))
            expected = odd_girth_by_subsets(g)
            got, witness = odd_girth(g)
            assert got.value == expected, write_graph_text(g)
            if witness is not None:
                witness.validate(g)

    def test_against_walk_oracle(self):
        rng = random.Random(321)
        for _ in range(200):
            n = rng.randint(3, 12)
            g = random_graph(rng, n, rng.uniform(0.1, 0.9))
            assert odd_girth(g, witness=False)[0].value == odd_girth_by_walks(g)

    def test_bipartite_consistency(self):
        rng = random.Random(11)
        for _ in range(200):
            g = random_graph(rng, rng.randint(2, 12), rng.uniform(0.1, 0.9))
            assert odd_girth(g, witness=False)[0].is_infinite == is_bipartite(g)

    def test_greater_than_predicate(self):
        girth, _ = odd_girth(graph_from_name("cycle:7"))
        assert girth.greater_than(5) and not girth.greater_than(7)
        infinite, _ = odd_girth(graph_from_name("cycle:6"))
        assert infinite.greater_than(10**9)


class TestWitnessValidation:
    def test_rejects_even_length(self):
        with pytest.raises(GraphError):
            CycleWitness((0, 1, 2, 3)).validate(graph_from_name("complete:4"))

    def test_rejects_non_edges(self):
        with pytest.raises(GraphError, match="not an edge"):
            CycleWitness((0, 1, 3)).validate(graph_from_name("cycle:5"))


class TestExactSearches:
    def test_alpha_known(self):
        assert independence_number(graph_from_name("cycle:5")).value == 2
        assert independence_number(graph_from_name("empty:9")).value == 9
        assert independence_number(graph_from_name("petersen")).value == 4

    def test_alpha_matches_subset_oracle(self):
        rng = random.Random(5)
        for _ in range(60):
            g = random_graph(rng, rng.randint(2, 10), rng.uniform(0.1, 0.9))
            res = independence_number(g)
            assert res.optimal
            assert res.value == alpha_by_subsets(g)

    def test_clique_known(self):
        assert clique_number(graph_from_name("complete:6")).value == 6
        assert clique_number(graph_from_name("cycle:5")).value == 2
        assert clique_number(graph_from_name("petersen")).value == 2

    def test_budget_exceeded_flag(self):
        g = random_graph(random.Random(9), 20, 0.5)
        res = independence_number(g, budget=3)
        assert not res.optimal
        assert res.value >= 1
        full = independence_number(g)
        assert full.optimal and full.value >= res.value

    def test_chromatic_known(self):
        assert chromatic_number_small(graph_from_name("cycle:5")) == 3
        assert chromatic_number_small(graph_from_name("complete:5")) == 5
        assert chromatic_number_small(graph_from_name("petersen")) == 3
        assert chromatic_number_small(graph_from_name("empty:4")) == 1

    def test_chromatic_size_limit(self):
        with pytest.raises(GraphError, match="n <= 12"):
            chromatic_number_small(graph_from_name("empty:13"))

    def test_clique_le_chromatic(self):
        rng = random.Random(17)
        for _ in range(40):
            g = random_graph(rng, rng.randint(2, 10), rng.uniform(0.1, 0.9))
            assert clique_number(g).value <= chromatic_number_small(g)


class TestTextFormatAndGenerators:
    def test_round_trip(self):
        for name in ["petersen", "cycle:7", "complete:5", "empty:4", "hypercube:3"]:
            g = graph_from_name(name)
            assert read_graph_text(write_graph_text(g)) == g

    def test_header_shape(self):
        text = write_graph_text(graph_from_name("cycle:3"))
        lines = text.strip().splitlines()
        assert lines[0] == "p 3 3"
        assert all(line.startswith("e ") for line in lines[1:])

    def test_reject_edge_before_header(self):
        with pytest.raises(GraphError, match="before header"):
            read_graph_text("e 0 1\np 2 1\n")

    def test_reject_wrong_count(self):
        with pytest.raises(GraphError, match="declares"):
            read_graph_text("p 3 2\ne 0 1\n")

    def test_hypercube(self):
        g = graph_from_name("hypercube:3")
        assert g.n == 8 and g.num_edges == 12
        assert is_bipartite(g)

    def test_unknown_generator(self):
        with pytest.raises(GraphError, match="unknown generator"):
            graph_from_name("moebius:5")
