import json
import random

import numpy as np
import pytest

from thetalab.colourings import (
    EdgeColouring,
    binary_colouring,
    capacity_witness,
    colour_class,
    local_search_colouring,
    pair_rank,
    shortest_mono_odd_cycle,
    theta_pipeline,
)
from thetalab.graphs import (
    GraphError,
    complement,
    edge_intersection,
    edge_union,
    graph_from_name,
    is_bipartite,
    odd_girth,
)


def two_pentagons() -> EdgeColouring:
    """K_5 split into the 5-cycle (colour 0) and its pentagram (colour 1)."""
    flat = []
    for v in range(1, 5):
        for u in range(v):
            flat.append(0 if (v - u) % 5 in (1, 4) else 1)
    return EdgeColouring(5, 2, flat)


def random_colouring(rng: random.Random, n: int, k: int) -> EdgeColouring:
    return EdgeColouring(n, k, [rng.randrange(k) for _ in range(n * (n - 1) // 2)])


class TestEdgeColouring:
    def test_pair_rank_layout(self):
        assert [pair_rank(u, v) for v in range(1, 4) for u in range(v)] == list(range(6))
        assert pair_rank(3, 1) == pair_rank(1, 3)

    def test_needs_total_assignment(self):
        with pytest.raises(GraphError, match="expected 10"):
            EdgeColouring(5, 2, [0, 1])

    def test_colour_ids_bounded(self):
        with pytest.raises(GraphError, match="not below"):
            EdgeColouring(3, 2, [0, 1, 2])

    def test_json_round_trip(self):
        col = two_pentagons()
        back = EdgeColouring.from_json(col.to_json())
        assert back == col

    def test_json_schema(self):
        data = json.loads(two_pentagons().to_json())
        assert set(data) == {"n", "k", "edges"}
        assert len(data["edges"]) == 10
        assert all(len(item) == 3 for item in data["edges"])

    def test_json_missing_pair_rejected(self):
        data = json.loads(two_pentagons().to_json())
        data["edges"] = data["edges"][:-1]
        with pytest.raises(GraphError, match="cover"):
            EdgeColouring.from_json(json.dumps(data))


class TestColourClasses:
    def test_single_colour_gives_complete(self):
        col = EdgeColouring(5, 1, [0] * 10)
        assert colour_class(col, 0) == graph_from_name("complete:5")

    def test_two_pentagons_classes(self):
        col = two_pentagons()
        assert colour_class(col, 0) == graph_from_name("cycle:5")
        assert colour_class(col, 1) == complement(graph_from_name("cycle:5"))

    def test_partition_property(self):
        rng = random.Random(4)
        for _ in range(50):
            n = rng.randint(2, 10)
            k = rng.randint(1, 4)
            col = random_colouring(rng, n, k)
            classes = [colour_class(col, c) for c in range(k)]
            union = classes[0]
            total = 0
            for i, g in enumerate(classes):
                total += g.num_edges
                union = edge_union(union, g)
                for h in classes[i + 1 :]:
                    assert edge_intersection(g, h).num_edges == 0
            assert union == graph_from_name(f"complete:{n}")
            assert total == n * (n - 1) // 2

    def test_bad_colour_id(self):
        with pytest.raises(GraphError):
            colour_class(two_pentagons(), 2)


class TestBinaryColouring:
    def test_k1(self):
        col = binary_colouring(1)
        assert col.n == 2 and col.colour_of(0, 1) == 0

    def test_k2_classes(self):
        col = binary_colouring(2)
        c0 = colour_class(col, 0)
        c1 = colour_class(col, 1)
        assert set(c0.edges()) == {(0, 1), (2, 3)}
        assert set(c1.edges()) == {(0, 2), (0, 3), (1, 2), (1, 3)}
        assert is_bipartite(c0) and is_bipartite(c1)

    def test_classes_bipartite_up_to_k6(self):
        for k in range(1, 7):
            col = binary_colouring(k)
            for c in range(k):
                cls = colour_class(col, c)
                assert is_bipartite(cls), (k, c)
                # class c is split exactly by bit c
                for u, v in cls.edges():
                    assert (u ^ v).bit_length() - 1 == c

    def test_range_validation(self):
        with pytest.raises(GraphError):
            binary_colouring(0)
        with pytest.raises(GraphError):
            binary_colouring(13)


class TestShortestMonoOddCycle:
    def test_all_one_colour_k5(self):
        col = EdgeColouring(5, 1, [0] * 10)
        rep = shortest_mono_odd_cycle(col)
        assert rep.length == 3 and rep.colour == 0
        rep.witness.validate(colour_class(col, 0))

    def test_two_pentagons(self):
        rep = shortest_mono_odd_cycle(two_pentagons())
        assert rep.length == 5
        assert rep.class_odd_girths[0].value == 5
        assert rep.class_odd_girths[1].value == 5
        assert rep.colour == 0  # tie broken by lower colour id

    def test_binary_colouring_none(self):
        rep = shortest_mono_odd_cycle(binary_colouring(3))
        assert rep.length is None and rep.colour is None and rep.witness is None

    def test_witness_lies_in_class(self):
        rng = random.Random(8)
        for _ in range(30):
            col = random_colouring(rng, rng.randint(3, 9), rng.randint(1, 3))
            rep = shortest_mono_odd_cycle(col)
            if rep.length is not None:
                rep.witness.validate(colour_class(col, rep.colour))
                assert len(rep.witness) == rep.length

    def test_bipartite_forces_small_n(self):
        # a colouring with every class bipartite cannot exist once n > 2^k
        rng = random.Random(15)
        for _ in range(200):
            k = rng.randint(1, 3)
            n = (1 << k) + rng.randint(1, 3)
            col = random_colouring(rng, n, k)
            assert shortest_mono_odd_cycle(col).length is not None


class TestThetaPipeline:
    def test_two_pentagons_equality(self):
        rep = theta_pipeline(two_pentagons())
        assert rep.holds
        lo, hi = rep.product_interval
        assert lo <= 5.0 <= hi + rep.slack
        assert hi == pytest.approx(5.0, abs=1e-5)
        assert all(c.girth_bound_holds for c in rep.classes)
        assert [c.g_used for c in rep.classes] == [3, 3]

    def test_single_colour_k4(self):
        col = EdgeColouring(4, 1, [0] * 6)
        rep = theta_pipeline(col)
        assert rep.holds
        assert rep.product_interval[1] == pytest.approx(4.0, abs=1e-6)

    def test_binary_k2(self):
        rep = theta_pipeline(binary_colouring(2))
        assert rep.holds
        # both classes bipartite: theta of each complement at most 2 + excess
        for cls in rep.classes:
            assert cls.class_odd_girth.value is None
            assert cls.g_used == 99
            assert cls.theta_complement.upper <= 2.0 + cls.epsilon + 3e-7

    def test_size_guard(self):
        with pytest.raises(GraphError, match="48"):
            theta_pipeline(EdgeColouring(49, 1, [0] * (49 * 48 // 2)))


class TestCapacityWitness:
    def test_two_pentagons(self):
        rep = capacity_witness(two_pentagons(), max_factors=2)
        assert rep.product_vertices == 25
        assert rep.diagonal == tuple(v * 6 for v in range(5))
        assert rep.diagonal_independent
        assert rep.alpha.value == 5 and rep.alpha.optimal
        assert rep.embedding_checked and rep.embedding_ok

    def test_single_colour_k3(self):
        col = EdgeColouring(3, 1, [0, 0, 0])
        rep = capacity_witness(col, max_factors=1)
        assert rep.alpha.value == 3
        assert rep.diagonal_independent

    def test_binary_k2(self):
        rep = capacity_witness(binary_colouring(2), max_factors=2)
        assert rep.diagonal_independent
        assert rep.alpha.value >= 4

    def test_factor_guard(self):
        with pytest.raises(GraphError, match="classes"):
            capacity_witness(two_pentagons(), max_factors=1)

    def test_size_guard(self):
        col = EdgeColouring(17, 3, [0] * (17 * 16 // 2))
        with pytest.raises(GraphError, match="cap"):
            capacity_witness(col, max_factors=3)


class TestLocalSearch:
    def test_forced_triangle(self):
        res = local_search_colouring(3, 1, seed=1, iterations=5)
        assert res.report.length == 3

    def test_finds_bipartite_split_for_k4(self):
        res = local_search_colouring(4, 2, seed=0, iterations=3000)
        assert res.report.length is None

    def test_reaches_pentagon_optimum(self):
        res = local_search_colouring(5, 2, seed=0, iterations=10_000)
        assert res.report.length == 5

    def test_deterministic(self):
        a = local_search_colouring(5, 2, seed=3, iterations=400)
        b = local_search_colouring(5, 2, seed=3, iterations=400)
        assert a.best == b.best
        assert a.iterations_used == b.iterations_used

    def test_guards(self):
        with pytest.raises(GraphError):
            local_search_colouring(65, 2, 0, 10)
        with pytest.raises(GraphError):
            local_search_colouring(10, 9, 0, 10)
