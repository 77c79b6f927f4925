import random

import pytest

from lincrown.crown import (
    CrownEmbedding,
    GreedyStuck,
    degree_certificate,
    exact_crown_with_base,
    find_crown,
    greedy_crown,
    is_crown_free,
    k_of_edge,
    reversed_assignment,
)
from lincrown.generators import crown_graph, cstar_graph, greedy_crown_free, matching_graph
from lincrown.hypergraph import InvalidParameterError, LinearRGraph, UnknownEdgeError

from oracles import naive_crown_free, naive_has_crown_with_base, naive_k_of_edge, random_graph


def small_random_graphs(count, seed, max_edges=8):
    rng = random.Random(seed)
    for _ in range(count):
        r = rng.choice([2, 3, 3, 4])
        n = rng.randint(r + 1, 3 * r + 4)
        g = random_graph(rng, n, r, attempts=4 * n)
        if g.m > max_edges:
            g = LinearRGraph(n, r, g.edges[:max_edges])
        yield g


class TestGreedy:
    def test_crown_spokes(self):
        g, emb = crown_graph(3, 3)
        assert greedy_crown(g, emb.base, [0, 1, 2]) == emb

    def test_order_is_respected(self):
        g, emb = crown_graph(4, 3)
        got = greedy_crown(g, emb.base, [2, 0, 1])
        assert got.attachments == (2, 0, 1)
        assert got.spokes == (emb.spokes[2], emb.spokes[0], emb.spokes[1])

    def test_single_edge_stuck(self):
        g = LinearRGraph(3, 3, [(0, 1, 2)])
        with pytest.raises(GreedyStuck) as exc:
            greedy_crown(g, (0, 1, 2), [1])
        assert exc.value.index == 1

    def test_lowest_index_edge_first(self):
        g = LinearRGraph(9, 3, [(0, 1, 2), (0, 5, 6), (0, 3, 4), (1, 3, 7)])
        emb = greedy_crown(g, (0, 1, 2), [0, 1])
        assert emb.spokes == ((0, 5, 6), (1, 3, 7))

    def test_greedy_can_get_stuck_where_a_crown_exists(self):
        # picking (0,3,4) first blocks vertex 1's only spoke
        g = LinearRGraph(10, 3, [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 7)])
        with pytest.raises(GreedyStuck) as exc:
            greedy_crown(g, (0, 1, 2), [0, 1])
        assert exc.value.index == 2
        assert exact_crown_with_base(g, (0, 1, 2), 2) is not None

    def test_invalid_attachments(self):
        g, emb = crown_graph(3, 3)
        with pytest.raises(InvalidParameterError):
            greedy_crown(g, emb.base, [0, 0])
        with pytest.raises(InvalidParameterError):
            greedy_crown(g, emb.base, [0, 5])
        with pytest.raises(InvalidParameterError):
            greedy_crown(g, emb.base, [])

    def test_degree_condition_guarantees_success(self):
        checked = 0
        for g in small_random_graphs(600, seed=11, max_edges=40):
            r = g.r
            for e in g.edges:
                order = sorted(e, key=lambda v: -g.degree(v))
                for k in range(1, r + 1):
                    # v_i ordered by increasing degree requirement
                    vs = list(reversed(order[:k]))
                    if all(g.degree(v) >= (i - 1) * (r - 1) + 2 for i, v in enumerate(vs, start=1)):
                        emb = greedy_crown(g, e, vs)
                        assert emb.is_valid(g)
                        assert exact_crown_with_base(g, e, k) is not None
                        checked += 1
        assert checked > 100


class TestExact:
    @pytest.mark.parametrize("r,k", [(3, 1), (3, 3), (4, 2), (5, 3), (5, 5)])
    def test_generator_crown(self, r, k):
        g, emb = crown_graph(r, k)
        assert exact_crown_with_base(g, emb.base, k) == emb

    def test_matching_has_none(self):
        g = matching_graph(3, 3)
        assert exact_crown_with_base(g, g.edges[0], 1) is None

    def test_spoke_as_base(self):
        g, emb = crown_graph(3, 3)
        spoke = emb.spokes[0]
        assert exact_crown_with_base(g, spoke, 2) is None
        assert not naive_has_crown_with_base(g.edges, spoke, 2)

    def test_errors(self):
        g, emb = crown_graph(3, 3)
        with pytest.raises(InvalidParameterError):
            exact_crown_with_base(g, emb.base, 4)
        with pytest.raises(InvalidParameterError):
            exact_crown_with_base(g, emb.base, 0)
        with pytest.raises(UnknownEdgeError):
            exact_crown_with_base(g, (0, 1, 3), 1)

    def test_backtracks_past_greedy_trap(self):
        g = LinearRGraph(10, 3, [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 7)])
        emb = exact_crown_with_base(g, (0, 1, 2), 2)
        assert emb == CrownEmbedding((0, 1, 2), (0, 1), ((0, 5, 6), (1, 3, 7)))

    def test_agrees_with_naive_oracle(self):
        total = 0
        for g in small_random_graphs(400, seed=5):
            for e in g.edges:
                for k in range(1, g.r + 1):
                    emb = exact_crown_with_base(g, e, k)
                    assert (emb is not None) == naive_has_crown_with_base(g.edges, e, k)
                    if emb is not None:
                        assert emb.is_valid(g) and emb.base == e and emb.k == k
                        total += 1
        assert total > 200


class TestKOfEdge:
    def test_isolated_edge(self):
        g = LinearRGraph(8, 3, [(0, 1, 2), (3, 4, 5)])
        assert k_of_edge(g, (0, 1, 2)) == 0

    @pytest.mark.parametrize("r,k", [(3, 1), (3, 2), (3, 3), (4, 4), (6, 2)])
    def test_generator_base(self, r, k):
        g, emb = crown_graph(r, k)
        assert k_of_edge(g, emb.base) == k

    def test_spoke(self):
        g, emb = crown_graph(3, 3)
        assert k_of_edge(g, emb.spokes[1]) == 1
        assert naive_k_of_edge(g.edges, emb.spokes[1], 3) == 1

    def test_monotone_and_matches_oracle(self):
        for g in small_random_graphs(300, seed=8):
            for e in g.edges:
                t = k_of_edge(g, e)
                assert t == naive_k_of_edge(g.edges, e, g.r)
                for s in range(1, g.r + 1):
                    assert (t >= s) == (exact_crown_with_base(g, e, s) is not None)


class TestCrownFree:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_matching(self, k):
        assert is_crown_free(matching_graph(4, 3), k)

    @pytest.mark.parametrize("r,k", [(3, 3), (4, 2), (5, 4)])
    def test_generator_crown_found(self, r, k):
        g, emb = crown_graph(r, k)
        assert not is_crown_free(g, k)
        assert find_crown(g, k) == emb

    def test_cstar(self):
        assert not is_crown_free(cstar_graph(3), 3)
        g4 = cstar_graph(4)
        assert is_crown_free(g4, 4)
        assert naive_crown_free(g4.edges, 4)

    def test_crown_free_bounds_k_of_edge(self):
        for seed in range(40):
            r = 3 + seed % 2
            k = 3 if seed % 3 else r
            g = greedy_crown_free(14, r, k, seed)
            assert is_crown_free(g, k)
            assert all(k_of_edge(g, e) <= k - 1 for e in g.edges)


class TestDegreeCertificate:
    def test_matching(self):
        g = matching_graph(2, 3)
        cert = degree_certificate(g, g.edges[0], 3)
        assert cert.index == 1 and cert.bound_value == 5 and cert.degree == 1
        assert cert.vertex == 0

    def test_crown_base_still_certified(self):
        g, emb = crown_graph(3, 3)
        cert = degree_certificate(g, emb.base, 3)
        assert cert.index == 1 and cert.degree == 2 and cert.bound_value == 5

    def test_none_means_greedy_succeeds(self):
        nones = 0
        for g in small_random_graphs(2000, seed=3, max_edges=60):
            for e in g.edges:
                for k in range(1, g.r + 1):
                    cert = degree_certificate(g, e, k)
                    if cert is not None:
                        order = g.edge_degrees_desc(e)
                        assert order[cert.index - 1] == (cert.vertex, cert.degree)
                        assert cert.degree <= cert.bound_value
                        continue
                    nones += 1
                    emb = greedy_crown(g, e, reversed_assignment(g, e, k))
                    assert emb.is_valid(g)
                    assert exact_crown_with_base(g, e, k) is not None
        assert nones > 50

    def test_exists_on_every_edge_of_crown_free_graph(self):
        for seed in range(30):
            for r, k in ((3, 3), (4, 3), (4, 4)):
                g = greedy_crown_free(12, r, k, seed)
                assert all(degree_certificate(g, e, k) is not None for e in g.edges)
