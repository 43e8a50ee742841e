import random

import pytest

import fanpart as fp
import util


class TestFamilies:
    def test_fan_degenerate(self):
        assert fp.make_fan(1) == fp.Graph(1)
        assert fp.make_fan(2) == fp.Graph(2, [(0, 1)])

    def test_fan5(self):
        g = fp.make_fan(5)
        assert g.m == 7  # 4 spokes + 3 path edges
        assert g.degree(0) == 4
        assert g.has_edge(1, 2) and g.has_edge(3, 4) and not g.has_edge(1, 3)

    def test_star(self):
        g = fp.make_star(4)
        assert g.degree(0) == 3
        assert g.m == 3

    def test_grid_2x2_is_cycle(self):
        g = fp.make_grid(2, 2)
        assert g.n == 4 and g.m == 4
        assert all(g.degree(v) == 2 for v in range(4))

    def test_ktree_edge_count(self):
        g, parent, bags = fp.make_ktree(10, 2, seed=1)
        assert g.m == 2 * 10 - 3  # k*m - k(k+1)/2
        td = fp.TreeDecomposition(tuple(parent), tuple(bags))
        ok, why = fp.validate(g, td)
        assert ok, why
        assert td.width() == 2

    def test_parameter_errors(self):
        with pytest.raises(ValueError):
            fp.make_fan(0)
        with pytest.raises(ValueError):
            fp.make_grid(0, 3)
        with pytest.raises(ValueError):
            fp.make_ktree(4, 4)

    def test_graph_invariants(self):
        with pytest.raises(ValueError):
            fp.Graph(3, [(0, 0)])
        with pytest.raises(ValueError):
            fp.Graph(3, [(0, 5)])
        g = fp.Graph(3, [(0, 1), (1, 0)])  # parallel edges collapse
        assert g.m == 1


class TestPower:
    def test_identity(self):
        p4 = fp.make_path(4)
        assert fp.graph_power(p4, 1) == p4

    def test_p4_squared(self):
        g = fp.graph_power(fp.make_path(4), 2)
        assert sorted(g.edges()) == [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]

    def test_p4_cubed(self):
        assert fp.graph_power(fp.make_path(4), 3) == fp.make_complete(4)

    def test_against_all_pairs_distances(self):
        rng = random.Random(7)
        for trial in range(12):
            n = rng.randint(2, 50)
            g = util.random_graph(rng, n, rng.uniform(0.03, 0.3))
            dist = util.floyd_warshall(g)
            for d in (1, 2, 3):
                gp = fp.graph_power(g, d)
                expect = {
                    (u, v)
                    for u in range(n)
                    for v in range(u + 1, n)
                    if 1 <= dist[u][v] <= d
                }
                assert set(gp.edges()) == expect

    def test_power_composition(self):
        rng = random.Random(3)
        for _ in range(5):
            g = util.random_graph(rng, rng.randint(3, 20), 0.25)
            assert fp.graph_power(fp.graph_power(g, 2), 3) == fp.graph_power(g, 6)

    def test_power_rejects_zero(self):
        with pytest.raises(ValueError):
            fp.graph_power(fp.make_path(3), 0)


class TestQuotient:
    def test_pairs_of_path(self):
        q = fp.quotient(fp.make_path(4), [{0, 1}, {2, 3}])
        assert q == fp.Graph(2, [(0, 1)])

    def test_singletons_identity(self):
        c6 = fp.make_cycle(6)
        assert fp.quotient(c6, [{i} for i in range(6)]) == c6

    def test_k4_with_empty_part(self):
        q = fp.quotient(fp.make_complete(4), [{0, 1}, {2}, {3}, set()])
        assert q.n == 4
        assert sorted(q.edges()) == [(0, 1), (0, 2), (1, 2)]
        assert q.degree(3) == 0

    def test_invalid_partitions(self):
        g = fp.make_path(3)
        with pytest.raises(fp.InvalidPartitionError):
            fp.quotient(g, [{0, 1}, {1, 2}])
        with pytest.raises(fp.InvalidPartitionError):
            fp.quotient(g, [{0, 1}])


class TestProducts:
    def test_p2_strong_p2(self):
        assert fp.strong_product(fp.make_path(2), fp.make_path(2)) == fp.make_complete(4)

    def test_blowup_k1(self):
        assert fp.blowup(fp.Graph(1), 3) == fp.make_complete(3)

    def test_blowup_p3_recount(self):
        # recount by enumeration straight from the definition
        h = fp.make_path(3)
        b = 2
        g = fp.blowup(h, b)
        assert g.n == h.n * b
        expect = set()
        for x1 in range(3):
            for j1 in range(b):
                for x2 in range(3):
                    for j2 in range(b):
                        a, c = x1 * b + j1, x2 * b + j2
                        if a >= c:
                            continue
                        # K_b coordinate is adjacent-or-equal for every pair,
                        # so only the h coordinate decides
                        if x1 == x2 or h.has_edge(x1, x2):
                            expect.add((a, c))
        assert set(g.edges()) == expect
        assert g.m == 11

    def test_blowup_vertex_count(self):
        for hn, b in [(1, 1), (4, 2), (3, 5)]:
            h = fp.make_path(hn)
            assert fp.blowup(h, b).n == hn * b


class TestFanRecognition:
    def test_fan_itself(self):
        c, order = fp.is_subgraph_of_fan(fp.make_fan(5))
        assert c == 0
        assert order == [1, 2, 3, 4]

    def test_k4_rejected(self):
        assert fp.is_subgraph_of_fan(fp.make_complete(4)) is None

    def test_star_accepted(self):
        assert fp.is_subgraph_of_fan(fp.make_star(6)) is not None

    def test_matches_containment_small(self, atlas):
        for n in range(1, 7):
            host = fp.make_fan(n)
            for g in atlas[n]:
                witness = fp.is_subgraph_of_fan(g)
                embeds = fp.contains_subgraph(g, host) is not None
                assert (witness is not None) == embeds

    def test_matches_containment_n7_sample(self):
        rng = random.Random(11)
        host = fp.make_fan(7)
        for _ in range(40):
            g = util.random_graph(rng, 7, rng.uniform(0.1, 0.6))
            witness = fp.is_subgraph_of_fan(g)
            embeds = fp.contains_subgraph(g, host) is not None
            assert (witness is not None) == embeds

    def test_witness_is_a_layout(self):
        rng = random.Random(13)
        for _ in range(60):
            g = util.random_graph(rng, rng.randint(1, 7), rng.uniform(0.1, 0.5))
            res = fp.is_subgraph_of_fan(g)
            if res is None:
                continue
            c, order = res
            pos = {v: i for i, v in enumerate(order)}
            for u, v in g.edges():
                if c in (u, v):
                    continue
                assert abs(pos[u] - pos[v]) == 1


class TestSubgraphAndMinor:
    def test_p3_in_k3(self):
        m = fp.contains_subgraph(fp.make_path(3), fp.make_complete(3))
        assert m is not None and len(set(m)) == 3

    def test_no_k4_in_c4(self):
        assert fp.contains_subgraph(fp.make_complete(4), fp.make_cycle(4)) is None

    def test_mapping_preserves_edges(self):
        rng = random.Random(5)
        for _ in range(30):
            g = util.random_graph(rng, rng.randint(1, 6), 0.4)
            host = util.random_graph(rng, rng.randint(6, 10), 0.5)
            m = fp.contains_subgraph(g, host)
            if m is None:
                continue
            assert len(set(m)) == g.n
            for u, v in g.edges():
                assert host.has_edge(m[u], m[v])

    def test_grid_has_k4_minor(self):
        assert fp.has_minor(fp.make_grid(3, 3), fp.make_complete(4))

    def test_tree_has_no_k3_minor(self):
        assert not fp.has_minor(fp.make_path(6), fp.make_complete(3))

    def test_minor_reflexive(self):
        g = fp.make_cycle(5)
        assert fp.has_minor(g, fp.make_cycle(5))
        assert fp.has_minor(g, fp.make_path(3))

    def test_guards(self):
        big = fp.make_path(11)
        with pytest.raises(fp.TooLargeError):
            fp.contains_subgraph(fp.make_path(9), big)
        with pytest.raises(fp.TooLargeError):
            fp.has_minor(big, fp.make_path(2))


class TestHPartitionBlowupEquivalence:
    """A graph has an H-partition of width <= w iff it embeds into the
    w-blowup of H; exhaustive for n <= 6, H in {K1, P2, P3}, w <= 3."""

    def test_equivalence(self, atlas):
        for n in range(1, 7):
            for g in atlas[n]:
                for hn in (1, 2, 3):
                    h = fp.make_path(hn)
                    for w in (1, 2, 3):
                        if hn * w > 10:
                            continue
                        # partition side, from the definition: ordered parts
                        # of size <= w, only consecutive parts adjacent
                        parts = util.path_parts_oracle(g, 0, w)
                        has_partition = parts is not None and len(parts) <= hn
                        embeds = (
                            fp.contains_subgraph(g, fp.blowup(h, w)) is not None
                        )
                        assert has_partition == embeds, (n, hn, w)


class TestEdgeListFormat:
    def test_round_trip(self):
        g, _, _ = fp.make_ktree(9, 3, seed=4)
        assert fp.read_edge_list(fp.write_edge_list(g)) == g

    def test_writer_layout(self):
        text = fp.write_edge_list(fp.make_path(3))
        assert text.splitlines() == ["3 2", "0 1", "1 2"]

    @pytest.mark.parametrize(
        "text",
        [
            "2 1\n0 0\n",          # loop
            "2 2\n0 1\n1 0\n",     # duplicate
            "2 1\n0 3\n",          # out of range
            "3 2\n0 1\n",          # wrong count
            "",                      # empty
        ],
    )
    def test_reader_rejects(self, text):
        with pytest.raises(ValueError):
            fp.read_edge_list(text)
