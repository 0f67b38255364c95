import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_contains, multigraphs
from matchtree.errors import InvalidParameter, NotAForest, UnsupportedPattern
from matchtree.graph import (Multigraph, build_Gx, complete, complete_bipartite, contains_pattern, cycle,
                             format_graph, ind_k, induced_F_matching_number, is_chordal, is_family_free, is_forest,
                             matching_number, parse_graph, path, pattern, random_chordal, random_forest, random_tree,
                             saddle_vertices, simplicial_vertices, star, unique_nonleaf_neighbor,
                             vertex_cover_number)


def to_nx(G: Multigraph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges)
    return H


class TestGenerators:
    def test_path(self):
        assert path(1).n == 1 and path(1).n_edges == 0
        assert set(path(4).edges) == {(0, 1), (1, 2), (2, 3)}
        p7 = path(7)
        assert p7.n == 7 and p7.n_edges == 6 and max(p7.degree(v) for v in range(7)) == 2
        with pytest.raises(InvalidParameter):
            path(0)

    def test_cycle(self):
        assert cycle(2).edges == {(0, 1): 2}
        assert set(cycle(3).edges) == {(0, 1), (1, 2), (0, 2)}
        c5 = cycle(5)
        assert c5.n_edges == 5 and all(c5.degree(v) == 2 for v in range(5))
        with pytest.raises(InvalidParameter):
            cycle(1)

    def test_complete_families(self):
        assert complete(4).n_edges == 6
        assert star(3) == complete_bipartite(1, 3)
        kb = complete_bipartite(2, 3)
        assert kb.n_edges == 6
        assert all(kb.multiplicity(a, b) == 0 for a, b in [(0, 1), (2, 3), (3, 4)])
        with pytest.raises(InvalidParameter):
            complete_bipartite(0, 3)

    def test_random_tree(self):
        assert random_tree(1, 5).n == 1
        t = random_tree(8, 42)
        assert t.n_edges == 7 and is_forest(t) and nx.is_connected(to_nx(t))
        assert random_tree(8, 42) == t

    def test_random_chordal(self):
        assert random_chordal(6, 1.0, 3) == complete(6)
        g0 = random_chordal(6, 0.0, 3)
        assert g0.n_edges == 0 and is_chordal(g0)
        assert is_chordal(random_chordal(10, 0.5, 7))

    @pytest.mark.parametrize("seed", range(30))
    def test_chordal_generator_against_networkx(self, seed):
        rng = random.Random(seed)
        G = random_chordal(rng.randint(1, 12), rng.random(), seed)
        assert nx.is_chordal(to_nx(G))
        assert random_chordal(G.n, 0.3, seed) == random_chordal(G.n, 0.3, seed)

    def test_random_forest_is_forest(self):
        for s in range(20):
            assert is_forest(random_forest(10, s))


class TestContainment:
    def test_examples(self):
        assert contains_pattern(path(4), path(3))
        assert not contains_pattern(path(4), cycle(2))
        assert contains_pattern(complete(3), path(3))
        assert is_family_free(path(4), [])

    def test_pattern_names(self):
        assert pattern("p3").graph == path(3)
        assert pattern("c2").graph == cycle(2)
        assert pattern("k2").graph == path(2)
        assert pattern("K4").graph == complete(4)
        with pytest.raises(UnsupportedPattern):
            pattern("p9")
        with pytest.raises(UnsupportedPattern):
            pattern("x3")

    @settings(max_examples=150, deadline=None)
    @given(multigraphs(max_n=7), multigraphs(max_n=4, min_n=2))
    def test_against_brute_force(self, G, F):
        if F.n_edges == 0 or F.n > G.n:
            return
        assert contains_pattern(G, F) == brute_contains(G, F)


class TestInvariants:
    def test_examples(self):
        assert matching_number(path(3)) == 1
        assert vertex_cover_number(cycle(5)) == 3
        assert vertex_cover_number(complete(4)) == 3
        assert ind_k(path(3), 3) == 1
        assert ind_k(path(7), 3) == 2
        assert ind_k(star(4), 3) == 1
        assert induced_F_matching_number(path(7), pattern("p3")) == 2

    @settings(max_examples=100, deadline=None)
    @given(multigraphs(max_n=10, max_mult=1))
    def test_matching_number_against_networkx(self, G):
        assert matching_number(G) == len(nx.max_weight_matching(to_nx(G), maxcardinality=True))

    @settings(max_examples=80, deadline=None)
    @given(multigraphs(max_n=9, max_mult=1))
    def test_vertex_cover_brute_force(self, G):
        best = min(bin(s).count("1") for s in range(1 << G.n)
                   if all(s >> a & 1 or s >> b & 1 for a, b in G.edges))
        assert vertex_cover_number(G) == best

    @pytest.mark.parametrize("seed", range(100))
    def test_simplicial_vertex_cover_drop(self, seed):
        rng = random.Random(seed)
        G = random_chordal(rng.randint(2, 11), rng.random(), seed)
        u = simplicial_vertices(G)[0]
        rest = G.delete_vertices(G.closed_neighborhood(u))
        assert vertex_cover_number(rest) == vertex_cover_number(G) - G.degree(u)

    @pytest.mark.parametrize("seed", range(60))
    def test_saddle_lemmas(self, seed):
        T = random_tree(random.Random(seed).randint(3, 12), seed)
        for x in saddle_vertices(T):
            a = unique_nonleaf_neighbor(T, x)
            if a is not None:
                star_part = [v for v in T.closed_neighborhood(x) if v != a]
                assert matching_number(T) == matching_number(T.delete_vertices(star_part)) + 1
                w_nb = T.closed_neighborhood(a)
                T2 = T.delete_vertices(set(T.closed_neighborhood(x)) | set(w_nb))
                assert ind_k(T2, 3) <= ind_k(T, 3) - 1
            if T.degree(x) >= 3:
                assert ind_k(T.delete_vertices(T.closed_neighborhood(x)), 3) == ind_k(T, 3) - 1

    def test_ind_k_brute_force_small(self):
        # P_3 copies of P_6 are the four runs of three; induced disjoint pairs need a gap
        assert ind_k(path(6), 3) == 1
        assert ind_k(path(8), 3) == 2


class TestForestsAndChordal:
    def test_saddle_examples(self):
        assert saddle_vertices(path(3)) == [1]
        assert saddle_vertices(star(5)) == [0]
        assert saddle_vertices(path(5)) == [1, 3]
        with pytest.raises(NotAForest):
            saddle_vertices(cycle(4))

    def test_simplicial_and_chordal(self):
        assert simplicial_vertices(complete(3)) == [0, 1, 2]
        assert not is_chordal(cycle(4))
        assert unique_nonleaf_neighbor(path(4), 1) == 2

    @settings(max_examples=100, deadline=None)
    @given(multigraphs(max_n=9, max_mult=1))
    def test_is_chordal_against_networkx(self, G):
        assert is_chordal(G) == nx.is_chordal(to_nx(G))

    def test_build_Gx(self):
        g = build_Gx(path(3), 1)
        assert g.n == 2 and g.edges == {(0, 1): 2}
        g = build_Gx(star(3), 0)
        assert g.n == 3 and g.edges == {(0, 1): 2, (0, 2): 2, (1, 2): 2}
        g = build_Gx(path(2), 0)
        assert g.n == 1 and g.n_edges == 0
        # an existing edge on a 3-path through an end becomes double
        g = build_Gx(path(4), 0)
        assert g.labels == (1, 2, 3) and g.edges == {(0, 1): 2, (1, 2): 1}
        with pytest.raises(InvalidParameter):
            build_Gx(path(3), 5)


class TestFileFormat:
    @settings(max_examples=50)
    @given(multigraphs(max_n=8, max_mult=3))
    def test_round_trip(self, G):
        assert parse_graph(format_graph(G)) == G

    def test_parse_defaults_and_errors(self):
        G = parse_graph("n 3\n0 1\n1 2 2  # double\n")
        assert G.edges == {(0, 1): 1, (1, 2): 2}
        with pytest.raises(InvalidParameter):
            parse_graph("0 1\n")
        with pytest.raises(InvalidParameter):
            Multigraph(2, {(0, 0): 1})


@given(st.integers(1, 30))
def test_generators_deterministic(seed):
    assert random_forest(9, seed) == random_forest(9, seed)
    assert random_tree(9, seed) == random_tree(9, seed)
