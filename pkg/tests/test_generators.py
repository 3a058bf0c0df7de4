import pytest

from vconn import ConfigError, Graph, PlantedParams, connected_components, generate_planted, k_core

from oracles import brute_force_kappa, complete, minimum_cuts, random_graph, to_networkx


def test_planted_unique_minimum_cut():
    g, triple = generate_planted(PlantedParams(n=12, size_L=3, size_S=2, seed=0))
    assert brute_force_kappa(g) == 2
    assert minimum_cuts(g) == [set(triple.S)]
    assert triple.is_valid(g)


def test_planted_roles_partition_vertices():
    params = PlantedParams(n=50, size_L=5, size_S=4, k_gen=10, seed=3)
    g, triple = generate_planted(params)
    assert len(triple.L) == 5
    assert len(triple.S) == 4
    assert len(triple.L | triple.S | triple.R) == 50
    assert g.m // 2 <= params.n * params.k_gen


def test_planted_no_left_right_edges():
    g, triple = generate_planted(PlantedParams(n=40, size_L=6, size_S=3, k_gen=8, seed=1))
    for u, v in g.undirected_edges():
        assert not (u in triple.L and v in triple.R)
        assert not (u in triple.R and v in triple.L)


def test_planted_same_seed_same_graph():
    params = PlantedParams(n=30, size_L=4, size_S=2, k_gen=5, seed=9)
    a, _ = generate_planted(params)
    b, _ = generate_planted(params)
    assert sorted(a.undirected_edges()) == sorted(b.undirected_edges())


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(n=10, size_L=0, size_S=2),
        dict(n=10, size_L=2, size_S=0),
        dict(n=10, size_L=5, size_S=5),
        dict(n=100, size_L=5, size_S=10, k_gen=10),
    ],
)
def test_planted_invalid_params(kwargs):
    with pytest.raises(ConfigError):
        PlantedParams(**kwargs)


def test_k_core_of_clique_is_clique():
    core = k_core(complete(5), 4)
    assert core.n == 5
    assert core.m == 20


def test_k_core_of_star_is_empty():
    star = Graph.from_edges(11, [(0, i) for i in range(1, 11)])
    assert k_core(star, 2).n == 0


def test_k_core_properties():
    g = random_graph(40, 0.15, seed=6)
    core = k_core(g, 3)
    assert core.n > 0
    assert core.min_degree()[0] >= 3
    assert len(connected_components(core)) == 1
    assert set(core.labels) <= set(g.labels)


def test_k_core_keeps_largest_component():
    # a K4 and a K5 share no vertex
    edges = [(u, v) for u in range(4) for v in range(u + 1, 4)]
    edges += [(u, v) for u in range(4, 9) for v in range(u + 1, 9)]
    core = k_core(Graph.from_edges(9, edges, labels=list(range(100, 109))), 3)
    assert core.n == 5
    assert sorted(core.labels) == [104, 105, 106, 107, 108]
    assert to_networkx(core).number_of_edges() == 10


def test_k_core_rejects_zero():
    with pytest.raises(ConfigError):
        k_core(complete(3), 0)
