import random

import pytest

from fractions import Fraction

from threshmax.graphs import (
    Graph,
    Hypergraph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    double_graph,
    path_graph,
    star_graph,
)
from threshmax.homcount import (
    BudgetError,
    hom_count,
    hom_count_hyper,
    hom_count_naive,
    hom_density,
    injective_hom_count,
    iter_homomorphisms,
)


def random_graph(rng, n, p=0.5):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)


def matrix_power_trace(g, k):
    # closed walks of length k, computed by integer matrix powering
    a = [[1 if g.has_edge(i, j) else 0 for j in range(g.n)] for i in range(g.n)]

    def mul(x, y):
        return [
            [sum(x[i][t] * y[t][j] for t in range(g.n)) for j in range(g.n)]
            for i in range(g.n)
        ]

    p = a
    for _ in range(k - 1):
        p = mul(p, a)
    return sum(p[i][i] for i in range(g.n))


def test_known_small_counts():
    k2, k3, c4 = path_graph(2), complete_graph(3), cycle_graph(4)
    assert hom_count(k2, k3) == 6
    assert hom_count(k3, k2) == 0
    assert hom_count(Graph(0), k3) == 1
    assert hom_count(k2, Graph(0)) == 0
    assert hom_count(Graph(3), k2) == 8
    # hom(C4, G) counts closed 4-walks
    assert hom_count(c4, c4) == matrix_power_trace(c4, 4) == 32
    assert hom_count(c4, complete_graph(4)) == matrix_power_trace(complete_graph(4), 4)


def test_star_count_closed_form():
    # hom(K_{1,2}, G) = sum of squared degrees
    rng = random.Random(3)
    for _ in range(30):
        g = random_graph(rng, rng.randrange(1, 8))
        expect = sum(g.degree(v) ** 2 for v in range(g.n))
        assert hom_count(star_graph(2), g) == expect


def test_backtracking_matches_naive():
    rng = random.Random(17)
    for _ in range(120):
        h = random_graph(rng, rng.randrange(1, 5))
        g = random_graph(rng, rng.randrange(0, 6))
        assert hom_count(h, g) == hom_count_naive(h, g)


def test_disconnected_pattern_multiplies():
    rng = random.Random(23)
    for _ in range(20):
        a = random_graph(rng, rng.randrange(1, 4))
        b = random_graph(rng, rng.randrange(1, 4))
        g = random_graph(rng, rng.randrange(1, 6))
        assert hom_count(disjoint_union(a, b), g) == hom_count(a, g) * hom_count(b, g)


def test_density_and_doubling():
    k2 = path_graph(2)
    g = complete_graph(3)
    assert hom_density(k2, g) == Fraction(6, 9)
    assert hom_density(k2, double_graph(g)) == Fraction(24, 36)
    with pytest.raises(ValueError):
        hom_density(k2, Graph(0))


def test_iter_homomorphisms_is_consistent():
    rng = random.Random(5)
    for _ in range(25):
        h = random_graph(rng, rng.randrange(1, 5))
        g = random_graph(rng, rng.randrange(1, 5))
        homs = list(iter_homomorphisms(h, g))
        assert len(homs) == hom_count(h, g)
        assert len(set(homs)) == len(homs)
        for phi in homs:
            assert all(g.has_edge(phi[a], phi[b]) for a, b in h.edges)


def test_injective_counts():
    k3 = complete_graph(3)
    assert injective_hom_count(k3, k3) == 6
    assert injective_hom_count(path_graph(2), complete_graph(4)) == 12
    # injective homs from P3 into C4: pick middle (4) times ordered neighbour pair (2)
    assert injective_hom_count(path_graph(3), cycle_graph(4)) == 8


def test_budget_enforced():
    with pytest.raises(BudgetError):
        hom_count_naive(complete_graph(5), complete_graph(12), budget=10)
    with pytest.raises(BudgetError):
        hom_count(path_graph(6), complete_graph(12), budget=10)


def test_hyper_count_matches_graph_count_at_k2():
    rng = random.Random(31)
    for _ in range(40):
        h = random_graph(rng, rng.randrange(1, 5))
        g = random_graph(rng, rng.randrange(1, 6))
        hh = Hypergraph(h.n, 2, [tuple(e) for e in h.edges])
        gh = Hypergraph(g.n, 2, [tuple(e) for e in g.edges])
        assert hom_count_hyper(hh, gh) == hom_count(h, g)


def test_hyper_count_small_cases():
    one = Hypergraph(3, 3, [(0, 1, 2)])
    two = Hypergraph(4, 3, [(0, 1, 2), (1, 2, 3)])
    # single edge into single edge: 3! orderings
    assert hom_count_hyper(one, one) == 6
    assert hom_count_hyper(one, two) == 12
    with pytest.raises(ValueError):
        hom_count_hyper(one, Hypergraph(3, 2, [(0, 1)]))
