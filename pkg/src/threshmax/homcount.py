"""Exact homomorphism counting.

A homomorphism from H to G is a map on vertices sending every edge of H to
an edge of G.  ``hom_count_naive`` enumerates all n^|H| maps and is the
reference oracle; ``hom_count`` backtracks over a BFS vertex order and is
the one the rest of the package uses.  Both return exact integer counts.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from itertools import product

from threshmax.graphs import Graph, Hypergraph

__all__ = [
    "BudgetError",
    "DEFAULT_BUDGET",
    "hom_count_naive",
    "hom_count",
    "hom_density",
    "injective_hom_count",
    "iter_homomorphisms",
    "hom_count_hyper",
]

DEFAULT_BUDGET = 10**8


class BudgetError(RuntimeError):
    """Raised when an exact computation would exceed its state budget."""


def hom_count_naive(h: Graph, g: Graph, budget: int = DEFAULT_BUDGET) -> int:
    """Count homomorphisms by checking every map in V(G)^V(H)."""
    if h.n == 0:
        return 1
    if g.n == 0:
        return 0
    if g.n**h.n > budget:
        raise BudgetError(f"{g.n}^{h.n} maps exceed budget {budget}")
    he = h.sorted_edges()
    total = 0
    for phi in product(range(g.n), repeat=h.n):
        if all(g.has_edge(phi[a], phi[b]) for a, b in he):
            total += 1
    return total


def _search_order(h: Graph) -> list[int]:
    """BFS order from a max-degree root, so each new vertex sees already
    placed neighbours and dead branches are cut immediately."""
    order: list[int] = []
    visited = [False] * h.n
    verts = sorted(range(h.n), key=lambda v: (-h.degree(v), v))
    for root in verts:
        if visited[root]:
            continue
        visited[root] = True
        q = deque([root])
        while q:
            v = q.popleft()
            order.append(v)
            for w in sorted(h.adjacency[v], key=lambda x: (-h.degree(x), x)):
                if not visited[w]:
                    visited[w] = True
                    q.append(w)
    return order


def _placed_neighbors(h: Graph, order: list[int]) -> list[list[int]]:
    """For position i, the positions j < i with order[j] adjacent to order[i]."""
    pos = {v: i for i, v in enumerate(order)}
    back: list[list[int]] = [[] for _ in order]
    for i, v in enumerate(order):
        back[i] = sorted(pos[w] for w in h.adjacency[v] if pos[w] < i)
    return back


def _backtrack(h: Graph, g: Graph, budget: int, collect: bool):
    """Shared engine: yields image tuples if collect else a final count."""
    order = _search_order(h)
    back = _placed_neighbors(h, order)
    inv = [0] * h.n
    for i, v in enumerate(order):
        inv[v] = i
    adj = g.adjacency
    gn = g.n
    image = [0] * h.n
    states = 0
    total = 0

    def extend(i: int):
        nonlocal states, total
        if i == h.n:
            if collect:
                yield tuple(image[inv[v]] for v in range(h.n))
            else:
                total += 1
            return
        bs = back[i]
        if bs:
            cands = [c for c in adj[image[bs[0]]] if all(c in adj[image[j]] for j in bs[1:])]
            states += len(adj[image[bs[0]]])
        else:
            cands = range(gn)
            states += gn
        if states > budget:
            raise BudgetError(f"homomorphism search exceeded budget {budget}")
        for c in cands:
            image[i] = c
            yield from extend(i + 1)

    if collect:
        yield from extend(0)
    else:
        for _ in extend(0):
            pass
        yield total


def hom_count(h: Graph, g: Graph, budget: int = DEFAULT_BUDGET) -> int:
    """Count homomorphisms from h to g by backtracking.

    Budget is charged per candidate image examined; exceeding it raises, so
    the answer is exact whenever one is returned.
    """
    if h.n == 0:
        return 1
    if g.n == 0:
        return 0
    return next(_backtrack(h, g, budget, collect=False))


def iter_homomorphisms(h: Graph, g: Graph, budget: int = DEFAULT_BUDGET):
    """Yield every homomorphism as the tuple (image of 0, image of 1, ...)."""
    if h.n == 0:
        yield ()
        return
    if g.n == 0:
        return
    yield from _backtrack(h, g, budget, collect=True)


def hom_density(h: Graph, g: Graph, budget: int = DEFAULT_BUDGET) -> Fraction:
    """t(H, G) = hom(H, G) / |V(G)|^|V(H)| as an exact fraction."""
    if g.n == 0:
        raise ValueError("homomorphism density undefined for an empty target")
    return Fraction(hom_count(h, g, budget), g.n**h.n)


def injective_hom_count(h: Graph, g: Graph, budget: int = DEFAULT_BUDGET) -> int:
    """Count homomorphisms whose vertex map is injective."""
    count = 0
    for phi in iter_homomorphisms(h, g, budget):
        if len(set(phi)) == h.n:
            count += 1
    return count


def hom_count_hyper(h: Hypergraph, g: Hypergraph, budget: int = DEFAULT_BUDGET) -> int:
    """Count maps sending every edge of h onto an edge of g (as a set).

    The image of an edge must have k distinct vertices to be an edge, so
    maps collapsing an edge never count.  Each edge of h is checked as soon
    as its last vertex is placed.
    """
    if h.k != g.k:
        raise ValueError(f"uniformity mismatch: {h.k} vs {g.k}")
    if h.n == 0:
        return 1
    if g.n == 0:
        return 0
    if g.n**h.n > budget:
        raise BudgetError(f"{g.n}^{h.n} maps exceed budget {budget}")
    # an edge becomes checkable at the position of its largest vertex
    ready: list[list[tuple[int, ...]]] = [[] for _ in range(h.n)]
    for e in h.edges:
        ready[max(e)].append(tuple(sorted(e)))
    gedges = g.edges
    gk = g.k
    image = [0] * h.n
    total = 0

    def extend(i: int) -> None:
        nonlocal total
        if i == h.n:
            total += 1
            return
        for c in range(g.n):
            image[i] = c
            ok = True
            for e in ready[i]:
                im = frozenset(image[v] for v in e)
                if len(im) != gk or im not in gedges:
                    ok = False
                    break
            if ok:
                extend(i + 1)

    extend(0)
    return total
