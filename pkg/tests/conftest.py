import numpy as np
import pytest

from inducedc4.graph import Graph
from inducedc4.orderings import Cluster, ConciseOrdering, OrderingTable, detect_pair
from inducedc4.rng import rand_below, substream


def graph_from_bits(n: int, bits: int) -> Graph:
    from itertools import combinations

    pairs = list(combinations(range(n), 2))
    edges = [pairs[i] for i in range(len(pairs)) if (bits >> i) & 1]
    return Graph.from_edges(n, edges)


def make_table(g: Graph, clusters):
    """Orderings for all pairs; None if some pair spans a 4-cycle."""
    table = OrderingTable(g, clusters)
    for i in range(len(clusters)):
        for j in range(i + 1, len(clusters)):
            a, b = clusters[i], clusters[j]
            if a.size > 1 and b.size > 1:
                got = detect_pair(g, a, b)
                if not isinstance(got, ConciseOrdering):
                    return None
                table.add(got)
    return table


def random_ordered_clusters(seed: int, count: int, max_size: int = 6):
    """Disjoint cliques with seeded nested cross edges: every pair ordered."""
    s = substream(seed, 21)
    sizes = [1 + rand_below(s, i, max_size) for i in range(count)]
    n = sum(sizes)
    bounds = np.cumsum([0] + sizes)
    verts = [np.arange(bounds[i], bounds[i + 1]) for i in range(count)]
    dense = np.zeros((n, n), dtype=bool)
    for vs in verts:
        dense[np.ix_(vs, vs)] = True
    counter = 1000
    for i in range(count):
        for j in range(i + 1, count):
            si, sj = sizes[i], sizes[j]
            levels = np.array([rand_below(s, counter + k, si + 1) for k in range(sj)])
            counter += sj
            thr = np.array([rand_below(s, counter + k, si + 1) + 1 for k in range(si)])
            counter += si
            cross = thr[:, None] <= levels[None, :]
            dense[np.ix_(verts[i], verts[j])] = cross
            dense[np.ix_(verts[j], verts[i])] = cross.T
    np.fill_diagonal(dense, False)
    return Graph.from_dense(dense), [Cluster(i, 0, verts[i]) for i in range(count)]


@pytest.fixture
def square():
    """The 4-cycle graph itself."""
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.fixture
def k4():
    return Graph.from_edges(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
