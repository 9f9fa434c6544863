import random

import networkx as nx
import pytest

from matchaug.blossom import max_cardinality_matching


def random_graph(n, p, seed):
    rng = random.Random(seed)
    adj = [[] for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < p:
                adj[a].append(b)
                adj[b].append(a)
    return adj


def check_matching(adj, mate):
    for v, w in enumerate(mate):
        if w != -1:
            assert mate[w] == v and w in adj[v]


@pytest.mark.parametrize("seed", range(150))
def test_cardinality_matches_networkx(seed):
    n = 2 + seed % 12
    adj = random_graph(n, 0.2 + (seed % 5) / 10, seed)
    mate = max_cardinality_matching(n, adj)
    check_matching(adj, mate)
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from((a, b) for a in range(n) for b in adj[a] if a < b)
    assert sum(1 for v in mate if v != -1) // 2 == len(nx.max_weight_matching(g, maxcardinality=True))


def test_odd_cycle_with_tail():
    # a pentagon with a pendant path needs a blossom shrink
    adj = [[1, 4], [0, 2], [1, 3], [2, 4, 5], [3, 0], [3, 6], [5]]
    mate = max_cardinality_matching(7, adj)
    check_matching(adj, mate)
    assert sum(1 for v in mate if v != -1) == 6


def test_rejects_broken_start():
    with pytest.raises(ValueError):
        max_cardinality_matching(3, [[1], [0, 2], [1]], [1, -1, -1])
