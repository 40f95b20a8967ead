"""Independent graph oracles shared by the test modules."""

import numpy as np

from radial_mm.graph import WeightedGraph


def floyd_warshall(g):
    n = g.n
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0.0)
    idx = {nid: i for i, nid in enumerate(g.node_ids)}
    for a, b, length in g.edges:
        i, j = idx[a], idx[b]
        d[i, j] = d[j, i] = min(d[i, j], length)
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i, k] + d[k, j] < d[i, j]:
                    d[i, j] = d[i, k] + d[k, j]
    return d


def random_connected_graph(rng, n, lengths):
    ids = [f"n{i}" for i in range(n)]
    edges = {}
    for i in range(1, n):
        j = int(rng.integers(0, i))
        edges[(j, i)] = lengths()
    for _ in range(int(rng.integers(0, n * (n - 1) // 2 + 1))):
        i, j = sorted(rng.choice(n, size=2, replace=False).tolist())
        edges.setdefault((i, j), lengths())
    feats = rng.integers(0, 5, size=(n, 2)).astype(float)
    return WeightedGraph(tuple(ids), feats,
                         tuple((ids[i], ids[j], l) for (i, j), l in edges.items()))
