import itertools

import networkx as nx
import pytest

from strongedge.graph import build_graph


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    for idx, (u, v) in enumerate(g.edges):
        h.add_edge(u, v, idx=idx)
    return h


def brute_conflict_pairs(g):
    """Edge-id pairs at line-graph distance <= 2, from networkx's line graph."""
    h = to_nx(g)
    lg = nx.line_graph(h)
    ident = {tuple(sorted(e)): d["idx"] for *e, d in h.edges(data=True)}
    pairs = set()
    for a in lg.nodes:
        dist = nx.single_source_shortest_path_length(lg, a, cutoff=2)
        for b, d in dist.items():
            if 0 < d <= 2:
                i, j = ident[tuple(sorted(a))], ident[tuple(sorted(b))]
                pairs.add((min(i, j), max(i, j)))
    return pairs


def brute_strong_colorable(g, palette_by_edge):
    """Exhaustive search over every assignment; returns True/False."""
    pairs = brute_conflict_pairs(g)
    for combo in itertools.product(*palette_by_edge):
        if all(combo[i] != combo[j] for i, j in pairs):
            return True
    return False


def random_graph(rng, n, m):
    pairs = list(itertools.combinations(range(n), 2))
    rng.shuffle(pairs)
    return build_graph(n, pairs[:m])


@pytest.fixture
def c6():
    return build_graph(6, [(i, (i + 1) % 6) for i in range(6)])
