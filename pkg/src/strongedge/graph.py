"""Simple undirected graphs, the strong-coloring "sees" relation, and generators.

Edges carry stable integer ids (their position in the input sequence); every
other module refers to edges by these ids.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

from .errors import GenerationError, InputError


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[tuple[int, int], ...], ...] = field(repr=False, compare=False)

    @property
    def m(self):
        return len(self.edges)

    @property
    def n(self):
        return self.vertex_count

    def degree(self, v):
        return len(self.adjacency[v])

    def degrees(self):
        return [len(a) for a in self.adjacency]

    def neighbors(self, v):
        return [w for w, _ in self.adjacency[v]]

    def incident_edges(self, v):
        return [e for _, e in self.adjacency[v]]

    def has_edge(self, u, v):
        return any(w == v for w, _ in self.adjacency[u])

    def edge_id(self, u, v):
        for w, e in self.adjacency[u]:
            if w == v:
                return e
        raise KeyError((u, v))

    def max_degree(self):
        return max(self.degrees(), default=0)


def build_graph(n, pairs):
    """Build a simple graph on vertices ``0..n-1``; edge ids follow input order."""
    if n < 0:
        raise InputError(f"vertex count must be non-negative, got {n}")
    adjacency = [[] for _ in range(n)]
    seen = set()
    edges = []
    for idx, pair in enumerate(pairs):
        u, v = (int(x) for x in pair)
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge {idx} ({u}, {v}) has a vertex id outside 0..{n - 1}")
        if u == v:
            raise InputError(f"edge {idx} is a loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InputError(f"edge {idx} ({u}, {v}) duplicates an earlier edge")
        seen.add(key)
        adjacency[u].append((v, idx))
        adjacency[v].append((u, idx))
        edges.append((u, v))
    return Graph(n, tuple(edges), tuple(tuple(a) for a in adjacency))


def edge_weight(g):
    """Maximum of ``deg(u) + deg(v)`` over the edges ``uv``."""
    if g.m == 0:
        raise InputError("edge weight is undefined for a graph without edges")
    return max(g.degree(u) + g.degree(v) for u, v in g.edges)


def girth(g):
    """Length of a shortest cycle, or ``None`` for a forest (BFS from every vertex)."""
    best = None
    for root in range(g.n):
        dist = {root: 0}
        parent_edge = {root: None}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for w, e in g.adjacency[u]:
                if e == parent_edge[u]:
                    continue
                if w in dist:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
                else:
                    dist[w] = dist[u] + 1
                    parent_edge[w] = e
                    queue.append(w)
    return best


def _check_edge(g, e):
    if not 0 <= e < g.m:
        raise InputError(f"edge id {e} out of range 0..{g.m - 1}")


def sees(g, e, f):
    """True iff edges ``e`` and ``f`` share an endpoint or are joined by an edge."""
    _check_edge(g, e)
    _check_edge(g, f)
    if e == f:
        raise InputError("an edge is not compared with itself")
    a, b = g.edges[e]
    c, d = g.edges[f]
    if {a, b} & {c, d}:
        return True
    return any(g.has_edge(x, y) for x in (a, b) for y in (c, d))


def seen_edges(g, e):
    """All edge ids at line-graph distance 1 or 2 from ``e``."""
    out = set()
    for x in g.edges[e]:
        for w, f in g.adjacency[x]:
            out.add(f)
            for _, h in g.adjacency[w]:
                out.add(h)
    out.discard(e)
    return out


@dataclass(frozen=True)
class ConflictGraph:
    """The sees relation restricted to ``edge_ids``; ``conflicts`` holds position pairs ``i < j``."""

    edge_ids: tuple[int, ...]
    conflicts: frozenset[tuple[int, int]]

    def __len__(self):
        return len(self.edge_ids)

    def neighbors(self):
        nbrs = [set() for _ in self.edge_ids]
        for i, j in self.conflicts:
            nbrs[i].add(j)
            nbrs[j].add(i)
        return nbrs

    def edge_pairs(self):
        """Conflicts as pairs of host edge ids (each sorted)."""
        return {tuple(sorted((self.edge_ids[i], self.edge_ids[j]))) for i, j in self.conflicts}


def conflict_graph(g, subset=None):
    """Conflict pairs among ``subset`` (default: all edges).

    With a subset, distances are measured inside the subgraph formed by those
    edges alone, not in the host graph.
    """
    if subset is None:
        ids = tuple(range(g.m))
        host = g
        local = {e: e for e in ids}
    else:
        ids = tuple(sorted(set(subset)))
        for e in ids:
            _check_edge(g, e)
        host = build_graph(g.n, [g.edges[e] for e in ids])
        local = {e: i for i, e in enumerate(ids)}
    pos = {e: i for i, e in enumerate(ids)}
    back = {v: k for k, v in local.items()}
    pairs = set()
    for e in ids:
        for h in seen_edges(host, local[e]):
            f = back[h]
            i, j = pos[e], pos[f]
            if i < j:
                pairs.add((i, j))
    return ConflictGraph(ids, frozenset(pairs))


def line_graph_distances(g, source):
    """BFS distances from edge ``source`` in the line graph (used as a cross-check for ``sees``)."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        e = queue.popleft()
        for x in g.edges[e]:
            for f in g.incident_edges(x):
                if f not in dist:
                    dist[f] = dist[e] + 1
                    queue.append(f)
    return dist


# -- generators ---------------------------------------------------------------

def gen_cnplus(n):
    """Cycle ``v_0..v_{n-1}`` with a pendant edge at every cycle vertex.

    Edge ``i`` (``0 <= i < n``) is ``v_i v_{i+1}``, so edge 0 plays the role of
    both ``e_0`` and ``e_n``; edge ``n + i`` is the pendant ``v_i u_i`` with
    ``u_i = n + i``.
    """
    if n < 3:
        raise InputError(f"C_n^+ needs n >= 3, got {n}")
    cycle = [(i, (i + 1) % n) for i in range(n)]
    pendants = [(i, n + i) for i in range(n)]
    return build_graph(2 * n, cycle + pendants)


def gen_cycle(n):
    if n < 3:
        raise InputError(f"a cycle needs n >= 3, got {n}")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def gen_path(n):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def gen_lcf(shifts, repeats):
    """Cubic Hamiltonian graph from LCF notation ``[shifts]^repeats``."""
    n = len(shifts) * repeats
    pairs = {(i, (i + 1) % n) for i in range(n)}
    pairs = {(min(u, v), max(u, v)) for u, v in pairs}
    for i in range(n):
        j = (i + shifts[i % len(shifts)]) % n
        pairs.add((min(i, j), max(i, j)))
    return build_graph(n, sorted(pairs))


def gen_petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)


def _distance_at_least(adj, u, v, limit):
    """True iff ``dist(u, v) >= limit`` in the partial graph ``adj``."""
    if limit <= 1:
        return u != v
    frontier = {u}
    seen = {u}
    for _ in range(limit - 1):
        nxt = set()
        for x in frontier:
            for w in adj[x]:
                if w == v:
                    return False
                if w not in seen:
                    seen.add(w)
                    nxt.add(w)
        if not nxt:
            break
        frontier = nxt
    return True


def gen_random_cubic(n, min_girth=3, seed=0, max_tries=10_000):
    """Seeded 3-regular simple graph with girth at least ``min_girth``.

    Pairing construction: stubs are matched one at a time and a match is
    rejected when it would create a loop, a parallel edge or a cycle shorter
    than ``min_girth``; a dead end restarts the attempt.
    """
    if n % 2 or n < 4:
        raise InputError(f"a cubic graph needs an even vertex count >= 4, got {n}")
    rng = random.Random(seed)
    for _ in range(max_tries):
        adj = [set() for _ in range(n)]
        free = {v: 3 for v in range(n)}
        edges = []
        while free:
            # most-constrained vertex first keeps dead ends rare
            u = min(free, key=lambda v: (-free[v], rng.random()))
            cands = [v for v in free if v != u and v not in adj[u]
                     and _distance_at_least(adj, u, v, min_girth - 1)]
            if not cands:
                break
            weights = [free[v] for v in cands]
            v = rng.choices(cands, weights)[0]
            adj[u].add(v)
            adj[v].add(u)
            edges.append((min(u, v), max(u, v)))
            for x in (u, v):
                free[x] -= 1
                if not free[x]:
                    del free[x]
        else:
            g = build_graph(n, sorted(edges))
            gg = girth(g)
            if gg is not None and gg >= min_girth:
                return g
    raise GenerationError(
        f"no cubic graph on {n} vertices with girth >= {min_girth} after {max_tries} attempts")


def gen_random_weight6(n, seed=0):
    """Seeded random simple graph whose edge weight is at most 6.

    Candidate pairs are scanned in random order and kept whenever every edge
    touching either endpoint still has endpoint-degree sum at most 6, so
    degree-4 vertices appear next to degree-2 neighbours.
    """
    if n < 2:
        raise InputError(f"need at least 2 vertices, got {n}")
    rng = random.Random(seed)
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    deg = [0] * n
    adj = [set() for _ in range(n)]
    edges = []
    for u, v in pairs:
        du, dv = deg[u] + 1, deg[v] + 1
        if du + dv > 6:
            continue
        if any(du + deg[w] > 6 for w in adj[u]) or any(dv + deg[w] > 6 for w in adj[v]):
            continue
        adj[u].add(v)
        adj[v].add(u)
        deg[u], deg[v] = du, dv
        edges.append((u, v))
    return build_graph(n, edges)


# -- configurations -----------------------------------------------------------

@dataclass(frozen=True)
class Configuration:
    """Edges removed together with a vertex set ``H`` and their outside context.

    ``e0`` is the conflict graph on ``E0 = E(G) - E(G - V(H))`` measured inside
    ``G[E0]``; ``host_e0`` is the same edge set with conflicts measured in the
    host, which can add pairs joined through an edge of ``G - V(H)``.
    ``external_neighbors[e]`` lists the edges of ``G - V(H)`` within distance 2
    of ``e`` in the host. When ``H`` induces a cycle whose edges plus one
    pendant per vertex form ``C_n^+``, ``cnplus_map`` sends each E0 edge to its
    ``gen_cnplus`` id and ``extra_conflicts`` lists host conflicts (as edge-id
    pairs) beyond the pure ``C_n^+`` pattern.
    """

    host: Graph
    deleted_vertices: frozenset[int]
    e0: ConflictGraph
    host_e0: ConflictGraph
    external_neighbors: dict[int, tuple[int, ...]]
    cnplus_map: dict[int, int] | None = None
    extra_conflicts: tuple[tuple[int, int], ...] = ()

    @property
    def edges(self):
        return self.e0.edge_ids

    @property
    def t(self):
        return len(self.e0.edge_ids)

    @property
    def remaining_edges(self):
        e0 = set(self.e0.edge_ids)
        return tuple(e for e in range(self.host.m) if e not in e0)

    @property
    def is_pure_cnplus(self):
        return self.cnplus_map is not None and not self.extra_conflicts


def _cycle_order(g, hv):
    """Vertices of ``hv`` in cycle order if ``G[hv]`` is a single cycle, else ``None``."""
    if len(hv) < 3:
        return None
    inner = {v: [w for w in g.neighbors(v) if w in hv] for v in hv}
    if any(len(ws) != 2 for ws in inner.values()):
        return None
    start = min(hv)
    order = [start]
    prev, cur = None, start
    while True:
        a, b = inner[cur]
        nxt = b if a == prev else a
        if nxt == start:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    return order if len(order) == len(hv) else None


def induced_config(g, h_vertices):
    hv = frozenset(int(v) for v in h_vertices)
    if not hv:
        raise InputError("H must contain at least one vertex")
    for v in hv:
        if not 0 <= v < g.n:
            raise InputError(f"vertex {v} out of range")
    e0 = [e for e, (u, v) in enumerate(g.edges) if u in hv or v in hv]
    cg = conflict_graph(g, e0)
    e0set = set(e0)
    pos = {e: i for i, e in enumerate(e0)}
    host_pairs = set()
    for e in e0:
        for f in seen_edges(g, e):
            if f in e0set and pos[e] < pos[f]:
                host_pairs.add((pos[e], pos[f]))
    host_cg = ConflictGraph(tuple(e0), frozenset(host_pairs))
    external = {e: tuple(sorted(f for f in seen_edges(g, e) if f not in e0set)) for e in e0}

    cnmap = None
    extra = ()
    order = _cycle_order(g, hv)
    if order is not None:
        n = len(order)
        cnmap = {}
        outer = set()
        for i, v in enumerate(order):
            cnmap[g.edge_id(v, order[(i + 1) % n])] = i
            pend = [e for w, e in g.adjacency[v] if w not in hv]
            if len(pend) != 1:
                cnmap = None
                break
            w = g.edges[pend[0]][0] if g.edges[pend[0]][1] == v else g.edges[pend[0]][1]
            outer.add(w)
            cnmap[pend[0]] = n + i
        if cnmap is not None and len(outer) != n:
            cnmap = None
        if cnmap is not None:
            pattern = conflict_graph(gen_cnplus(n)).edge_pairs()
            extra = tuple(sorted(
                (a, b) for a, b in host_cg.edge_pairs()
                if tuple(sorted((cnmap[a], cnmap[b]))) not in pattern))
    return Configuration(g, hv, cg, host_cg, external, cnmap, extra)


# -- text format ----------------------------------------------------------------

def format_graph(g, comment=None):
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"p {g.n} {g.m}")
    lines.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_graph(text):
    header = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        if tok[0] == "p":
            if header is not None:
                raise InputError("duplicate header", lineno)
            if len(tok) != 3:
                raise InputError("header must be 'p <n> <m>'", lineno)
            header = (_int(tok[1], lineno), _int(tok[2], lineno))
        elif tok[0] == "e":
            if header is None:
                raise InputError("edge before header", lineno)
            if len(tok) != 3:
                raise InputError("edge line must be 'e <u> <v>'", lineno)
            u, v = _int(tok[1], lineno), _int(tok[2], lineno)
            n = header[0]
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"vertex id out of range 0..{n - 1}", lineno)
            if u == v:
                raise InputError("loop edge", lineno)
            pairs.append((u, v, lineno))
        else:
            raise InputError(f"unknown record type {tok[0]!r}", lineno)
    if header is None:
        raise InputError("missing 'p <n> <m>' header")
    n, m = header
    if len(pairs) != m:
        raise InputError(f"header announces {m} edges but {len(pairs)} were given")
    seen = {}
    for u, v, lineno in pairs:
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InputError(f"duplicate edge (first on line {seen[key]})", lineno)
        seen[key] = lineno
    return build_graph(n, [(u, v) for u, v, _ in pairs])


def _int(tok, lineno):
    try:
        return int(tok)
    except ValueError:
        raise InputError(f"expected an integer, got {tok!r}", lineno) from None


def read_graph(path):
    return parse_graph(Path(path).read_text())


def write_graph(g, path, comment=None):
    Path(path).write_text(format_graph(g, comment))
