"""Strong edge colorings: verification, exact backtracking search, and partial extensions.

Colors are positive integers; the uniform palette for ``k`` colors is ``1..k``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

from .errors import InputError
from .graph import conflict_graph


@dataclass(frozen=True)
class ListAssignment:
    lists: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "lists", tuple(frozenset(int(c) for c in l) for l in self.lists))
        if any(c < 0 for l in self.lists for c in l):
            raise InputError("colors must be non-negative integers")

    @classmethod
    def uniform(cls, m, k):
        return cls(tuple(frozenset(range(1, k + 1)) for _ in range(m)))

    @classmethod
    def random(cls, m, size, palette, rng):
        """Each edge gets ``size`` distinct colors drawn from ``1..palette``."""
        if size > palette:
            raise InputError(f"cannot draw {size} distinct colors from a palette of {palette}")
        return cls(tuple(frozenset(rng.sample(range(1, palette + 1), size)) for _ in range(m)))

    def __len__(self):
        return len(self.lists)

    def __getitem__(self, e):
        return self.lists[e]


@dataclass(frozen=True)
class StrongColoring:
    """Per-edge color, ``None`` for uncolored edges."""

    colors: tuple[int | None, ...]

    def __len__(self):
        return len(self.colors)

    def __getitem__(self, e):
        return self.colors[e]

    @property
    def is_total(self):
        return all(c is not None for c in self.colors)

    def colored_edges(self):
        return [e for e, c in enumerate(self.colors) if c is not None]

    def num_colors(self):
        return len({c for c in self.colors if c is not None})


class Violation(NamedTuple):
    kind: str  # "conflict" or "list"
    edges: tuple[int, ...]
    color: int


def verify(g, c, l=None):
    """All violated constraints of a total coloring; empty iff ``c`` is a valid strong (L-)coloring."""
    if len(c) != g.m or not c.is_total:
        raise InputError("verify needs a coloring of every edge")
    if l is not None and len(l) != g.m:
        raise InputError("list assignment does not cover the edge set")
    out = []
    cg = conflict_graph(g)
    for i, j in sorted(cg.conflicts):
        if c[i] == c[j]:
            out.append(Violation("conflict", (i, j), c[i]))
    if l is not None:
        for e in range(g.m):
            if c[e] not in l[e]:
                out.append(Violation("list", (e,), c[e]))
    return out


def _search(nbrs, domains, palette_size=None):
    """Complete backtracking with forward checking and MRV ordering (ties by index).

    With ``palette_size`` set, all domains are ``1..palette_size`` and colors
    are interchangeable, so a new color is only ever the smallest unused one.
    Returns a list of colors or ``None``.
    """
    n = len(domains)
    dom = [set(d) for d in domains]
    color = [None] * n
    if any(not d for d in dom):
        return None if n else []

    def pick():
        best = None
        for v in range(n):
            if color[v] is None and (best is None or len(dom[v]) < len(dom[best])):
                best = v
                if len(dom[v]) <= 1:
                    break
        return best

    def rec(used):
        v = pick()
        if v is None:
            return True
        options = sorted(dom[v])
        if palette_size is not None:
            options = [c for c in options if c <= used + 1]
        for c in options:
            color[v] = c
            removed = []
            ok = True
            for u in nbrs[v]:
                if color[u] is None and c in dom[u]:
                    dom[u].discard(c)
                    removed.append(u)
                    if not dom[u]:
                        ok = False
                        break
            if ok and rec(max(used, c)):
                return True
            for u in removed:
                dom[u].add(c)
            color[v] = None
        return False

    return list(color) if rec(0) else None


def solve_strong_k(g, k):
    """A strong coloring with colors from ``1..k``, or ``None`` if there is none."""
    if k < 0:
        raise InputError("k must be non-negative")
    if g.m == 0:
        return StrongColoring(())
    nbrs = conflict_graph(g).neighbors()
    sol = _search(nbrs, [range(1, k + 1)] * g.m, palette_size=k)
    return None if sol is None else StrongColoring(tuple(sol))


def strong_chromatic_index(g):
    """Exact strong chromatic index, starting from the maximum degree and counting up."""
    if g.m == 0:
        return 0
    k = g.max_degree()
    while solve_strong_k(g, k) is None:
        k += 1
    return k


def solve_strong_list(g, l):
    """A strong coloring with ``c(e)`` in ``L(e)`` for every edge, or ``None``."""
    if len(l) != g.m:
        raise InputError(f"list assignment covers {len(l)} edges, graph has {g.m}")
    nbrs = conflict_graph(g).neighbors()
    sol = _search(nbrs, l.lists)
    return None if sol is None else StrongColoring(tuple(sol))


# -- partial colorings around a configuration --------------------------------------

@dataclass(frozen=True)
class AvailabilityReport:
    """Per E0 edge: forbidden colors ``F(e)``, surviving list ``S(e)``, its size and the ``|L(e)| - |F(e)|`` bound."""

    forbidden: dict[int, frozenset[int]]
    available: dict[int, frozenset[int]]
    size: dict[int, int]
    bound: dict[int, int]


def _check_partial(g, cfg, partial):
    if len(partial) != g.m:
        raise InputError("partial coloring does not match the host edge count")
    e0 = set(cfg.edges)
    for e in range(g.m):
        if e in e0 and partial[e] is not None:
            raise InputError(f"partial coloring colors edge {e} of E0")
        if e not in e0 and partial[e] is None:
            raise InputError(f"partial coloring leaves edge {e} of G - V(H) uncolored")


def availability(g, cfg, partial, l):
    _check_partial(g, cfg, partial)
    forbidden, available, size, bound = {}, {}, {}, {}
    for e in cfg.edges:
        f = frozenset(partial[x] for x in cfg.external_neighbors[e])
        s = frozenset(l[e] - f)
        forbidden[e] = f
        available[e] = s
        size[e] = len(s)
        bound[e] = len(l[e]) - len(f)
    return AvailabilityReport(forbidden, available, size, bound)


def extend_partial(g, cfg, partial, l):
    """Complete ``partial`` (a coloring of ``G - V(H)``) on E0, or ``None``."""
    report = availability(g, cfg, partial, l)
    nbrs = cfg.host_e0.neighbors()
    sol = _search(nbrs, [report.available[e] for e in cfg.edges])
    if sol is None:
        return None
    colors = list(partial.colors)
    for e, c in zip(cfg.edges, sol):
        colors[e] = c
    return StrongColoring(tuple(colors))


def color_outside(g, cfg, l):
    """A strong L-coloring of ``G - V(H)`` (conflicts measured in that subgraph), E0 left uncolored."""
    rest = cfg.remaining_edges
    sub = conflict_graph(g, rest)
    sol = _search(sub.neighbors(), [l[e] for e in rest])
    if sol is None:
        return None
    colors = [None] * g.m
    for e, c in zip(rest, sol):
        colors[e] = c
    return StrongColoring(tuple(colors))


# -- text formats -----------------------------------------------------------------

def parse_lists(text, m=None):
    """``l <edge_id> <c1> <c2> ...`` lines; each edge id exactly once."""
    found = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        if tok[0] != "l" or len(tok) < 2:
            raise InputError("expected 'l <edge_id> <c1> <c2> ...'", lineno)
        try:
            vals = [int(t) for t in tok[1:]]
        except ValueError:
            raise InputError("non-integer token", lineno) from None
        e, cols = vals[0], vals[1:]
        if e < 0 or (m is not None and e >= m):
            raise InputError(f"edge id {e} out of range", lineno)
        if e in found:
            raise InputError(f"edge {e} listed twice", lineno)
        if len(set(cols)) != len(cols):
            raise InputError(f"list of edge {e} repeats a color", lineno)
        if any(c < 0 for c in cols):
            raise InputError("colors must be non-negative", lineno)
        found[e] = cols
    size = m if m is not None else len(found)
    missing = [e for e in range(size) if e not in found]
    if missing or len(found) != size:
        raise InputError(f"no list for edge(s) {missing[:5]}")
    return ListAssignment(tuple(found[e] for e in range(size)))


def format_lists(l):
    return "".join(f"l {e} {' '.join(map(str, sorted(s)))}\n" for e, s in enumerate(l.lists))


def format_coloring(c):
    return "".join(f"c {e} {col}\n" for e, col in enumerate(c.colors) if col is not None)


def parse_coloring(text, m):
    colors = [None] * m
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        if tok[0] != "c" or len(tok) != 3:
            raise InputError("expected 'c <edge_id> <color>'", lineno)
        try:
            e, col = int(tok[1]), int(tok[2])
        except ValueError:
            raise InputError("non-integer token", lineno) from None
        if not 0 <= e < m:
            raise InputError(f"edge id {e} out of range", lineno)
        if colors[e] is not None:
            raise InputError(f"edge {e} colored twice", lineno)
        colors[e] = col
    return StrongColoring(tuple(colors))


def read_lists(path, m=None):
    return parse_lists(Path(path).read_text(), m)


def write_lists(l, path):
    Path(path).write_text(format_lists(l))


def random_lists(g, size, palette, seed):
    return ListAssignment.random(g.m, size, palette, random.Random(seed))
