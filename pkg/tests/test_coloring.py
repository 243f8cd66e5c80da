import itertools
import random

import networkx as nx
import pytest

from strongedge.coloring import (
    ListAssignment,
    StrongColoring,
    availability,
    color_outside,
    extend_partial,
    format_coloring,
    format_lists,
    parse_coloring,
    parse_lists,
    solve_strong_k,
    solve_strong_list,
    strong_chromatic_index,
    verify,
)
from strongedge.errors import InputError
from strongedge.graph import (
    build_graph,
    gen_cycle,
    gen_lcf,
    gen_path,
    gen_random_cubic,
    girth,
    induced_config,
)

from conftest import brute_strong_colorable, random_graph, to_nx


def brute_index(g):
    k = 0
    while not brute_strong_colorable(g, [range(1, k + 1)] * g.m):
        k += 1
    return k


def test_verify_examples(c6):
    p3 = gen_path(3)
    assert len(verify(p3, StrongColoring((1, 1)))) == 1
    assert verify(c6, StrongColoring((1, 2, 3, 1, 2, 3))) == []
    single = build_graph(2, [(0, 1)])
    bad = verify(single, StrongColoring((7,)), ListAssignment(({1, 2},)))
    assert [v.kind for v in bad] == ["list"]
    with pytest.raises(InputError):
        verify(p3, StrongColoring((1, None)))


def test_solve_strong_k_examples(c6):
    sol = solve_strong_k(c6, 3)
    assert sol is not None and verify(c6, sol) == []
    assert solve_strong_k(gen_cycle(5), 4) is None
    assert solve_strong_k(build_graph(0, []), 0) == StrongColoring(())


def test_index_examples_against_brute_force():
    for n, want in ((5, 5), (6, 3), (7, 4)):
        g = gen_cycle(n)
        assert brute_index(g) == want
        assert strong_chromatic_index(g) == want


def test_solve_strong_list_examples():
    single = build_graph(2, [(0, 1)])
    assert solve_strong_list(single, ListAssignment(({7},))).colors == (7,)
    p3 = gen_path(3)
    sol = solve_strong_list(p3, ListAssignment(({1, 2}, {1, 2})))
    assert sorted(sol.colors) == [1, 2]
    star = build_graph(4, [(0, 1), (0, 2), (0, 3)])
    lists = ListAssignment(({1, 2},) * 3)
    assert not brute_strong_colorable(star, lists.lists)
    assert solve_strong_list(star, lists) is None
    with pytest.raises(InputError):
        solve_strong_list(p3, ListAssignment(({1},)))


def test_solver_outputs_verify():
    rng = random.Random(2)
    for _ in range(40):
        g = random_graph(rng, rng.randint(3, 9), rng.randint(1, 14))
        lists = ListAssignment.random(g.m, 4, 6, rng)
        sol = solve_strong_list(g, lists)
        if sol is not None:
            assert verify(g, sol, lists) == []
        assert (sol is not None) == brute_strong_colorable(g, lists.lists) if g.m <= 8 else True
        k = strong_chromatic_index(g)
        assert verify(g, solve_strong_k(g, k)) == []


def test_monotone_under_subgraphs():
    rng = random.Random(4)
    for _ in range(25):
        g = random_graph(rng, rng.randint(4, 9), rng.randint(2, 13))
        keep = [e for e in g.edges if rng.random() < 0.7]
        h = build_graph(g.n, keep)
        assert strong_chromatic_index(h) <= strong_chromatic_index(g)


def test_list_uniform_consistency():
    rng = random.Random(6)
    for _ in range(40):
        g = random_graph(rng, rng.randint(3, 8), rng.randint(1, 12))
        for k in range(0, 6):
            a = solve_strong_k(g, k) is not None
            b = solve_strong_list(g, ListAssignment.uniform(g.m, k)) is not None
            assert a == b


def _cycle_and_pendants(cfg):
    n = len(cfg.deleted_vertices)
    cyc = [e for e, i in cfg.cnplus_map.items() if i < n]
    pend = [e for e, i in cfg.cnplus_map.items() if i >= n]
    return cyc, pend


def _shortest_cycle(g):
    h = to_nx(g)
    return min(nx.minimum_cycle_basis(h), key=len)


def test_availability_bounds_seven_cycle():
    g = gen_lcf([12, 7, -7], 8)   # McGee graph, cubic, girth 7
    cfg = induced_config(g, _shortest_cycle(g))
    cyc, pend = _cycle_and_pendants(cfg)
    for seed in range(10):
        lists = ListAssignment.random(g.m, 10, 30, random.Random(seed))
        partial = color_outside(g, cfg, lists)
        rep = availability(g, cfg, partial, lists)
        assert all(rep.size[e] >= 6 for e in cyc)
        assert all(rep.size[e] >= 4 for e in pend)
        for e in cfg.edges:
            assert not rep.available[e] & rep.forbidden[e]
            assert rep.size[e] == len(lists[e]) - len(rep.forbidden[e] & lists[e])
            assert rep.size[e] >= rep.bound[e]


def test_availability_six_cycle_in_heawood():
    g = gen_lcf([5, -5], 7)
    cfg = induced_config(g, _shortest_cycle(g))
    cyc, _ = _cycle_and_pendants(cfg)
    for seed in range(10):
        lists = ListAssignment.random(g.m, 10, 30, random.Random(seed))
        partial = color_outside(g, cfg, lists)
        rep = availability(g, cfg, partial, lists)
        assert all(len(rep.forbidden[e]) <= 4 for e in cyc)


def test_availability_no_external(c6):
    cfg = induced_config(c6, range(6))
    lists = ListAssignment.uniform(6, 3)
    rep = availability(c6, cfg, StrongColoring((None,) * 6), lists)
    assert all(rep.forbidden[e] == frozenset() and rep.size[e] == 3 for e in range(6))


def test_availability_rejects_bad_partial(c6):
    cfg = induced_config(c6, [0])
    lists = ListAssignment.uniform(6, 3)
    with pytest.raises(InputError):
        availability(c6, cfg, StrongColoring((1,) + (None,) * 5), lists)


def test_extend_partial_examples():
    single = build_graph(2, [(0, 1)])
    cfg = induced_config(single, [0])
    ext = extend_partial(single, cfg, StrongColoring((None,)), ListAssignment(({3},)))
    assert ext.colors == (3,)

    p3 = gen_path(3)
    cfg = induced_config(p3, [1])
    assert extend_partial(p3, cfg, StrongColoring((None, None)), ListAssignment(({1}, {1}))) is None


def test_extend_partial_on_girth6_cubic():
    found = 0
    for seed in range(8):
        g = gen_random_cubic(20, 6, seed)
        assert girth(g) >= 6
        cfg = induced_config(g, _shortest_cycle(g))
        lists = ListAssignment.random(g.m, 10, 30, random.Random(100 + seed))
        partial = color_outside(g, cfg, lists)
        assert partial is not None
        ext = extend_partial(g, cfg, partial, lists)
        assert ext is not None
        assert verify(g, ext, lists) == []
        assert all(ext[e] == partial[e] for e in cfg.remaining_edges)
        found += 1
    assert found == 8


def test_list_and_coloring_formats_round_trip():
    g = gen_random_cubic(10, 3, 1)
    lists = ListAssignment.random(g.m, 10, 30, random.Random(1))
    assert parse_lists(format_lists(lists), g.m) == lists
    sol = solve_strong_list(g, lists)
    assert parse_coloring(format_coloring(sol), g.m) == sol


@pytest.mark.parametrize("text,line", [
    ("l 0 1 2\nl 0 3\n", 2),
    ("l 0 1 1\n", 1),
    ("l 0 x\n", 1),
    ("q 0 1\n", 1),
    ("l 5 1\n", 1),
])
def test_list_parse_errors(text, line):
    with pytest.raises(InputError) as exc:
        parse_lists(text, 2)
    assert exc.value.line == line


def test_list_parse_missing_edge():
    with pytest.raises(InputError):
        parse_lists("l 0 1 2\n", 2)


def test_completeness_small_corpus():
    rng = random.Random(12)
    for _ in range(60):
        g = random_graph(rng, rng.randint(2, 7), rng.randint(0, 7))
        for k in range(0, 5):
            want = brute_strong_colorable(g, [range(1, k + 1)] * g.m)
            assert (solve_strong_k(g, k) is not None) == want


def test_exhaustive_assignment_count_matches():
    # sanity check of the oracle itself on C_5: all 5 edges pairwise see each other
    g = gen_cycle(5)
    valid = sum(
        1 for combo in itertools.product(range(5), repeat=5) if len(set(combo)) == 5)
    assert valid == 120
    assert brute_strong_colorable(g, [range(5)] * 5)
