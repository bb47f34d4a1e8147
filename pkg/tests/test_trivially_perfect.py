import itertools
import random

import pytest

from defcol import (
    ContractError,
    Graph,
    Instance,
    NotTriviallyPerfect,
    brute_force_decide,
    build_rooted_forest,
    greedy_tp_color,
    sort_coloring,
    verify_coloring,
)
from defcol.generators import comparability_graph, random_forest_parents, random_trivially_perfect
from defcol.trivially_perfect import is_sorted_coloring, iter_sort_steps, solve_trivially_perfect

STAR = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])


def closed_nbhd(g, v):
    return g.adj[v] | {v}


# ---------------------------------------------------------------- recognition


def test_star_forest():
    f = build_rooted_forest(STAR)
    assert f.roots == (0,)
    assert f.children[0] == (1, 2, 3)
    assert f.levels == ((1, 2, 3), (0,))


def test_p4_is_rejected():
    with pytest.raises(NotTriviallyPerfect) as info:
        build_rooted_forest(Graph.path(4))
    assert sorted(info.value.witness) == [0, 1, 2, 3]


def test_c4_is_rejected():
    with pytest.raises(NotTriviallyPerfect):
        build_rooted_forest(Graph.cycle(4))


def test_two_edges_give_two_roots():
    f = build_rooted_forest(Graph.from_edges(4, [(0, 1), (2, 3)]))
    assert f.roots == (0, 2)


def test_smallest_universal_vertex_is_root():
    f = build_rooted_forest(Graph.complete(3))
    assert f.roots == (0,) and f.parent == (None, 0, 1)


@pytest.mark.parametrize("seed", range(100))
def test_forest_structure(seed):
    rng = random.Random(seed)
    g = random_trivially_perfect(rng.randint(1, 9), rng)
    f = build_rooted_forest(g)
    # comparability closure reproduces the input exactly
    assert f.closure_edges() == g.edges()
    assert sorted(v for lv in f.levels for v in lv) == list(range(g.n))
    for lv in f.levels:
        assert g.is_independent(lv)
    # ancestors have nested closed neighborhoods
    for v in range(g.n):
        for u in f.ancestors(v):
            assert closed_nbhd(g, v) <= closed_nbhd(g, u)


# --------------------------------------------------------------------- greedy


def test_greedy_examples():
    f = build_rooted_forest(STAR)
    assert greedy_tp_color(f, 2, 0) == (2, 1, 1, 1)
    assert greedy_tp_color(f, 1, 3) == (1, 1, 1, 1)
    assert greedy_tp_color(f, 1, 2) is None


@pytest.mark.parametrize("seed", range(120))
def test_greedy_matches_oracle(seed):
    rng = random.Random(seed)
    g = comparability_graph(random_forest_parents(rng.randint(1, 7), rng))
    f = build_rooted_forest(g)
    for chi in (1, 2, 3):
        for delta in (0, 1, 2, 3):
            col = greedy_tp_color(f, chi, delta)
            want = brute_force_decide(Instance(g, chi, delta)) is not None
            assert (col is not None) == want
            if col is not None:
                assert verify_coloring(Instance(g, chi, delta), col).valid
                assert is_sorted_coloring(f, col)


def _greedy_partial(f, chi, delta):
    """Greedy colors per vertex, None for vertices left uncolored."""
    cap = delta + 1
    color = [None] * len(f.parent)
    for lv in f.levels:
        for u in lv:
            counts = [0] * chi
            for w in f.descendants(u):
                counts[color[w] - 1] += 1
            pick = next((j for j in range(chi) if counts[j] < cap), None)
            if pick is None:
                return color
            color[u] = pick + 1
    return color


@pytest.mark.parametrize("seed", range(40))
def test_optimal_color_floor(seed):
    rng = random.Random(500 + seed)
    g = comparability_graph(random_forest_parents(rng.randint(1, 6), rng))
    f = build_rooted_forest(g)
    chi, delta = rng.randint(1, 3), rng.randint(0, 2)
    inst = Instance(g, chi, delta)
    greedy = _greedy_partial(f, chi, delta)
    sorted_valid = [c for c in itertools.product(range(1, chi + 1), repeat=g.n)
                    if is_sorted_coloring(f, c) and verify_coloring(inst, c).valid]
    for u, gc in enumerate(greedy):
        if gc is None:
            continue
        for c in sorted_valid:
            assert c[u] >= gc


# ------------------------------------------------------------------- sorting


def test_sort_fixed_point():
    f = build_rooted_forest(STAR)
    assert sort_coloring(f, (2, 1, 1, 1), 2, 0) == (2, 1, 1, 1)


def test_sort_single_edge():
    f = build_rooted_forest(Graph.complete(2))
    assert f.roots == (0,)
    assert sort_coloring(f, (1, 2), 2, 0) == (2, 1)


def test_sort_star():
    f = build_rooted_forest(STAR)
    out = sort_coloring(f, (1, 1, 2, 2), 2, 1)
    assert is_sorted_coloring(f, out)
    assert verify_coloring(Instance(STAR, 2, 1), out).valid
    assert out[0] >= max(out[1:])


def test_sort_rejects_invalid_input():
    f = build_rooted_forest(STAR)
    # root sharing its color with two leaves has deficiency 2 > 1
    with pytest.raises(ContractError):
        sort_coloring(f, (1, 1, 1, 2), 2, 1)


@pytest.mark.parametrize("seed", range(60))
def test_sort_steps_keep_validity(seed):
    rng = random.Random(900 + seed)
    g = comparability_graph(random_forest_parents(rng.randint(2, 7), rng))
    f = build_rooted_forest(g)
    chi, delta = rng.randint(2, 3), rng.randint(0, 2)
    inst = Instance(g, chi, delta)
    valid = [c for c in itertools.product(range(1, chi + 1), repeat=g.n) if verify_coloring(inst, c).valid]
    for start in rng.sample(valid, min(10, len(valid))):
        ancestors_used = []
        last = start
        for u, v, col in iter_sort_steps(f, start, chi, delta):
            assert verify_coloring(inst, col).valid
            assert u in f.ancestors(v)
            ancestors_used.append(u)
            last = col
        assert len(ancestors_used) == len(set(ancestors_used)) <= g.n
        assert is_sorted_coloring(f, last)
        assert sort_coloring(f, start, chi, delta) == last


def test_solve_wrapper():
    assert solve_trivially_perfect(Instance(STAR, 2, 0)) == (2, 1, 1, 1)
