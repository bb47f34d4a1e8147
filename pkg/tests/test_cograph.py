import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from defcol import (
    ContractError,
    Cotree,
    Graph,
    Instance,
    NotCograph,
    ParseError,
    brute_force_decide,
    build_cotree,
    eval_cotree,
    omega_cotree,
    parse_cotree,
    solve_cograph,
    solve_few_colors,
    solve_small_deficiency,
    verify_coloring,
)
from defcol.cograph import (
    JOIN,
    LEAF,
    UNION,
    TypeMergeGraph,
    _class_type,
    binarize,
    choose_cograph_engine,
    combine_few_colors,
    combine_small_deficiency,
    coloring_signature,
    coloring_type_vector,
    few_colors_signatures,
    format_cotree,
    merge_types,
    small_deficiency_signatures,
    type_grid,
)
from defcol.generators import random_cotree

from conftest import max_clique, to_nx

import networkx as nx

P4 = Graph.path(4)
LEAF_SIG = (((1, 0), 1),)


def leaf(v):
    return Cotree.leaf(v)


# ------------------------------------------------------------------- cotrees


def test_cotree_c4():
    t = build_cotree(Graph.cycle(4))
    assert t.kind == JOIN and len(t.children) == 2
    assert all(c.kind == UNION and len(c.children) == 2 for c in t.children)
    assert eval_cotree(t) == Graph.cycle(4)


def test_cotree_rejects_p4_with_witness():
    with pytest.raises(NotCograph) as info:
        build_cotree(P4)
    a, b, c, d = info.value.witness
    assert sorted((a, b, c, d)) == [0, 1, 2, 3]
    assert P4.has_edge(a, b) and P4.has_edge(b, c) and P4.has_edge(c, d)
    assert not (P4.has_edge(a, c) or P4.has_edge(b, d) or P4.has_edge(a, d))


def test_cotree_single_vertex():
    assert build_cotree(Graph(1, (frozenset(),))) == leaf(0)


def test_cotree_empty_graph_is_contract_error():
    with pytest.raises(ContractError):
        build_cotree(Graph(0, ()))


def test_eval_examples():
    assert eval_cotree(leaf(0)).n == 1
    assert eval_cotree(Cotree.join(leaf(0), leaf(1))) == Graph.complete(2)
    assert eval_cotree(Cotree.union(leaf(0), leaf(1))).m == 0


def test_eval_requires_exact_ids():
    with pytest.raises(ContractError):
        eval_cotree(Cotree.join(leaf(0), leaf(2)))


def test_omega_examples():
    assert omega_cotree(leaf(0)) == 1
    assert omega_cotree(Cotree.join(leaf(0), leaf(1))) == 2
    assert omega_cotree(build_cotree(Graph.cycle(4))) == 2


@pytest.mark.parametrize("seed", range(40))
def test_omega_matches_max_clique(seed):
    t = random_cotree(1 + seed % 8, seed)
    assert omega_cotree(t) == max_clique(eval_cotree(t))


def test_sexpr_round_trip():
    text = "(J (U v0 v1) (U v2 v3))"
    t = parse_cotree(text)
    assert format_cotree(t) == text and str(t) == text
    assert eval_cotree(t).edges() == [(0, 2), (0, 3), (1, 2), (1, 3)]


@pytest.mark.parametrize("text", ["(J v0)", "(X v0 v1)", "(J v0 v1", "(J v0 v1) v2", "w1", ""])
def test_sexpr_errors(text):
    with pytest.raises(ParseError):
        parse_cotree(text)


def test_binarize_preserves_graph():
    t = Cotree.join(leaf(0), leaf(1), Cotree.union(leaf(2), leaf(3), leaf(4)))
    b = binarize(t)
    assert eval_cotree(b) == eval_cotree(t)
    stack = [b]
    while stack:
        x = stack.pop()
        assert x.kind == LEAF or len(x.children) == 2
        stack.extend(x.children)


@pytest.mark.parametrize("seed", range(60))
def test_round_trip_random(seed):
    g = eval_cotree(random_cotree(1 + seed % 7, seed))
    assert eval_cotree(build_cotree(g)) == g


def test_recognition_agrees_with_p4_freeness():
    # a graph is a cograph iff it has no induced P4; compare on all graphs n <= 5
    from defcol.generators import all_graphs
    for n in range(1, 6):
        for g in all_graphs(n):
            has_p4 = any(
                nx.is_isomorphic(to_nx(g).subgraph(q), to_nx(P4))
                for q in itertools.combinations(range(n), 4)
            )
            try:
                build_cotree(g)
                assert not has_p4
            except NotCograph:
                assert has_p4


# --------------------------------------------------------------- class types


def test_type_grid_size():
    for delta in range(5):
        assert len(type_grid(delta)) == (delta + 1) ** 2
        assert len(type_grid(delta, allow_empty=True)) == (delta + 1) ** 2 + 1
        assert all(d <= s - 1 for s, d in type_grid(delta, reachable=True) if s <= delta)


def test_merge_types_examples():
    assert merge_types((1, 0), (1, 0), JOIN, 1) == (2, 1)
    assert merge_types((2, 0), (1, 1), JOIN, 1) is None
    assert merge_types((2, 1), (2, 0), UNION, 1) == (2, 1)


@st.composite
def split_cographs(draw):
    """A cograph G = L op R with a random class on each side."""
    n1 = draw(st.integers(1, 4))
    n2 = draw(st.integers(1, 4))
    seed = draw(st.integers(0, 10 ** 6))
    kind = draw(st.sampled_from((UNION, JOIN)))
    left = random_cotree(n1, seed)
    right = random_cotree(n2, seed + 1)

    def shift(t, k):
        if t.kind == LEAF:
            return leaf(t.vertex + k)
        return Cotree(t.kind, tuple(shift(c, k) for c in t.children))

    g = eval_cotree(Cotree(kind, (left, shift(right, n1))))
    A = draw(st.sets(st.integers(0, n1 - 1), min_size=1))
    B = draw(st.sets(st.integers(n1, n1 + n2 - 1), min_size=1))
    return g, kind, sorted(A), sorted(B)


@settings(max_examples=300, deadline=None)
@given(split_cographs(), st.integers(0, 3))
def test_merge_rule_matches_recomputed_type(case, delta):
    g, kind, A, B = case
    tA, tB = _class_type(g, A, delta), _class_type(g, B, delta)
    if tA[1] > delta or tB[1] > delta:
        return
    exact = _class_type(g, A + B, delta)
    merged = merge_types(tA, tB, kind, delta)
    if merged is None:
        assert kind == JOIN and exact[1] > delta
    else:
        assert merged == exact


# ------------------------------------------------------------- combine steps


def test_combine_small_examples():
    assert combine_small_deficiency({LEAF_SIG}, {LEAF_SIG}, JOIN, 2, 1) == {
        (((1, 0), 2),), (((2, 1), 1),),
    }
    assert combine_small_deficiency({LEAF_SIG}, {LEAF_SIG}, UNION, 1, 1) == {(((2, 0), 1),)}
    assert combine_small_deficiency(set(), {LEAF_SIG}, UNION, 2, 1) == set()


def test_type_merge_graph_capacity():
    s1 = (((1, 0), 2), ((2, 1), 1))
    s2 = (((1, 0), 3),)
    tmg = TypeMergeGraph.build(s1, s2, JOIN, 2)
    seen = 0
    for w in tmg.matchings():
        seen += 1
        for t, cap in tmg.left.items():
            assert sum(x for (a, _, _), x in zip(tmg.edges, w) if a == t) <= cap
        for t, cap in tmg.right.items():
            assert sum(x for (_, b, _), x in zip(tmg.edges, w) if b == t) <= cap
        assert sum(k for _, k in tmg.signature(w)) == 6 - sum(w)
    assert seen > 1


def test_combine_few_examples():
    assert combine_few_colors(((1, 0),), ((1, 0),), JOIN, 1) == ((2, 1),)
    assert combine_few_colors(((2, 1),), ((1, 0),), JOIN, 1) is None
    assert combine_few_colors(((1, 0), (0, 0)), ((0, 0), (1, 0)), UNION, 0) == ((1, 0), (1, 0))
    with pytest.raises(ContractError):
        combine_few_colors(((1, 0),), ((1, 0), (0, 0)), UNION, 0)


# ------------------------------------------------------------------- solvers


def k_join(k):
    return Cotree.join(*(leaf(i) for i in range(k)))


def test_small_deficiency_examples():
    c4 = build_cotree(Graph.cycle(4))
    assert solve_small_deficiency(c4, 1, 2) == (1, 1, 1, 1)
    assert solve_small_deficiency(c4, 1, 1) is None
    col = solve_small_deficiency(k_join(4), 2, 1)
    assert sorted(col.count(c) for c in (1, 2)) == [2, 2]


def test_few_colors_examples():
    k2 = Cotree.join(leaf(0), leaf(1))
    col = solve_few_colors(k2, 2, 0)
    assert col is not None and col[0] != col[1]
    assert solve_few_colors(k2, 1, 0) is None
    c4 = build_cotree(Graph.cycle(4))
    assert verify_coloring(Instance(Graph.cycle(4), 2, 0), solve_few_colors(c4, 2, 0)).valid


def test_dispatcher_examples():
    from defcol.generators import random_cograph
    g6 = random_cograph(6, seed=3)
    inst = Instance(g6, 3, 2)
    assert choose_cograph_engine(6, 3, 2) == "shortcut"
    col = solve_cograph(inst)
    assert col == tuple((i % 3) + 1 for i in range(6))
    assert choose_cograph_engine(4, 2, 1) == "small-deficiency"
    assert solve_cograph(Instance(Graph.cycle(4), 2, 1)) is not None
    assert solve_cograph(Instance(Graph.complete(8), 2, 2)) is None


def test_dispatcher_threshold():
    # delta ** 5 <= n goes to small-deficiency, ties included
    assert choose_cograph_engine(32, 1, 2) == "small-deficiency"
    assert choose_cograph_engine(31, 1, 2) == "few-colors"
    assert choose_cograph_engine(1000, 2, 3) == "small-deficiency"
    assert choose_cograph_engine(200, 2, 3) == "few-colors"


def test_solve_cograph_rejects_p4():
    with pytest.raises(NotCograph):
        solve_cograph(Instance(P4, 1, 0))


def test_solvers_reject_bad_parameters():
    with pytest.raises(ContractError):
        solve_small_deficiency(leaf(0), 0, 1)
    with pytest.raises(ContractError):
        solve_few_colors(leaf(0), 1, -1)


@pytest.mark.parametrize("seed", range(80))
def test_dps_match_oracle_random(seed):
    rng = random.Random(seed)
    t = random_cotree(rng.randint(1, 7), rng)
    g = eval_cotree(t)
    for chi in (1, 2, 3):
        for delta in (0, 1, 2):
            inst = Instance(g, chi, delta)
            want = brute_force_decide(inst) is not None
            for solver in (solve_small_deficiency, solve_few_colors):
                col = solver(t, chi, delta)
                assert (col is not None) == want, (solver.__name__, format_cotree(t), chi, delta)
                if col is not None:
                    assert verify_coloring(inst, col).valid


def _all_colorings(g, chi, delta):
    for col in itertools.product(range(1, chi + 1), repeat=g.n):
        if verify_coloring(Instance(g, chi, delta), col).valid:
            yield col


@pytest.mark.parametrize("seed", range(25))
def test_signature_soundness(seed):
    """Every valid coloring's signature appears in the DP root tables, and
    every root signature is realized by some valid coloring."""
    rng = random.Random(1000 + seed)
    t = random_cotree(rng.randint(1, 6), rng)
    g = eval_cotree(t)
    chi, delta = rng.randint(1, 3), rng.randint(0, 2)
    small = small_deficiency_signatures(t, chi, delta)
    few = few_colors_signatures(t, chi, delta)
    realized_small, realized_few = set(), set()
    for col in _all_colorings(g, chi, delta):
        realized_small.add(coloring_signature(g, col, delta))
        realized_few.add(coloring_type_vector(g, col, chi, delta))
    assert realized_small == small
    assert realized_few == few
    for sig in small:
        assert sum(k for _, k in sig) <= chi
    for vec in few:
        assert len(vec) == chi
