import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from defcol import (
    BudgetExceeded,
    ContractError,
    DataError,
    Graph,
    Instance,
    ParseError,
    brute_force_decide,
    deficiency,
    format_dimacs,
    induced_subgraph,
    parse_graph,
    trivial_shortcut,
    verify_coloring,
)
from defcol.graph import answer_to_json, coloring_from_json
from defcol.generators import all_graphs, random_graph

from conftest import exhaustive_colorable


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, mask) if keep])


# ------------------------------------------------------------------ parsing


def test_parse_triangle():
    g = parse_graph("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    assert g == Graph.complete(3)


def test_parse_isolated():
    g = parse_graph("p edge 2 0\n")
    assert g.n == 2 and g.m == 0


def test_parse_endpoint_out_of_range_is_data_error():
    with pytest.raises(DataError):
        parse_graph("p edge 2 1\ne 1 3\n")


def test_parse_tolerates_comments_and_duplicates():
    g = parse_graph("c hello\n\np edge 3 4\ne 1 2\ne 2 1\nc mid\ne 2 3\ne 1 2\n")
    assert g.edges() == [(0, 1), (1, 2)]


@pytest.mark.parametrize("text,line", [
    ("p edge x 1\n", 1),
    ("c a\np edge 3 1\ne 1\n", 3),
    ("e 1 2\n", 1),
    ("p edge 2 1\nq 1 2\n", 2),
])
def test_parse_errors_carry_line_number(text, line):
    with pytest.raises(ParseError) as info:
        parse_graph(text)
    assert info.value.lineno == line


def test_parse_missing_header():
    with pytest.raises(ParseError):
        parse_graph("c nothing here\n")


def test_self_loop_rejected():
    with pytest.raises(DataError):
        parse_graph("p edge 2 1\ne 2 2\n")


@given(graphs())
def test_dimacs_round_trip(g):
    assert parse_graph(format_dimacs(g, ["x"])) == g


def test_graph_invariants_enforced():
    with pytest.raises(ContractError):
        Graph(2, (frozenset({1}), frozenset()))
    with pytest.raises(ContractError):
        Graph(1, (frozenset({0}),))


# --------------------------------------------------------------- deficiency


def test_deficiency_examples(k3, c4):
    assert deficiency(k3, (1, 1, 1), 0) == 2
    assert deficiency(k3, (1, 1, 2), 2) == 0
    assert deficiency(c4, (1, 2, 1, 2), 0) == 0


def test_verify_examples(k3, c4):
    r = verify_coloring(Instance(k3, 1, 2), (1, 1, 1))
    assert r.valid and r.max_deficiency == 2 and r.violating_vertex is None
    r = verify_coloring(Instance(k3, 1, 1), (1, 1, 1))
    assert not r.valid and r.violating_vertex in (0, 1, 2)
    assert verify_coloring(Instance(c4, 1, 2), (1, 1, 1, 1)).valid


def test_verify_contract_errors(k3):
    with pytest.raises(ContractError):
        verify_coloring(Instance(k3, 2, 0), (1, 2))
    with pytest.raises(ContractError):
        verify_coloring(Instance(k3, 2, 0), (1, 2, 3))
    with pytest.raises(ContractError):
        verify_coloring(Instance(k3, 2, 0), (0, 1, 2))


def test_instance_bounds(k3):
    with pytest.raises(ContractError):
        Instance(k3, 0, 0)
    with pytest.raises(ContractError):
        Instance(k3, 1, -1)


@given(graphs(), st.integers(1, 3), st.integers(0, 3), st.data())
def test_verifier_matches_recomputation(g, chi, delta, data):
    col = tuple(data.draw(st.lists(st.integers(1, chi), min_size=g.n, max_size=g.n)))
    r = verify_coloring(Instance(g, chi, delta), col)
    defs = [sum(col[w] == col[u] for w in g.adj[u]) for u in range(g.n)]
    assert r.valid == all(d <= delta for d in defs)
    assert r.max_deficiency == max(defs, default=0)
    assert (r.violating_vertex is None) == r.valid
    if not r.valid:
        assert defs[r.violating_vertex] > delta


# ----------------------------------------------------------------- shortcut


def test_shortcut_examples():
    g6 = random_graph(6, 0.7, seed=5)
    col = trivial_shortcut(Instance(g6, 3, 2))
    assert col is not None and verify_coloring(Instance(g6, 3, 2), col).valid
    assert max(col.count(c) for c in set(col)) <= 2
    assert trivial_shortcut(Instance(Graph.complete(2), 1, 1)) is None
    assert trivial_shortcut(Instance(Graph.complete(2), 2, 1)) is not None
    assert trivial_shortcut(Instance(Graph.complete(4), 1, 2)) is None


@given(graphs(max_n=10), st.integers(1, 5), st.integers(0, 5))
def test_shortcut_validity(g, chi, delta):
    inst = Instance(g, chi, delta)
    col = trivial_shortcut(inst)
    assert (col is not None) == (chi * delta >= g.n)
    if col is not None:
        assert verify_coloring(inst, col).valid
        assert max((col.count(c) for c in set(col)), default=0) <= math.ceil(g.n / chi)


# -------------------------------------------------------------- brute force


def test_brute_force_examples(c4):
    assert brute_force_decide(Instance(c4, 1, 1)) is None
    col = brute_force_decide(Instance(c4, 2, 0))
    assert col is not None and col[0] == col[2] != col[1] == col[3]
    assert brute_force_decide(Instance(Graph.complete(7), 2, 2)) is None


@pytest.mark.parametrize("chi", [1, 2, 3])
@pytest.mark.parametrize("delta", [0, 1, 2, 3])
def test_clique_boundary(chi, delta):
    k = chi * (delta + 1)
    assert brute_force_decide(Instance(Graph.complete(k), chi, delta)) is not None
    assert brute_force_decide(Instance(Graph.complete(k + 1), chi, delta)) is None


def test_brute_force_matches_enumeration_exhaustively():
    for n in range(5):
        for g in all_graphs(n):
            for chi in (1, 2):
                for delta in (0, 1):
                    col = brute_force_decide(Instance(g, chi, delta))
                    assert (col is not None) == exhaustive_colorable(g, chi, delta)
                    if col is not None:
                        assert verify_coloring(Instance(g, chi, delta), col).valid


def test_budget_exceeded_is_distinct():
    g = Graph.complete(12)
    with pytest.raises(BudgetExceeded) as info:
        brute_force_decide(Instance(g, 3, 2), budget=10)
    assert info.value.budget == 10
    assert brute_force_decide(Instance(g, 3, 2), budget=None) is None


@settings(max_examples=60, deadline=None)
@given(graphs(), st.integers(1, 3), st.integers(0, 3))
def test_oracle_monotone(g, chi, delta):
    if brute_force_decide(Instance(g, chi, delta)) is not None:
        assert brute_force_decide(Instance(g, chi + 1, delta)) is not None
        assert brute_force_decide(Instance(g, chi, delta + 1)) is not None


# ---------------------------------------------------------- induced subgraph


def test_induced_examples(k3, c4):
    assert induced_subgraph(k3, {0, 2}) == Graph.complete(2)
    assert induced_subgraph(c4, {1, 2}) == Graph.complete(2)
    assert induced_subgraph(c4, {0, 2}).m == 0
    with pytest.raises(ContractError):
        induced_subgraph(c4, {4})


@settings(max_examples=40, deadline=None)
@given(graphs(), st.integers(1, 3), st.integers(0, 2), st.data())
def test_yes_closed_under_induced_subgraphs(g, chi, delta, data):
    if g.n == 0 or brute_force_decide(Instance(g, chi, delta)) is None:
        return
    S = data.draw(st.sets(st.integers(0, g.n - 1)))
    assert brute_force_decide(Instance(induced_subgraph(g, S), chi, delta)) is not None


# ------------------------------------------------------------- JSON answers


def test_answer_json_round_trip():
    text = answer_to_json(2, 1, (1, 2, 1), **{"class": "cograph"})
    colors, meta = coloring_from_json(text)
    assert colors == (1, 2, 1) and meta == {"chi": 2, "delta": 1}
    assert '"colors"' not in answer_to_json(2, 1, None)
    assert coloring_from_json("[1, 2]") == ((1, 2), {})


@pytest.mark.parametrize("text", ['{"answer": "NO"}', '["a"]', "[true]"])
def test_coloring_json_bad_content(text):
    with pytest.raises(DataError):
        coloring_from_json(text)


def test_coloring_json_syntax():
    with pytest.raises(ParseError):
        coloring_from_json("{")
