"""Cotrees and the two signature dynamic programs for cographs.

A color-class *type* is a pair ``(s, d)``: the class size truncated at
``delta + 1`` and the maximum deficiency inside the class. The
small-deficiency DP tracks, per node, the feasible multisets of class types;
the few-colors DP tracks per-color type vectors (kept sorted, since colors
are interchangeable). Both keep one back-pointer per surviving signature so
that a certificate coloring can be rebuilt top-down.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .errors import ContractError, NotCograph, ParseError
from .graph import Coloring, Graph, Instance, certify, trivial_shortcut

LEAF, UNION, JOIN = "leaf", "union", "join"


@dataclass(frozen=True)
class Cotree:
    kind: str
    children: tuple = ()
    vertex: Optional[int] = None

    @classmethod
    def leaf(cls, v: int) -> "Cotree":
        return cls(LEAF, (), v)

    @classmethod
    def union(cls, *children: "Cotree") -> "Cotree":
        return cls(UNION, tuple(children))

    @classmethod
    def join(cls, *children: "Cotree") -> "Cotree":
        return cls(JOIN, tuple(children))

    def leaves(self) -> list[int]:
        out, stack = [], [self]
        while stack:
            t = stack.pop()
            if t.kind == LEAF:
                out.append(t.vertex)
            else:
                stack.extend(reversed(t.children))
        return out

    def __str__(self) -> str:
        return format_cotree(self)


# ------------------------------------------------------------ construction


def _find_p4(graph: Graph, vertices: list[int]) -> tuple[int, int, int, int]:
    pool = set(vertices)
    for b in vertices:
        for c in graph.adj[b]:
            if c not in pool:
                continue
            left = [a for a in graph.adj[b] if a in pool and a != c and a not in graph.adj[c]]
            right = [d for d in graph.adj[c] if d in pool and d != b and d not in graph.adj[b]]
            for a in left:
                for d in right:
                    if d not in graph.adj[a]:
                        return (a, b, c, d)
    raise AssertionError("connected and co-connected graph without an induced P4")


def _co_components(graph: Graph, vertices: list[int]) -> list[list[int]]:
    pool = set(vertices)
    seen: set[int] = set()
    comps = []
    for s in vertices:
        if s in seen:
            continue
        seen.add(s)
        stack, comp = [s], [s]
        while stack:
            u = stack.pop()
            for w in pool - graph.adj[u] - seen - {u}:
                seen.add(w)
                stack.append(w)
                comp.append(w)
        comps.append(sorted(comp))
    return comps


def build_cotree(graph: Graph) -> Cotree:
    """Cotree of a cograph; raises :class:`NotCograph` with an induced P4."""
    if graph.n == 0:
        raise ContractError("the empty graph has no cotree")

    def build(vertices: list[int]) -> Cotree:
        if len(vertices) == 1:
            return Cotree.leaf(vertices[0])
        comps = graph.components(vertices)
        if len(comps) > 1:
            return Cotree.union(*(build(c) for c in comps))
        cocomps = _co_components(graph, vertices)
        if len(cocomps) > 1:
            return Cotree.join(*(build(c) for c in cocomps))
        p4 = _find_p4(graph, vertices)
        raise NotCograph(f"induced P4 on vertices {p4}", p4)

    return build(list(range(graph.n)))


def eval_cotree(cotree: Cotree) -> Graph:
    """The graph a cotree denotes; leaf ids must be exactly ``0..n-1``."""
    leaves = cotree.leaves()
    if sorted(leaves) != list(range(len(leaves))):
        raise ContractError("cotree leaves must carry the ids 0..n-1 exactly once")
    edges = []

    def walk(t: Cotree) -> list[int]:
        if t.kind == LEAF:
            return [t.vertex]
        parts = [walk(c) for c in t.children]
        if t.kind == JOIN:
            for i in range(len(parts)):
                for j in range(i + 1, len(parts)):
                    edges.extend((u, v) for u in parts[i] for v in parts[j])
        return [v for p in parts for v in p]

    walk(cotree)
    return Graph.from_edges(len(leaves), edges)


def binarize(cotree: Cotree) -> Cotree:
    """Fold multi-child nodes left-associatively into binary nodes."""
    if cotree.kind == LEAF:
        return cotree
    kids = [binarize(c) for c in cotree.children]
    acc = kids[0]
    for k in kids[1:]:
        acc = Cotree(cotree.kind, (acc, k))
    return acc


def omega_cotree(cotree: Cotree) -> int:
    """Clique number: max over union children, sum over join children."""
    if cotree.kind == LEAF:
        return 1
    sub = [omega_cotree(c) for c in cotree.children]
    return sum(sub) if cotree.kind == JOIN else max(sub)


def format_cotree(cotree: Cotree) -> str:
    if cotree.kind == LEAF:
        return f"v{cotree.vertex}"
    tag = "J" if cotree.kind == JOIN else "U"
    return "(" + " ".join([tag] + [format_cotree(c) for c in cotree.children]) + ")"


_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def parse_cotree(text: str) -> Cotree:
    """Read the s-expression form, e.g. ``(J (U v0 v1) (U v2 v3))``."""
    tokens = _TOKEN.findall(text)
    pos = 0

    def parse() -> Cotree:
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("unexpected end of cotree expression")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            if pos >= len(tokens) or tokens[pos] not in ("J", "U"):
                raise ParseError("expected J or U after '('")
            kind = JOIN if tokens[pos] == "J" else UNION
            pos += 1
            kids = []
            while pos < len(tokens) and tokens[pos] != ")":
                kids.append(parse())
            if pos >= len(tokens):
                raise ParseError("unbalanced parentheses")
            pos += 1
            if len(kids) < 2:
                raise ParseError("internal cotree nodes need at least two children")
            return Cotree(kind, tuple(kids))
        if tok.startswith("v") and tok[1:].isdigit():
            return Cotree.leaf(int(tok[1:]))
        raise ParseError(f"unexpected token {tok!r}")

    tree = parse()
    if pos != len(tokens):
        raise ParseError("trailing tokens after cotree expression")
    return tree


# -------------------------------------------------------------- class types


def type_grid(delta: int, allow_empty: bool = False, reachable: bool = False) -> list[tuple[int, int]]:
    """Class types ``(s, d)`` with ``1 <= s <= delta+1`` and ``0 <= d <= delta``.

    ``allow_empty`` adds the empty type ``(0, 0)`` used by the few-colors DP.
    With ``reachable``, types a real class cannot have are dropped: an
    untruncated class of size ``s`` has deficiency at most ``s - 1``.
    """
    out = [(0, 0)] if allow_empty else []
    for s in range(1, delta + 2):
        for d in range(delta + 1):
            if reachable and s <= delta and d >= s:
                continue
            out.append((s, d))
    return out


def merge_types(t1: tuple[int, int], t2: tuple[int, int], kind: str, delta: int) -> Optional[tuple[int, int]]:
    """Type of the union of two classes taken from the two sides of a node.

    Under a join every vertex of one class sees the whole other class, so the
    pair is only mergeable when ``s1 + d2 <= delta`` and ``s2 + d1 <= delta``.
    """
    (s1, d1), (s2, d2) = t1, t2
    s = min(s1 + s2, delta + 1)
    if kind == UNION:
        return (s, max(d1, d2))
    if s1 + d2 > delta or s2 + d1 > delta:
        return None
    return (s, max(d1 + s2, d2 + s1))


def _class_type(graph: Graph, members: list[int], delta: int) -> tuple[int, int]:
    ms = set(members)
    d = max((len(graph.adj[u] & ms) for u in members), default=0)
    return (min(len(members), delta + 1), d)


def coloring_signature(graph: Graph, coloring, delta: int) -> tuple:
    """Small-deficiency signature of a concrete coloring, in canonical form."""
    classes: dict[int, list[int]] = {}
    for u, c in enumerate(coloring):
        classes.setdefault(c, []).append(u)
    counts: dict[tuple[int, int], int] = {}
    for members in classes.values():
        t = _class_type(graph, members, delta)
        counts[t] = counts.get(t, 0) + 1
    return tuple(sorted(counts.items()))


def coloring_type_vector(graph: Graph, coloring, chi: int, delta: int) -> tuple:
    """Few-colors signature (sorted per-color types) of a concrete coloring."""
    vec = []
    for c in range(1, chi + 1):
        members = [u for u, x in enumerate(coloring) if x == c]
        vec.append(_class_type(graph, members, delta) if members else (0, 0))
    return tuple(sorted(vec))


# ------------------------------------------------ small-deficiency DP


@dataclass
class TypeMergeGraph:
    """Bipartite graph between the class types of two child signatures.

    ``left``/``right`` map each type to its count; ``edges`` lists the
    mergeable pairs together with the type they merge into.
    """

    left: dict
    right: dict
    edges: list = field(default_factory=list)

    @classmethod
    def build(cls, s1: tuple, s2: tuple, kind: str, delta: int) -> "TypeMergeGraph":
        g = cls(dict(s1), dict(s2))
        for t1 in sorted(g.left):
            for t2 in sorted(g.right):
                merged = merge_types(t1, t2, kind, delta)
                if merged is not None:
                    g.edges.append((t1, t2, merged))
        return g

    def matchings(self, min_weight: int = 0) -> Iterator[tuple]:
        """Yield every weighted matching as a tuple of per-edge weights.

        Edge weights are assigned depth-first; a vertex's incident weights
        never exceed its count. Matchings of total weight below
        ``min_weight`` are skipped.
        """
        edges = self.edges
        cap_l, cap_r = dict(self.left), dict(self.right)
        weights = [0] * len(edges)

        # reach[i]: most weight edges i.. could still carry, per side
        def reach(i: int) -> int:
            ls = {e[0] for e in edges[i:]}
            rs = {e[1] for e in edges[i:]}
            return min(sum(cap_l[t] for t in ls), sum(cap_r[t] for t in rs))

        def rec(i: int, total: int):
            if i == len(edges):
                if total >= min_weight:
                    yield tuple(weights)
                return
            if total + reach(i) < min_weight:
                return
            t1, t2, _ = edges[i]
            for w in range(min(cap_l[t1], cap_r[t2]) + 1):
                weights[i] = w
                cap_l[t1] -= w
                cap_r[t2] -= w
                yield from rec(i + 1, total + w)
                cap_l[t1] += w
                cap_r[t2] += w
            weights[i] = 0

        yield from rec(0, 0)

    def signature(self, weights: tuple) -> tuple:
        counts: dict[tuple[int, int], int] = {}
        rem_l, rem_r = dict(self.left), dict(self.right)
        for (t1, t2, merged), w in zip(self.edges, weights):
            if w:
                rem_l[t1] -= w
                rem_r[t2] -= w
                counts[merged] = counts.get(merged, 0) + w
        for rem in (rem_l, rem_r):
            for t, k in rem.items():
                if k:
                    counts[t] = counts.get(t, 0) + k
        return tuple(sorted(counts.items()))


def _combine_small(T1, T2, kind: str, chi: int, delta: int) -> dict:
    out: dict = {}
    for s1 in T1:
        n1 = sum(k for _, k in s1)
        for s2 in T2:
            n2 = sum(k for _, k in s2)
            tmg = TypeMergeGraph.build(s1, s2, kind, delta)
            need = n1 + n2 - chi  # classes that must merge to fit in chi colors
            for weights in tmg.matchings(min_weight=max(need, 0)):
                sig = tmg.signature(weights)
                if sig not in out:
                    merges = tuple((t1, t2, w) for (t1, t2, _), w in zip(tmg.edges, weights) if w)
                    out[sig] = (s1, s2, merges)
    return out


def combine_small_deficiency(T1, T2, kind: str, chi: int, delta: int) -> set:
    """Feasible signatures of a union/join node given its children's sets.

    Signatures are canonical tuples of ``((s, d), count)`` pairs sorted by
    type, with zero counts omitted.
    """
    return set(_combine_small(T1, T2, kind, chi, delta))


def _small_deficiency_tables(cotree: Cotree, chi: int, delta: int):
    leaf_sig = (((1, 0), 1),)
    tables = {}  # id(node) -> {signature: back-pointer}
    stack = [(cotree, False)]
    while stack:
        node, done = stack.pop()
        if node.kind == LEAF:
            tables[id(node)] = {leaf_sig: None}
            continue
        if done:
            left, right = node.children
            tables[id(node)] = _combine_small(tables[id(left)], tables[id(right)], node.kind, chi, delta)
        else:
            stack.append((node, True))
            stack.extend((c, False) for c in node.children)
    return tables


def small_deficiency_signatures(cotree: Cotree, chi: int, delta: int) -> set:
    """Root table of the small-deficiency DP (set of feasible signatures)."""
    bt = binarize(cotree)
    return set(_small_deficiency_tables(bt, chi, delta)[id(bt)])


def _rebuild_small(node: Cotree, sig, tables, delta: int) -> dict:
    """Map type -> list of classes realizing ``sig`` at ``node``."""
    if node.kind == LEAF:
        return {(1, 0): [[node.vertex]]}
    s1, s2, merges = tables[id(node)][sig]
    left = _rebuild_small(node.children[0], s1, tables, delta)
    right = _rebuild_small(node.children[1], s2, tables, delta)
    out: dict = {}
    for t1, t2, w in merges:
        merged = merge_types(t1, t2, node.kind, delta)
        for _ in range(w):
            out.setdefault(merged, []).append(left[t1].pop() + right[t2].pop())
    for side in (left, right):
        for t, classes in side.items():
            out.setdefault(t, []).extend(classes)
    return out


def _classes_to_coloring(n: int, classes) -> Coloring:
    colors = [0] * n
    for c, members in enumerate(classes, start=1):
        for u in members:
            colors[u] = c
    return tuple(colors)


def _require_cograph(cotree: Cotree, chi: int, delta: int) -> int:
    if chi < 1 or delta < 0:
        raise ContractError("need chi >= 1 and delta >= 0")
    return len(cotree.leaves())


def solve_small_deficiency(cotree: Cotree, chi: int, delta: int) -> Optional[Coloring]:
    """Decide (chi, delta)-colorability of the cograph ``cotree`` denotes by
    the small-deficiency DP; polynomial for fixed ``delta``."""
    n = _require_cograph(cotree, chi, delta)
    bt = binarize(cotree)
    tables = _small_deficiency_tables(bt, chi, delta)
    root = tables[id(bt)]
    if not root:
        return None
    sig = min(root)
    by_type = _rebuild_small(bt, sig, tables, delta)
    classes = [c for t in sorted(by_type) for c in by_type[t]]
    return certify(Instance(eval_cotree(cotree), chi, delta), _classes_to_coloring(n, classes))


# ----------------------------------------------------- few-colors DP


def combine_few_colors(S1: tuple, S2: tuple, kind: str, delta: int) -> Optional[tuple]:
    """Position-wise combination of two per-color type vectors.

    An empty class ``(0, 0)`` combines with anything unchanged. Returns
    ``None`` when some color would exceed ``delta`` under a join.
    """
    if len(S1) != len(S2):
        raise ContractError("type vectors must have equal length")
    out = []
    for (s1, d1), (s2, d2) in zip(S1, S2):
        s = min(s1 + s2, delta + 1)
        if s1 == 0 or s2 == 0:
            out.append((s, max(d1, d2)))
        elif kind == UNION:
            out.append((s, max(d1, d2)))
        else:
            d = max(s1 + d2, s2 + d1)
            if d > delta:
                return None
            out.append((s, d))
    return tuple(out)


def _distinct_permutations(items: tuple) -> Iterator[tuple]:
    pool = sorted(items)
    used = [False] * len(pool)
    cur: list = []

    def rec():
        if len(cur) == len(pool):
            yield tuple(cur)
            return
        prev = None
        for i, x in enumerate(pool):
            if used[i] or x == prev:
                continue
            prev = x
            used[i] = True
            cur.append(x)
            yield from rec()
            cur.pop()
            used[i] = False

    yield from rec()


def _combine_few(T1, T2, kind: str, delta: int) -> dict:
    out: dict = {}
    for s1 in T1:
        for s2 in T2:
            for p2 in _distinct_permutations(s2):
                r = combine_few_colors(s1, p2, kind, delta)
                if r is None:
                    continue
                order = tuple(sorted(range(len(r)), key=lambda i: r[i]))
                sig = tuple(r[i] for i in order)
                if sig not in out:
                    out[sig] = (s1, s2, p2, order)
    return out


def _few_colors_tables(cotree: Cotree, chi: int, delta: int):
    leaf_sig = tuple(sorted([(1, 0)] + [(0, 0)] * (chi - 1)))
    tables = {}
    stack = [(cotree, False)]
    while stack:
        node, done = stack.pop()
        if node.kind == LEAF:
            tables[id(node)] = {leaf_sig: None}
        elif done:
            left, right = node.children
            tables[id(node)] = _combine_few(tables[id(left)], tables[id(right)], node.kind, delta)
        else:
            stack.append((node, True))
            stack.extend((c, False) for c in node.children)
    return tables


def few_colors_signatures(cotree: Cotree, chi: int, delta: int) -> set:
    """Root table of the few-colors DP (sorted type vectors)."""
    bt = binarize(cotree)
    return set(_few_colors_tables(bt, chi, delta)[id(bt)])


def _rebuild_few(node: Cotree, sig: tuple, tables) -> list:
    """Classes aligned position-by-position with the sorted vector ``sig``."""
    if node.kind == LEAF:
        return [[node.vertex] if t == (1, 0) and i == sig.index((1, 0)) else [] for i, t in enumerate(sig)]
    s1, s2, p2, order = tables[id(node)][sig]
    left = _rebuild_few(node.children[0], s1, tables)
    right_sorted = _rebuild_few(node.children[1], s2, tables)
    pools: dict = {}
    for t, cls in zip(s2, right_sorted):
        pools.setdefault(t, []).append(cls)
    right = [pools[t].pop() for t in p2]
    combined = [a + b for a, b in zip(left, right)]
    return [combined[i] for i in order]


def solve_few_colors(cotree: Cotree, chi: int, delta: int) -> Optional[Coloring]:
    """Decide (chi, delta)-colorability by the few-colors DP; polynomial for
    fixed ``chi``."""
    n = _require_cograph(cotree, chi, delta)
    bt = binarize(cotree)
    tables = _few_colors_tables(bt, chi, delta)
    root = tables[id(bt)]
    if not root:
        return None
    classes = _rebuild_few(bt, min(root), tables)
    return certify(Instance(eval_cotree(cotree), chi, delta), _classes_to_coloring(n, classes))


# ------------------------------------------------------------- dispatcher


def choose_cograph_engine(n: int, chi: int, delta: int) -> str:
    """Route used by :func:`solve_cograph` once the shortcut has not fired.

    ``delta <= n ** (1/5)`` is tested exactly as ``delta ** 5 <= n``.
    """
    if chi * delta >= n:
        return "shortcut"
    return "small-deficiency" if delta ** 5 <= n else "few-colors"


def solve_cograph(instance: Instance, cotree: Optional[Cotree] = None) -> Optional[Coloring]:
    """Solve a cograph instance, picking the DP that is subexponential for
    the given parameters. Raises :class:`NotCograph` on other graphs."""
    g, chi, delta = instance.graph, instance.chi, instance.delta
    quick = trivial_shortcut(instance)
    if quick is not None:
        return quick
    if cotree is None:
        cotree = build_cotree(g)
    if omega_cotree(cotree) > chi * (delta + 1):
        return None
    route = choose_cograph_engine(g.n, chi, delta)
    if route == "small-deficiency":
        return solve_small_deficiency(cotree, chi, delta)
    return solve_few_colors(cotree, chi, delta)
