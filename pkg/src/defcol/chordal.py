"""Chordal graphs: LexBFS elimination orderings, nice tree decompositions,
the bag-type dynamic program, and split-graph recognition."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Optional

from .errors import ContractError, NotChordal
from .graph import Coloring, Graph, Instance, certify, trivial_shortcut


@dataclass(frozen=True)
class EliminationOrdering:
    order: tuple
    perfect: bool
    violation: Optional[tuple] = None  # (v, p, w): v ~ p, v ~ w, p !~ w

    def position(self) -> dict:
        return {v: i for i, v in enumerate(self.order)}

    def later_neighbors(self, graph: Graph, v: int) -> list[int]:
        pos = self.position()
        return sorted((w for w in graph.adj[v] if pos[w] > pos[v]), key=pos.__getitem__)


def lexbfs(graph: Graph) -> list[int]:
    """Lexicographic BFS visit order by partition refinement."""
    if graph.n == 0:
        return []
    parts = [list(range(graph.n))]
    order = []
    while parts:
        v = parts[0].pop(0)
        if not parts[0]:
            parts.pop(0)
        order.append(v)
        nbrs = graph.adj[v]
        refined = []
        for part in parts:
            inside = [w for w in part if w in nbrs]
            outside = [w for w in part if w not in nbrs]
            refined.extend(p for p in (inside, outside) if p)
        parts = refined
    return order


def peo_lexbfs(graph: Graph) -> EliminationOrdering:
    """Reverse LexBFS order, flagged perfect iff the graph is chordal.

    For each vertex the later neighbors must form a clique; it suffices to
    check that they all lie in the closed neighborhood of the earliest one.
    On failure the offending triple is recorded.
    """
    order = tuple(reversed(lexbfs(graph)))
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = sorted((w for w in graph.adj[v] if pos[w] > pos[v]), key=pos.__getitem__)
        if not later:
            continue
        p = later[0]
        for w in later[1:]:
            if w not in graph.adj[p]:
                return EliminationOrdering(order, False, (v, p, w))
    return EliminationOrdering(order, True)


def is_chordal(graph: Graph) -> bool:
    return peo_lexbfs(graph).perfect


def _chordless_cycle(graph: Graph, v: int, p: int, w: int) -> list[int]:
    # shortest p-w path avoiding v and v's other neighbors closes a chordless cycle
    blocked = (graph.adj[v] | {v}) - {p, w}
    prev = {p: None}
    queue = [p]
    for u in queue:
        if u == w:
            break
        for x in sorted(graph.adj[u]):
            if x not in prev and x not in blocked:
                prev[x] = u
                queue.append(x)
    if w not in prev:
        return [v, p, w]
    path = []
    x = w
    while x is not None:
        path.append(x)
        x = prev[x]
    return [v] + path[::-1]


def maximal_cliques(graph: Graph, ordering: EliminationOrdering) -> list[frozenset]:
    """Maximal cliques of a chordal graph from a perfect elimination ordering."""
    if not ordering.perfect:
        raise ContractError("maximal_cliques needs a perfect elimination ordering")
    pos = ordering.position()
    cands = [frozenset([v] + [w for w in graph.adj[v] if pos[w] > pos[v]]) for v in ordering.order]
    cands.sort(key=len, reverse=True)
    out: list[frozenset] = []
    for c in cands:
        if not any(c <= k for k in out):
            out.append(c)
    return out


def clique_number_chordal(graph: Graph, ordering: Optional[EliminationOrdering] = None) -> int:
    if graph.n == 0:
        return 0
    return max(len(c) for c in maximal_cliques(graph, ordering or peo_lexbfs(graph)))


# ------------------------------------------------------- decompositions

LEAF, INTRODUCE, FORGET, JOIN = "leaf", "introduce", "forget", "join"


@dataclass(frozen=True)
class NiceNode:
    kind: str
    bag: frozenset
    children: tuple = ()
    vertex: Optional[int] = None


@dataclass(frozen=True)
class NiceTreeDecomposition:
    """Nodes are stored children-before-parents; the last node is the root,
    whose bag is empty."""

    nodes: tuple

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return max(len(nd.bag) for nd in self.nodes) - 1

    def count(self, kind: str) -> int:
        return sum(1 for nd in self.nodes if nd.kind == kind)

    def has_nonempty_join(self) -> bool:
        return any(nd.kind == JOIN and nd.bag for nd in self.nodes)


def elimination_tree(graph: Graph, ordering: EliminationOrdering):
    """Tree decomposition with one bag ``{v} + later neighbors`` per vertex,
    hung below the bag of the earliest later neighbor.

    Returns ``(bags, parent)`` keyed by vertex; roots have parent ``None``.
    """
    if not ordering.perfect:
        raise ContractError("decomposition needs a perfect elimination ordering")
    pos = ordering.position()
    bags, parent = {}, {}
    for v in ordering.order:
        later = sorted((w for w in graph.adj[v] if pos[w] > pos[v]), key=pos.__getitem__)
        bags[v] = frozenset([v] + later)
        parent[v] = later[0] if later else None
    return bags, parent


def build_nice_decomposition(graph: Graph, ordering: EliminationOrdering) -> NiceTreeDecomposition:
    """Expand the elimination tree into leaf/introduce/forget/join nodes.

    Width equals the clique number minus one on chordal graphs.
    """
    bags, parent = elimination_tree(graph, ordering)
    kids = defaultdict(list)
    roots = []
    for v in ordering.order:
        if parent[v] is None:
            roots.append(v)
        else:
            kids[parent[v]].append(v)

    nodes: list[NiceNode] = []

    def add(node: NiceNode) -> int:
        nodes.append(node)
        return len(nodes) - 1

    def morph(idx: int, src: frozenset, dst: frozenset) -> int:
        # forget what dst lacks, then introduce what it adds
        cur = src
        for v in sorted(src - dst):
            cur = cur - {v}
            idx = add(NiceNode(FORGET, cur, (idx,), v))
        for v in sorted(dst - src):
            cur = cur | {v}
            idx = add(NiceNode(INTRODUCE, cur, (idx,), v))
        return idx

    def leaf_chain(dst: frozenset) -> int:
        return morph(add(NiceNode(LEAF, frozenset())), frozenset(), dst)

    def join_all(idxs: list[int], bag: frozenset) -> int:
        acc = idxs[0]
        for other in idxs[1:]:
            acc = add(NiceNode(JOIN, bag, (acc, other)))
        return acc

    # post-order over the elimination forest without recursion
    built: dict[int, int] = {}
    for root in roots:
        stack = [(root, False)]
        while stack:
            v, done = stack.pop()
            if not done:
                stack.append((v, True))
                stack.extend((c, False) for c in kids[v])
                continue
            bag = bags[v]
            if not kids[v]:
                built[v] = leaf_chain(bag)
            else:
                branches = [morph(built[c], bags[c], bag) for c in kids[v]]
                built[v] = join_all(branches, bag)

    tops = [morph(built[r], bags[r], frozenset()) for r in roots]
    if not tops:
        add(NiceNode(LEAF, frozenset()))
    elif len(tops) > 1:
        join_all(tops, frozenset())
    return NiceTreeDecomposition(tuple(nodes))


def validate_decomposition(graph: Graph, ntd: NiceTreeDecomposition) -> list[str]:
    """Independent check of the tree-decomposition and niceness axioms.

    Returns a list of problems (empty when valid).
    """
    problems = []
    nodes = ntd.nodes
    parent_of: dict[int, int] = {}
    for i, nd in enumerate(nodes):
        for c in nd.children:
            if c >= i:
                problems.append(f"node {i} has child {c} stored after it")
            if c in parent_of:
                problems.append(f"node {c} has two parents")
            parent_of[c] = i
        kids = [nodes[c] for c in nd.children]
        if nd.kind == LEAF and (nd.children or nd.bag):
            problems.append(f"leaf {i} must be empty and childless")
        elif nd.kind == INTRODUCE and not (len(kids) == 1 and nd.vertex not in kids[0].bag and nd.bag == kids[0].bag | {nd.vertex}):
            problems.append(f"bad introduce node {i}")
        elif nd.kind == FORGET and not (len(kids) == 1 and nd.vertex in kids[0].bag and nd.bag == kids[0].bag - {nd.vertex}):
            problems.append(f"bad forget node {i}")
        elif nd.kind == JOIN and not (len(kids) == 2 and all(k.bag == nd.bag for k in kids)):
            problems.append(f"bad join node {i}")
    roots = [i for i in range(len(nodes)) if i not in parent_of]
    if roots != [len(nodes) - 1]:
        problems.append(f"expected a single root stored last, found {roots}")
    for u, v in graph.edges():
        if not any(u in nd.bag and v in nd.bag for nd in nodes):
            problems.append(f"edge ({u}, {v}) not covered")
    for v in range(graph.n):
        holders = {i for i, nd in enumerate(nodes) if v in nd.bag}
        if not holders:
            problems.append(f"vertex {v} in no bag")
            continue
        # the holders must induce a connected subtree: exactly one top
        tops = [i for i in holders if parent_of.get(i) not in holders]
        if len(tops) != 1:
            problems.append(f"bags holding vertex {v} are disconnected")
    return problems


# ------------------------------------------------------------------ DP


def _canonical(entry: list, chi: int) -> tuple[tuple, tuple]:
    """Relabel colors by first appearance along the bag.

    Returns the canonical key and the full permutation ``relabel`` with
    ``relabel[c - 1]`` the new name of color ``c``.
    """
    relabel = [0] * chi
    nxt = 1
    for c, _ in entry:
        if not relabel[c - 1]:
            relabel[c - 1] = nxt
            nxt += 1
    for c in range(chi):
        if not relabel[c]:
            relabel[c] = nxt
            nxt += 1
    return tuple((relabel[c - 1], d) for c, d in entry), tuple(relabel)


def treewidth_dp(graph: Graph, ntd: NiceTreeDecomposition, chi: int, delta: int,
                 stats: Optional[dict] = None) -> Optional[Coloring]:
    """Bag-type dynamic program over a nice tree decomposition.

    A bag type gives each bag vertex (sorted by id) its color and its
    deficiency among the vertices forgotten or present below. Colors are
    interchangeable, so types are stored up to renaming colors (first
    appearance along the bag gets color 1, and so on); back-pointers keep
    the renaming so a concrete coloring can be rebuilt. At a join the
    same-colored bag neighbors are counted by both children, so that count
    is subtracted once. When ``stats`` is a dict it receives the largest
    table size seen per bag size.
    """
    if chi < 1 or delta < 0:
        raise ContractError("need chi >= 1 and delta >= 0")
    identity = tuple(range(1, chi + 1))
    tables: list[dict] = []
    for nd in ntd.nodes:
        verts = sorted(nd.bag)
        table: dict = {}
        if nd.kind == LEAF:
            table[()] = None
        elif nd.kind == INTRODUCE:
            (child,) = nd.children
            cverts = sorted(ntd.nodes[child].bag)
            v = nd.vertex
            at = verts.index(v)
            for key in tables[child]:
                used = max((c for c, _ in key), default=0)
                for col in range(1, min(used + 1, chi) + 1):
                    entry = list(key)
                    own = 0
                    ok = True
                    for i, w in enumerate(cverts):
                        if w in graph.adj[v] and entry[i][0] == col:
                            own += 1
                            if entry[i][1] + 1 > delta:
                                ok = False
                                break
                            entry[i] = (col, entry[i][1] + 1)
                    if not ok or own > delta:
                        continue
                    entry.insert(at, (col, own))
                    t, relabel = _canonical(entry, chi)
                    if t not in table:
                        table[t] = (key, col, relabel)
        elif nd.kind == FORGET:
            (child,) = nd.children
            at = sorted(ntd.nodes[child].bag).index(nd.vertex)
            for key in tables[child]:
                t, relabel = _canonical(list(key[:at] + key[at + 1:]), chi)
                if t not in table:
                    table[t] = (key, relabel)
        else:
            a, b = nd.children
            by_colors = defaultdict(list)
            for key in tables[b]:
                by_colors[tuple(c for c, _ in key)].append(key)
            for k1 in tables[a]:
                cols = tuple(c for c, _ in k1)
                inner = [sum(1 for j, w in enumerate(verts) if w in graph.adj[u] and cols[j] == cols[i])
                         for i, u in enumerate(verts)]
                for k2 in by_colors.get(cols, ()):
                    merged = []
                    for i in range(len(verts)):
                        d = k1[i][1] + k2[i][1] - inner[i]
                        if d > delta:
                            break
                        merged.append((cols[i], d))
                    else:
                        t = tuple(merged)
                        if t not in table:
                            table[t] = (k1, k2)
        tables.append(table)
        if stats is not None:
            size = len(nd.bag)
            stats[size] = max(stats.get(size, 0), len(table))

    root = ntd.root
    if not tables[root]:
        return None

    # walk down carrying perm: canonical color at this node -> final color
    color = [0] * graph.n
    stack = [(root, next(iter(tables[root])), identity)]
    while stack:
        idx, key, perm = stack.pop()
        nd = ntd.nodes[idx]
        ptr = tables[idx][key]
        if nd.kind == INTRODUCE:
            child_key, col, relabel = ptr
            below = tuple(perm[r - 1] for r in relabel)
            color[nd.vertex] = below[col - 1]
            stack.append((nd.children[0], child_key, below))
        elif nd.kind == FORGET:
            child_key, relabel = ptr
            stack.append((nd.children[0], child_key, tuple(perm[r - 1] for r in relabel)))
        elif nd.kind == JOIN:
            stack.append((nd.children[0], ptr[0], perm))
            stack.append((nd.children[1], ptr[1], perm))
    return tuple(color)


def solve_chordal(instance: Instance, ordering: Optional[EliminationOrdering] = None) -> Optional[Coloring]:
    """Decide a chordal instance: shortcut, clique-number gate, then the DP on
    a decomposition of width ``omega - 1``."""
    g = instance.graph
    if ordering is None:
        ordering = peo_lexbfs(g)
    if not ordering.perfect:
        cyc = _chordless_cycle(g, *ordering.violation)
        raise NotChordal(f"chordless cycle through {cyc}", cyc)
    quick = trivial_shortcut(instance)
    if quick is not None:
        return quick
    if clique_number_chordal(g, ordering) > instance.chi * (instance.delta + 1):
        return None
    ntd = build_nice_decomposition(g, ordering)
    return certify(instance, treewidth_dp(g, ntd, instance.chi, instance.delta))


# ----------------------------------------------------------- split graphs


def recognize_split(graph: Graph) -> Optional[tuple[frozenset, frozenset]]:
    """Split partition ``(K, S)`` via the degree-sequence test, or ``None``.

    With degrees sorted descending, let ``m`` be the largest index with
    ``d_m >= m - 1``; the graph is split iff the top ``m`` degrees sum to
    ``m(m-1)`` plus the remaining degrees, and then those ``m`` vertices form
    the clique.
    """
    n = graph.n
    order = sorted(range(n), key=lambda u: (-graph.degree(u), u))
    degs = [graph.degree(u) for u in order]
    m = 0
    for i, d in enumerate(degs, start=1):
        if d >= i - 1:
            m = i
    if sum(degs[:m]) != m * (m - 1) + sum(degs[m:]):
        return None
    K, S = frozenset(order[:m]), frozenset(order[m:])
    if not (graph.is_clique(K) and graph.is_independent(S)):
        raise AssertionError("degree test accepted a non-split partition")
    return K, S
