"""Trivially perfect graphs: rooted-forest recognition, the level greedy, and
the exchange procedure that sorts any valid coloring along the forest."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import ContractError, NotTriviallyPerfect
from .graph import Coloring, Graph, Instance, certify, verify_coloring


@dataclass(frozen=True)
class RootedForest:
    """Underlying rooted forest of a trivially perfect graph.

    ``levels[0]`` holds the leaves, ``levels[i]`` the leaves left after
    removing ``levels[:i]``; every level is an independent set of ``graph``.
    """

    graph: Graph
    parent: tuple
    roots: tuple
    children: tuple
    levels: tuple

    def ancestors(self, v: int) -> list[int]:
        out = []
        p = self.parent[v]
        while p is not None:
            out.append(p)
            p = self.parent[p]
        return out

    def descendants(self, u: int) -> list[int]:
        out, stack = [], list(self.children[u])
        while stack:
            w = stack.pop()
            out.append(w)
            stack.extend(self.children[w])
        return out

    def depth(self, v: int) -> int:
        return len(self.ancestors(v))

    def closure_edges(self) -> list[tuple[int, int]]:
        """Edges of the comparability graph (vertex to each descendant)."""
        return sorted((min(u, w), max(u, w)) for u in range(len(self.parent)) for w in self.descendants(u))


def build_rooted_forest(graph: Graph) -> RootedForest:
    """Recover the rooted forest whose comparability graph is ``graph``.

    Each connected piece is rooted at its smallest-id universal vertex and
    the remainder is split recursively. A connected piece with no universal
    vertex is not trivially perfect and is reported as the witness.
    """
    n = graph.n
    parent: list = [None] * n
    roots = []
    work = [(comp, None) for comp in graph.components()]
    while work:
        comp, par = work.pop()
        size = len(comp)
        cs = set(comp)
        root = next((u for u in comp if len(graph.adj[u] & cs) == size - 1), None)
        if root is None:
            raise NotTriviallyPerfect(f"connected induced subgraph on {comp} has no universal vertex", comp)
        parent[root] = par
        if par is None:
            roots.append(root)
        rest = [u for u in comp if u != root]
        if rest:
            work.extend((c, root) for c in graph.components(rest))
    children = [[] for _ in range(n)]
    for v, p in enumerate(parent):
        if p is not None:
            children[p].append(v)

    height = [0] * n
    order = sorted(range(n), key=lambda v: -_depth(parent, v))
    for v in order:
        height[v] = 1 + max((height[c] for c in children[v]), default=0)
    levels = [[] for _ in range(max(height, default=0))]
    for v in range(n):
        levels[height[v] - 1].append(v)
    return RootedForest(
        graph,
        tuple(parent),
        tuple(sorted(roots)),
        tuple(tuple(sorted(c)) for c in children),
        tuple(tuple(lv) for lv in levels),
    )


def _depth(parent, v) -> int:
    d = 0
    while parent[v] is not None:
        v = parent[v]
        d += 1
    return d


def greedy_tp_color(forest: RootedForest, chi: int, delta: int) -> Optional[Coloring]:
    """Color level by level, giving each vertex the lowest color that at most
    ``delta`` of its descendants already use; ``None`` when some vertex sees
    ``delta + 1`` descendants of every color."""
    n = len(forest.parent)
    cap = delta + 1
    color = [0] * n
    # counts[u][j]: descendants of u colored j+1, capped at delta+1
    counts = [None] * n
    for level in forest.levels:
        for u in level:
            acc = [0] * chi
            for c in forest.children[u]:
                sub = counts[c]
                for j in range(chi):
                    acc[j] = min(cap, acc[j] + sub[j])
                acc[color[c] - 1] = min(cap, acc[color[c] - 1] + 1)
            pick = next((j for j in range(chi) if acc[j] <= delta), None)
            if pick is None:
                return None
            color[u] = pick + 1
            counts[u] = acc
    return certify(Instance(forest.graph, chi, delta), color)


def solve_trivially_perfect(instance: Instance) -> Optional[Coloring]:
    return greedy_tp_color(build_rooted_forest(instance.graph), instance.chi, instance.delta)


def is_sorted_coloring(forest: RootedForest, coloring: Sequence[int]) -> bool:
    """True when no vertex has a larger color than one of its ancestors."""
    return all(coloring[v] <= coloring[p] for v, p in enumerate(forest.parent) if p is not None)


def _conflict(forest: RootedForest, c: list) -> Optional[tuple[int, int]]:
    best = None
    for u in range(len(c)):
        top = max((w for w in forest.descendants(u)), key=lambda w: (c[w], -w), default=None)
        if top is None or c[top] <= c[u]:
            continue
        key = (forest.depth(u), -c[top], u)
        if best is None or key < best[0]:
            best = (key, u, top)
    return None if best is None else (best[1], best[2])


def iter_sort_steps(forest: RootedForest, coloring: Sequence[int], chi: int, delta: int) -> Iterator[tuple]:
    """Yield ``(u, v, coloring)`` after each exchange step of
    :func:`sort_coloring`, where ``(u, v)`` is the pair that was repaired."""
    instance = Instance(forest.graph, chi, delta)
    if not verify_coloring(instance, coloring).valid:
        raise ContractError("sort_coloring needs a valid (chi, delta)-coloring")
    c = list(coloring)
    for _ in range(len(c) + 1):
        pair = _conflict(forest, c)
        if pair is None:
            return
        u, v = pair
        cu, cv = c[u], c[v]
        if any(c[x] == cv for x in forest.ancestors(u)):
            c[u], c[v] = cv, cu
        else:
            for w in [u] + forest.descendants(u):
                if c[w] == cu:
                    c[w] = cv
                elif c[w] == cv:
                    c[w] = cu
        yield u, v, tuple(c)
    raise AssertionError("exchange procedure did not terminate within n steps")


def sort_coloring(forest: RootedForest, coloring: Sequence[int], chi: int, delta: int) -> Coloring:
    """Turn a valid coloring into one where colors never increase going down
    the forest, keeping it valid throughout.

    While some ancestor ``u`` has a smaller color than a descendant ``v``
    (``u`` as close to a root as possible, then ``v`` of largest color), the
    two swap colors if an ancestor of ``u`` already uses ``c(v)``; otherwise
    ``c(u)`` and ``c(v)`` are exchanged throughout the subtree of ``u``.
    """
    result = tuple(coloring)
    for _, _, result in iter_sort_steps(forest, coloring, chi, delta):
        pass
    return certify(Instance(forest.graph, chi, delta), result)
