"""Graphs, instances, the coloring verifier and the brute-force oracle.

Colors are 1-indexed throughout: a coloring of an ``n``-vertex graph is a
sequence of ``n`` integers drawn from ``1..chi``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import BudgetExceeded, CertificateError, ContractError, DataError, ParseError

Coloring = tuple  # tuple[int, ...], entries in 1..chi

#: Default node budget for :func:`brute_force_decide`.
DEFAULT_BUDGET = 5_000_000


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    n: int
    adj: tuple

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ContractError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        for u, nbrs in enumerate(self.adj):
            if u in nbrs:
                raise ContractError(f"self-loop at vertex {u}")
            for v in nbrs:
                if not 0 <= v < self.n:
                    raise ContractError(f"vertex {v} out of range")
                if u not in self.adj[v]:
                    raise ContractError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]] = ()) -> "Graph":
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ContractError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ContractError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(frozenset(a) for a in adj))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def complement(self) -> "Graph":
        everyone = frozenset(range(self.n))
        return Graph(self.n, tuple(everyone - a - {u} for u, a in enumerate(self.adj)))

    def components(self, vertices: Optional[Iterable[int]] = None) -> list[list[int]]:
        """Connected components of the subgraph induced by ``vertices``.

        Each component is sorted; components are ordered by smallest vertex.
        """
        pool = set(range(self.n)) if vertices is None else set(vertices)
        seen: set[int] = set()
        comps = []
        for s in sorted(pool):
            if s in seen:
                continue
            seen.add(s)
            stack, comp = [s], [s]
            while stack:
                u = stack.pop()
                for w in self.adj[u]:
                    if w in pool and w not in seen:
                        seen.add(w)
                        stack.append(w)
                        comp.append(w)
            comps.append(sorted(comp))
        return comps

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(vs[j] in self.adj[vs[i]] for i in range(len(vs)) for j in range(i + 1, len(vs)))

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        return all(not (self.adj[u] & vs) for u in vs)


@dataclass(frozen=True)
class Instance:
    """A Defective Coloring question: can ``graph`` be ``chi``-colored so
    every color class induces maximum degree at most ``delta``?"""

    graph: Graph
    chi: int
    delta: int

    def __post_init__(self):
        if self.chi < 1:
            raise ContractError(f"chi must be >= 1, got {self.chi}")
        if self.delta < 0:
            raise ContractError(f"delta must be >= 0, got {self.delta}")


@dataclass(frozen=True)
class VerifyReport:
    valid: bool
    max_deficiency: int
    violating_vertex: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "max_deficiency": self.max_deficiency,
            "violating_vertex": self.violating_vertex,
        }


# --------------------------------------------------------------------- I/O


def parse_graph(text: str) -> Graph:
    """Parse a DIMACS ``.col`` document.

    Comment lines (``c ...``) and blank lines are skipped, duplicate edges
    are collapsed, and 1-indexed endpoints are shifted to 0-indexed ids.
    """
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "c%":
            continue
        fields = line.split()
        tag = fields[0]
        if tag == "p":
            if n is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(fields) != 4 or fields[1] not in ("edge", "col"):
                raise ParseError(f"malformed problem line {line!r}", lineno)
            try:
                n, _m = int(fields[2]), int(fields[3])
            except ValueError:
                raise ParseError(f"non-integer counts in {line!r}", lineno) from None
            if n < 0 or _m < 0:
                raise ParseError("negative counts in problem line", lineno)
        elif tag == "e":
            if n is None:
                raise ParseError("edge line before problem line", lineno)
            if len(fields) != 3:
                raise ParseError(f"malformed edge line {line!r}", lineno)
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise ParseError(f"non-integer endpoint in {line!r}", lineno) from None
            for x in (u, v):
                if not 1 <= x <= n:
                    raise DataError(f"line {lineno}: endpoint {x} outside 1..{n}")
            if u == v:
                raise DataError(f"line {lineno}: self-loop at vertex {u}")
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise ParseError("missing 'p edge n m' header")
    return Graph.from_edges(n, edges)


def format_dimacs(graph: Graph, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p edge {graph.n} {graph.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in graph.edges())
    return "\n".join(lines) + "\n"


def answer_to_json(chi: int, delta: int, coloring: Optional[Sequence[int]], **extra) -> str:
    """Serialize a decision plus certificate as the canonical answer object."""
    obj = {"answer": "YES" if coloring is not None else "NO", "chi": chi, "delta": delta}
    if coloring is not None:
        obj["colors"] = [int(c) for c in coloring]
    obj.update(extra)
    return json.dumps(obj, sort_keys=True)


def coloring_from_json(text: str) -> tuple[Coloring, dict]:
    """Read a coloring from an answer object (or a bare JSON list).

    Returns ``(colors, metadata)`` where metadata holds any ``chi``/``delta``
    fields present in the document.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    meta = {}
    if isinstance(obj, dict):
        meta = {k: obj[k] for k in ("chi", "delta") if k in obj}
        if "colors" not in obj:
            raise DataError("coloring document has no 'colors' field")
        obj = obj["colors"]
    if not isinstance(obj, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in obj):
        raise DataError("'colors' must be a list of integers")
    return tuple(obj), meta


# ------------------------------------------------------------ verification


def _check_coloring(graph: Graph, coloring: Sequence[int], chi: Optional[int] = None):
    if len(coloring) != graph.n:
        raise ContractError(f"coloring has length {len(coloring)}, graph has {graph.n} vertices")
    for u, c in enumerate(coloring):
        if c < 1 or (chi is not None and c > chi):
            raise ContractError(f"vertex {u} has color {c} outside 1..{chi}")


def deficiency(graph: Graph, coloring: Sequence[int], u: int) -> int:
    """Number of neighbors of ``u`` sharing its color."""
    cu = coloring[u]
    return sum(1 for w in graph.adj[u] if coloring[w] == cu)


def verify_coloring(instance: Instance, coloring: Sequence[int]) -> VerifyReport:
    """Check ``coloring`` against ``instance``.

    Raises :class:`ContractError` for a malformed coloring (wrong length,
    color outside ``1..chi``), which is distinct from an invalid one.
    """
    g = instance.graph
    _check_coloring(g, coloring, instance.chi)
    worst, witness = 0, None
    for u in range(g.n):
        d = deficiency(g, coloring, u)
        if d > worst:
            worst = d
        if witness is None and d > instance.delta:
            witness = u
    return VerifyReport(witness is None, worst, witness)


def certify(instance: Instance, coloring: Optional[Sequence[int]]) -> Optional[Coloring]:
    """Pass a yes-certificate through the verifier before handing it out."""
    if coloring is None:
        return None
    coloring = tuple(int(c) for c in coloring)
    report = verify_coloring(instance, coloring)
    if not report.valid:
        raise CertificateError(
            f"engine produced an invalid coloring (vertex {report.violating_vertex} "
            f"has deficiency {report.max_deficiency} > {instance.delta})"
        )
    return coloring


def induced_subgraph(graph: Graph, vertices: Iterable[int]) -> Graph:
    """``G[S]`` with vertices relabeled ``0..|S|-1`` in increasing id order."""
    vs = sorted(set(vertices))
    for v in vs:
        if not 0 <= v < graph.n:
            raise ContractError(f"vertex {v} not in graph")
    index = {v: i for i, v in enumerate(vs)}
    return Graph(len(vs), tuple(frozenset(index[w] for w in graph.adj[v] if w in index) for v in vs))


# ----------------------------------------------------------------- solving


def trivial_shortcut(instance: Instance) -> Optional[Coloring]:
    """Equitable coloring when ``chi * delta >= n``, else ``None``.

    ``None`` means the shortcut does not apply, not that the answer is no.
    """
    n, chi = instance.graph.n, instance.chi
    if chi * instance.delta < n:
        return None
    return certify(instance, [(i % chi) + 1 for i in range(n)])


def brute_force_decide(instance: Instance, budget: Optional[int] = DEFAULT_BUDGET) -> Optional[Coloring]:
    """Exhaustive backtracking oracle.

    Vertices are visited in descending degree order; a vertex may open color
    ``k + 1`` only once colors ``1..k`` are in use. Raises
    :class:`BudgetExceeded` when more than ``budget`` search nodes are
    expanded (``budget=None`` disables the limit).
    """
    g, chi, delta = instance.graph, instance.chi, instance.delta
    n = g.n
    order = sorted(range(n), key=lambda u: (-g.degree(u), u))
    color = [0] * n
    defic = [0] * n
    nodes = 0

    def search(i: int, used: int) -> bool:
        nonlocal nodes
        if i == n:
            return True
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExceeded(budget)
        u = order[i]
        for c in range(1, min(used + 1, chi) + 1):
            same = [w for w in g.adj[u] if color[w] == c]
            if len(same) > delta or any(defic[w] >= delta for w in same):
                continue
            color[u] = c
            defic[u] = len(same)
            for w in same:
                defic[w] += 1
            if search(i + 1, max(used, c)):
                return True
            for w in same:
                defic[w] -= 1
            defic[u] = 0
            color[u] = 0
        return False

    if search(0, 0):
        return certify(instance, color)
    return None
