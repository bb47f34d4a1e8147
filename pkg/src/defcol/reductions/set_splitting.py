"""3-Set Splitting to Defective Coloring on split graphs with ``chi`` fixed."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from ..errors import ContractError, DataError, ExtractionError
from ..graph import Coloring, Graph, Instance, verify_coloring
from .split import SplitReduction


@dataclass(frozen=True)
class SetSplittingInstance:
    universe: tuple
    family: tuple  # tuple of 3-tuples of universe elements

    def __post_init__(self):
        if len(set(self.universe)) != len(self.universe):
            raise ContractError("universe elements must be distinct")
        members = set(self.universe)
        for S in self.family:
            if len(S) != 3 or len(set(S)) != 3:
                raise ContractError(f"set {S} must have exactly three distinct elements")
            if not set(S) <= members:
                raise ContractError(f"set {S} uses elements outside the universe")

    @classmethod
    def from_json(cls, text: str) -> "SetSplittingInstance":
        try:
            obj = json.loads(text)
            u = obj["universe"]
            universe = tuple(range(u)) if isinstance(u, int) else tuple(u)
            return cls(universe, tuple(tuple(S) for S in obj["family"]))
        except (ValueError, KeyError, TypeError) as exc:
            raise DataError(f"bad set-splitting document: {exc}") from None

    def splits(self, part: Iterable) -> bool:
        U1 = set(part)
        return all(0 < len(U1 & set(S)) < 3 for S in self.family)

    def splitting_partition(self) -> Optional[frozenset]:
        """Some ``U1`` splitting every set, by enumerating all subsets."""
        for r in range(len(self.universe) + 1):
            for U1 in itertools.combinations(self.universe, r):
                if self.splits(U1):
                    return frozenset(U1)
        return None


def reduce_set_splitting(ss: SetSplittingInstance, chi: int) -> SplitReduction:
    """Split graph that is ``(chi, |F|+1)``-colorable iff ``ss`` can be split.

    Clique: ``C1`` and ``C2`` (one vertex per set each) and ``C*`` of size
    ``(chi-2)(|F|+2)``; independent: ``I`` (one vertex per element) and
    ``Z1``, ``Z2`` of size ``chi(|F|+2)`` each.
    """
    if chi < 2:
        raise ContractError("the set-splitting gadget needs chi >= 2")
    f = len(ss.family)
    roles: list[tuple] = []
    roles += [("C1", j) for j in range(f)]
    roles += [("C2", j) for j in range(f)]
    roles += [("C*", t) for t in range((chi - 2) * (f + 2))]
    clique_size = len(roles)
    roles += [("I", x) for x in ss.universe]
    roles += [("Z1", t) for t in range(chi * (f + 2))]
    roles += [("Z2", t) for t in range(chi * (f + 2))]
    index = {r: v for v, r in enumerate(roles)}
    by_kind: dict[str, list[int]] = {}
    for v, r in enumerate(roles):
        by_kind.setdefault(r[0], []).append(v)

    edges = list(itertools.combinations(range(clique_size), 2))
    star = by_kind.get("C*", [])
    edges += [(c, v) for c in star for v in range(clique_size, len(roles))]
    for j, S in enumerate(ss.family):
        for x in S:
            edges.append((index["C1", j], index["I", x]))
            edges.append((index["C2", j], index["I", x]))
    for side in ("1", "2"):
        edges += [(c, z) for c in by_kind.get("C" + side, []) for z in by_kind["Z" + side]]
    graph = Graph.from_edges(len(roles), edges)
    return SplitReduction(Instance(graph, chi, f + 1), tuple(roles), clique_size)


def witness_ss_forward(red: SplitReduction, U1: Iterable, strict: bool = True) -> Coloring:
    """Color 1 on ``C1``, ``Z2`` and the elements of ``U1``; color 2 on
    ``C2``, ``Z1`` and the other elements; ``C*`` spread evenly over colors
    ``3..chi``.

    With ``strict`` a non-splitting ``U1`` raises :class:`ContractError`;
    otherwise the (invalid) coloring is returned for inspection.
    """
    chi = red.instance.chi
    U1 = set(U1)
    color = []
    star = 0
    for role in red.roles:
        kind = role[0]
        if kind in ("C1", "Z2"):
            color.append(1)
        elif kind in ("C2", "Z1"):
            color.append(2)
        elif kind == "I":
            color.append(1 if role[1] in U1 else 2)
        else:
            color.append(3 + star % (chi - 2))
            star += 1
    coloring = tuple(color)
    if strict:
        report = verify_coloring(red.instance, coloring)
        if not report.valid:
            raise ContractError(
                f"partition does not split the family (vertex {red.roles[report.violating_vertex]} "
                f"reaches deficiency {report.max_deficiency})"
            )
    return coloring


def witness_ss_backward(red: SplitReduction, coloring: Sequence[int]) -> tuple[frozenset, frozenset]:
    """Partition from a valid coloring: ``U1`` holds the elements colored like ``C1``.

    Needs ``C1`` and ``C2`` monochromatic in distinct colors. Valid colorings
    are forced into that shape once ``|F| >= 3``; for smaller families a
    coloring putting ``C1`` and ``C2`` in one class can be valid, and then
    :class:`ExtractionError` is raised.
    """
    if not verify_coloring(red.instance, coloring).valid:
        raise ContractError("coloring is not valid for the reduced instance")
    c1 = {coloring[v] for v in red.group("C1")}
    c2 = {coloring[v] for v in red.group("C2")}
    if len(c1) > 1 or len(c2) > 1:
        raise ExtractionError("C1 or C2 is not monochromatic")
    if c1 and c1 == c2:
        raise ExtractionError("C1 and C2 share a color; the gadget only forces distinct colors when |F| >= 3")
    ref = next(iter(c1), 1)
    elements = [red.roles[v][1] for v in red.group("I")]
    U1 = frozenset(x for x in elements if coloring[red.vertex("I", x)] == ref)
    U2 = frozenset(elements) - U1
    if any(not (S & U1) or not (S & U2) for S in _family(red)):
        raise ExtractionError("extracted partition does not split every set")
    return U1, U2


def _family(red: SplitReduction) -> list[set]:
    g = red.instance.graph
    out = []
    for c in red.group("C1"):
        out.append({red.roles[w][1] for w in g.adj[c] if red.roles[w][0] == "I"})
    return out
