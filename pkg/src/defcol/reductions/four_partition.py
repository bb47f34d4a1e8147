"""4-Partition to Defective Coloring on complete multipartite graphs.

The produced graph has far too many vertices to build, so it is kept as a
list of independent parts with sizes. Colorings that are constant on every
part are checked directly from the part sizes.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ..errors import ContractError, DataError, ExtractionError
from ..graph import VerifyReport

Element = tuple  # (group 1..4, index within group)


@dataclass(frozen=True)
class FourPartitionInstance:
    """Sizes grouped as ``groups[0..3]`` = A1..A4 (equal lengths) and target ``B``.

    ``normalized_from`` is set on instances produced by
    :func:`normalize_four_partition`.
    """

    groups: tuple
    B: int
    normalized_from: Optional["FourPartitionInstance"] = None

    def __post_init__(self):
        if len(self.groups) != 4:
            raise ContractError("need exactly four groups A1..A4")
        if len({len(g) for g in self.groups}) != 1:
            raise ContractError("groups A1..A4 must have equal size")
        if any(s <= 0 for g in self.groups for s in g):
            raise ContractError("element sizes must be positive")

    @property
    def n(self) -> int:
        return len(self.groups[0])

    def size(self, x: Element) -> int:
        return self.groups[x[0] - 1][x[1]]

    def elements(self) -> list[Element]:
        return [(i + 1, k) for i in range(4) for k in range(self.n)]

    @classmethod
    def from_json(cls, text: str) -> "FourPartitionInstance":
        try:
            obj = json.loads(text)
            return cls(tuple(tuple(int(s) for s in g) for g in obj["groups"]), int(obj["B"]))
        except (ValueError, KeyError, TypeError) as exc:
            raise DataError(f"bad 4-partition document: {exc}") from None


def normalize_four_partition(fp: FourPartitionInstance) -> FourPartitionInstance:
    """Shift sizes so group membership is forced by size alone.

    ``s'(x) = s(x) + 5**i * B + 5**5 * n**2 * B`` for ``x`` in ``A_i`` and
    ``B' = B + B * (5 + 25 + 125 + 625) + 4 * 5**5 * n**2 * B``.
    """
    n, B = fp.n, fp.B
    big = 5 ** 5 * n * n * B
    groups = tuple(tuple(s + 5 ** i * B + big for s in g) for i, g in enumerate(fp.groups, start=1))
    b_prime = B + B * sum(5 ** i for i in range(1, 5)) + 4 * big
    return FourPartitionInstance(groups, b_prime, normalized_from=fp)


def window_bounds(normalized: FourPartitionInstance) -> tuple[Fraction, Fraction]:
    """Open interval ``(B'/4 - 5B'/n^2, B'/4 + 5B'/n^2)`` holding every size."""
    bp, n = Fraction(normalized.B), normalized.n
    return bp / 4 - 5 * bp / n ** 2, bp / 4 + 5 * bp / n ** 2


@dataclass(frozen=True)
class Part:
    label: str  # "V", "V1" or "V2"
    element: Element
    size: int

    def name(self) -> str:
        g, k = self.element
        return f"{self.label}[A{g}.{k}]"


@dataclass(frozen=True)
class MultipartiteInstance:
    """Complete multipartite graph given by its parts, with ``chi``/``delta``."""

    parts: tuple
    chi: int
    delta: int
    source: FourPartitionInstance

    @property
    def num_vertices(self) -> int:
        return sum(p.size for p in self.parts)

    def to_json(self) -> str:
        return json.dumps({
            "chi": self.chi,
            "delta": self.delta,
            "parts": [{"name": p.name(), "size": p.size} for p in self.parts],
        }, sort_keys=True)


def reduce_fp_to_multipartite(fp: FourPartitionInstance) -> MultipartiteInstance:
    """Two equal parts per A1 element, one part per other element;
    ``chi = n`` and ``delta = B'``. Unnormalized input is normalized first."""
    norm = fp if fp.normalized_from is not None else normalize_four_partition(fp)
    parts = []
    for k, s in enumerate(norm.groups[0]):
        parts.append(Part("V1", (1, k), s))
        parts.append(Part("V2", (1, k), s))
    for g in (2, 3, 4):
        parts.extend(Part("V", (g, k), s) for k, s in enumerate(norm.groups[g - 1]))
    return MultipartiteInstance(tuple(parts), norm.n, norm.B, norm)


def verify_multipartite_coloring(mp: MultipartiteInstance, assignment: Sequence[int]) -> VerifyReport:
    """Check a coloring that is constant on each part.

    A vertex in part ``p`` sees every vertex of every other part, so its
    deficiency is the total size of the other parts sharing its color.
    ``violating_vertex`` reports a part index.
    """
    if len(assignment) != len(mp.parts):
        raise ContractError(f"assignment has {len(assignment)} entries for {len(mp.parts)} parts")
    load: dict[int, int] = defaultdict(int)
    for p, c in zip(mp.parts, assignment):
        if not 1 <= c <= mp.chi:
            raise ContractError(f"color {c} outside 1..{mp.chi}")
        load[c] += p.size
    worst, witness = 0, None
    for i, (p, c) in enumerate(zip(mp.parts, assignment)):
        d = load[c] - p.size
        worst = max(worst, d)
        if witness is None and d > mp.delta:
            witness = i
    return VerifyReport(witness is None, worst, witness)


def part_deficiencies(mp: MultipartiteInstance, assignment: Sequence[int]) -> list[int]:
    load: dict[int, int] = defaultdict(int)
    for p, c in zip(mp.parts, assignment):
        load[c] += p.size
    return [load[c] - p.size for p, c in zip(mp.parts, assignment)]


def grouping_assignment(mp: MultipartiteInstance, grouping: Sequence[Sequence[Element]]) -> tuple:
    """Color ``i`` on the parts of every element of ``grouping[i-1]``
    (both copies for an A1 element). No structure checks."""
    color_of = {}
    for i, group in enumerate(grouping, start=1):
        for x in group:
            color_of[tuple(x)] = i
    try:
        return tuple(color_of[p.element] for p in mp.parts)
    except KeyError as exc:
        raise ContractError(f"element {exc.args[0]} is not in any group") from None


def witness_fp_forward(mp: MultipartiteInstance, quadruples: Sequence[Sequence[Element]]) -> tuple:
    """Part coloring from a 4-Partition solution: quadruple ``i`` gets color ``i``."""
    fp = mp.source.normalized_from or mp.source
    seen = set()
    if len(quadruples) != fp.n:
        raise ContractError(f"need {fp.n} quadruples, got {len(quadruples)}")
    for q in quadruples:
        q = [tuple(x) for x in q]
        if sorted(x[0] for x in q) != [1, 2, 3, 4]:
            raise ContractError(f"quadruple {q} must take one element from each of A1..A4")
        if sum(fp.size(x) for x in q) != fp.B:
            raise ContractError(f"quadruple {q} does not sum to B={fp.B}")
        seen.update(q)
    if len(seen) != 4 * fp.n:
        raise ContractError("quadruples must use every element exactly once")
    return grouping_assignment(mp, quadruples)


def flip_a1_copies(mp: MultipartiteInstance, assignment: Sequence[int]) -> tuple:
    """Swap colors of ``V1``/``V2`` copy pairs until every color holds a ``V1`` part.

    Colors are nodes of a digraph with an arc ``c(V1_x) -> c(V2_x)`` per A1
    element. While some color has out-degree 0, a maximal directed path from
    a color of out-degree 2 is reversed by swapping the copies along it.
    """
    idx = {(p.label, p.element): i for i, p in enumerate(mp.parts)}
    colors = list(assignment)
    a1 = [p.element for p in mp.parts if p.label == "V1"]

    def arcs():
        return {x: (colors[idx["V1", x]], colors[idx["V2", x]]) for x in a1}

    for _ in range(len(a1) + 1):
        cur = arcs()
        out = defaultdict(list)
        for x, (i, j) in cur.items():
            out[i].append(x)
        if all(out[c] for c in set(colors[idx["V1", x]] for x in a1) | set(colors[idx["V2", x]] for x in a1)):
            return tuple(colors)
        start = next((c for c in sorted(out) if len(out[c]) >= 2), None)
        if start is None:
            raise ExtractionError("no color with two V1 copies to start a flip path")
        used, c = set(), start
        while True:
            nxt = next((x for x in out[c] if x not in used), None)
            if nxt is None:
                break
            used.add(nxt)
            i, j = cur[nxt]
            colors[idx["V1", nxt]], colors[idx["V2", nxt]] = j, i
            c = j
            if len(out[c]) != 1:
                break
    raise ExtractionError("flip procedure did not converge")


def witness_fp_backward(mp: MultipartiteInstance, assignment: Sequence[int]) -> list[tuple]:
    """Recover quadruples from a valid part coloring.

    Requires the structure valid colorings have for large ``n``: each color
    on exactly one A2, one A3, one A4 part and two A1 copies. Anything else
    raises :class:`ExtractionError`; a well-shaped but invalid assignment
    raises :class:`ContractError`. Quadruples come back as
    ``(x1, x2, x3, x4)`` element tuples, ordered by color.
    """
    report = verify_multipartite_coloring(mp, assignment)
    by_color = defaultdict(list)
    for p, c in zip(mp.parts, assignment):
        by_color[c].append(p)
    for c in range(1, mp.chi + 1):
        groups = sorted(p.element[0] for p in by_color[c])
        if groups != [1, 1, 2, 3, 4]:
            raise ExtractionError(f"color {c} does not cover one A2, A3, A4 part and two A1 copies")
    if not report.valid:
        raise ContractError("assignment is not a valid coloring")
    fixed = flip_a1_copies(mp, assignment)
    quads = []
    norm = mp.source
    for c in range(1, mp.chi + 1):
        members = [p for p, x in zip(mp.parts, fixed) if x == c]
        first = [p.element for p in members if p.label == "V1"]
        if not first:
            raise ExtractionError(f"color {c} holds no V1 copy after flipping")
        others = sorted(p.element for p in members if p.label == "V")
        quad = (first[0], *others)
        if sum(norm.size(x) for x in quad) != norm.B:
            raise ExtractionError(f"quadruple {quad} does not sum to B'={norm.B}")
        quads.append(quad)
    return quads
