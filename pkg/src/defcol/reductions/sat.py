"""3-SAT to Defective Coloring on split graphs with fixed deficiency.

For ``delta = 1`` each variable ``x_i`` owns a clique quadruple
``u_i^A..u_i^D`` and independent vertices ``z_i^A..z_i^D``; each clause owns
an independent vertex ``v_j``. With ``chi = 2n`` every color covers exactly
two clique vertices of one quadruple, and pairing ``A`` with ``B`` encodes
"true". Larger ``delta`` pads each quadruple with ``delta - 1`` extra clique
vertices on the ``A`` and on the ``D`` side and drops ``z_i^B, z_i^C``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Union

from ..errors import ContractError, ExtractionError, ParseError
from ..graph import Coloring, Graph, Instance, verify_coloring
from .split import SplitReduction


@dataclass(frozen=True)
class CnfFormula:
    """3-CNF over variables ``1..num_vars``; literals are signed ints.

    A clause may mention a variable more than once (even with both signs);
    the gadget stays correct because a clause vertex only gains extra
    non-neighbors inside that variable's quadruple.
    """

    num_vars: int
    clauses: tuple

    def __post_init__(self):
        for j, clause in enumerate(self.clauses):
            if len(clause) != 3:
                raise ContractError(f"clause {j + 1} has {len(clause)} literals, need exactly 3")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ContractError(f"literal {lit} outside variables 1..{self.num_vars}")

    def satisfied_by(self, assignment: Mapping[int, bool]) -> bool:
        return all(any(assignment[abs(l)] == (l > 0) for l in clause) for clause in self.clauses)

    def satisfying_assignment(self) -> Optional[dict]:
        """Truth-table search; fine for the handful of variables used in tests."""
        for bits in itertools.product((True, False), repeat=self.num_vars):
            a = dict(enumerate(bits, start=1))
            if self.satisfied_by(a):
                return a
        return None

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {len(self.clauses)}"]
        lines += [" ".join(map(str, c)) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"


def parse_cnf(text: str) -> CnfFormula:
    """Parse DIMACS ``.cnf``; every clause must have exactly three literals."""
    num_vars = None
    clauses = []
    pending: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "c%":
            continue
        if line.startswith("p"):
            fields = line.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise ParseError(f"malformed problem line {line!r}", lineno)
            try:
                num_vars = int(fields[2])
            except ValueError:
                raise ParseError("non-integer variable count", lineno) from None
            continue
        if num_vars is None:
            raise ParseError("clause before problem line", lineno)
        try:
            lits = [int(t) for t in line.split()]
        except ValueError:
            raise ParseError(f"non-integer literal in {line!r}", lineno) from None
        for lit in lits:
            if lit == 0:
                if len(pending) != 3:
                    raise ParseError(f"clause with {len(pending)} literals, need 3", lineno)
                clauses.append(tuple(pending))
                pending = []
            else:
                if abs(lit) > num_vars:
                    raise ParseError(f"literal {lit} exceeds declared variables", lineno)
                pending.append(lit)
    if num_vars is None:
        raise ParseError("missing 'p cnf' header")
    if pending:
        raise ParseError("last clause is not terminated by 0")
    return CnfFormula(num_vars, tuple(clauses))


SIDES = "ABCD"


def reduce_3sat(formula: CnfFormula, delta: int) -> SplitReduction:
    """Split graph that is ``(2n, delta)``-colorable iff ``formula`` is satisfiable.

    Vertex order: per variable ``u_i^A..u_i^D`` then (``delta >= 2``) the
    padding blocks ``UA_i`` and ``UD_i``; then per variable its ``z``
    vertices; then one ``v_j`` per clause.
    """
    if delta < 1:
        raise ContractError("the 3-SAT gadget needs delta >= 1")
    n = formula.num_vars
    roles: list[tuple] = []
    for i in range(1, n + 1):
        roles.extend(("u", i, k) for k in SIDES)
        if delta >= 2:
            roles.extend(("UA", i, t) for t in range(delta - 1))
            roles.extend(("UD", i, t) for t in range(delta - 1))
    clique_size = len(roles)
    z_sides = SIDES if delta == 1 else "AD"
    for i in range(1, n + 1):
        roles.extend(("z", i, k) for k in z_sides)
    roles.extend(("v", j) for j in range(1, len(formula.clauses) + 1))
    index = {r: v for v, r in enumerate(roles)}

    non_edges = set()
    for i in range(1, n + 1):
        for k in z_sides:
            z = index["z", i, k]
            non_edges.update((index["u", i, k2], z) for k2 in SIDES if k2 != k)
        if delta >= 2:
            for t in range(delta - 1):
                non_edges.add((index["UD", i, t], index["z", i, "A"]))
                non_edges.add((index["UA", i, t], index["z", i, "D"]))
    for j, clause in enumerate(formula.clauses, start=1):
        v = index["v", j]
        for lit in clause:
            i = abs(lit)
            non_edges.add((index["u", i, "A"], v))
            non_edges.add((index["u", i, "B" if lit > 0 else "C"], v))
            if delta >= 2:
                non_edges.update((index["UA", i, t], v) for t in range(delta - 1))

    edges = list(itertools.combinations(range(clique_size), 2))
    edges += [(u, z) for u in range(clique_size) for z in range(clique_size, len(roles)) if (u, z) not in non_edges]
    graph = Graph.from_edges(len(roles), edges)
    return SplitReduction(Instance(graph, 2 * n, delta), tuple(roles), clique_size)


def _assignment_dict(assignment: Union[Mapping[int, bool], Sequence[bool]], n: int) -> dict:
    if isinstance(assignment, Mapping):
        a = {int(k): bool(v) for k, v in assignment.items()}
    else:
        a = {i: bool(v) for i, v in enumerate(assignment, start=1)}
    if set(a) != set(range(1, n + 1)):
        raise ContractError(f"assignment must cover variables 1..{n}")
    return a


def witness_sat_forward(red: SplitReduction, assignment) -> Coloring:
    """Coloring from a satisfying assignment.

    Quadruple ``i`` uses colors ``2i-1``/``2i``: ``A`` shares ``2i-1`` with
    ``B`` when ``x_i`` is true and with ``C`` otherwise; padding ``UA_i``
    takes ``2i-1`` and ``UD_i`` takes ``2i``. Every independent vertex then
    takes the lowest color whose clique class it is not adjacent to.
    """
    g, chi = red.instance.graph, red.instance.chi
    a = _assignment_dict(assignment, chi // 2)
    color = [0] * g.n
    for v, role in enumerate(red.roles):
        kind, i = role[0], role[1]
        if kind == "u":
            partner = "B" if a[i] else "C"
            color[v] = 2 * i - 1 if role[2] in ("A", partner) else 2 * i
        elif kind == "UA":
            color[v] = 2 * i - 1
        elif kind == "UD":
            color[v] = 2 * i
    classes = {c: {v for v in range(red.clique_size) if color[v] == c} for c in range(1, chi + 1)}
    for v in range(red.clique_size, g.n):
        pick = next((c for c in range(1, chi + 1) if not (classes[c] & g.adj[v])), None)
        if pick is None:
            name = "v%d" % red.roles[v][1] if red.roles[v][0] == "v" else str(red.roles[v])
            raise ContractError(f"no color for {name}: the assignment does not satisfy the formula")
        color[v] = pick
    return tuple(color)


def witness_sat_backward(red: SplitReduction, coloring: Sequence[int], formula: Optional[CnfFormula] = None) -> dict:
    """Assignment from a valid ``(2n, delta)``-coloring: ``x_i`` is true iff
    ``u_i^A`` and ``u_i^B`` share a color.

    Every clique color class must stay inside one variable's block; if it
    does not, or ``formula`` is given and not satisfied, raises
    :class:`ExtractionError`.
    """
    if not verify_coloring(red.instance, coloring).valid:
        raise ContractError("coloring is not a valid (2n, delta)-coloring")
    owner: dict[int, int] = {}
    for v in range(red.clique_size):
        i = red.roles[v][1]
        if owner.setdefault(coloring[v], i) != i:
            raise ExtractionError(f"color {coloring[v]} spans several variable blocks")
    n = red.instance.chi // 2
    a = {i: coloring[red.vertex("u", i, "A")] == coloring[red.vertex("u", i, "B")] for i in range(1, n + 1)}
    if formula is not None and not formula.satisfied_by(a):
        raise ExtractionError("extracted assignment does not satisfy the formula")
    return a
