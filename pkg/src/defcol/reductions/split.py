from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ContractError
from ..graph import Instance


def role_name(role: tuple) -> str:
    head, *rest = role
    return f"{head}[{','.join(map(str, rest))}]"


@dataclass(frozen=True)
class SplitReduction:
    """A reduced instance on a split graph with a gadget role per vertex.

    Vertices ``0..clique_size-1`` form the clique, the rest the independent
    set.
    """

    instance: Instance
    roles: tuple
    clique_size: int
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.roles) != self.instance.graph.n:
            raise ContractError("every vertex needs a role")
        object.__setattr__(self, "_index", {r: v for v, r in enumerate(self.roles)})

    def vertex(self, *role) -> int:
        return self._index[tuple(role)]

    def group(self, kind: str) -> list[int]:
        return [v for v, r in enumerate(self.roles) if r[0] == kind]

    def annotations(self) -> dict:
        return {str(v): role_name(r) for v, r in enumerate(self.roles)}

    def to_dict(self) -> dict:
        return {
            "chi": self.instance.chi,
            "delta": self.instance.delta,
            "n": self.instance.graph.n,
            "clique": list(range(self.clique_size)),
            "annotations": self.annotations(),
        }
