"""Engine selection over the recognizers, most specialized class first."""

from __future__ import annotations

from typing import Optional

from .chordal import solve_chordal
from .cograph import build_cotree, solve_cograph
from .errors import ClassMismatch, ContractError
from .graph import DEFAULT_BUDGET, Coloring, Instance, brute_force_decide
from .trivially_perfect import build_rooted_forest, greedy_tp_color

ENGINES = ("auto", "trivially-perfect", "cograph", "chordal", "brute")


def _tp(instance):
    forest = build_rooted_forest(instance.graph)
    return greedy_tp_color(forest, instance.chi, instance.delta)


def _cograph(instance):
    if instance.graph.n == 0:
        return ()
    return solve_cograph(instance, build_cotree(instance.graph))


def solve(instance: Instance, engine: str = "auto",
          budget: Optional[int] = DEFAULT_BUDGET) -> tuple[Optional[Coloring], str]:
    """Decide ``instance`` and return ``(coloring or None, class name)``.

    ``auto`` tries trivially perfect, then cograph, then chordal recognition
    and falls back to the brute-force search (class ``"general"``). A forced
    engine raises the matching :class:`ClassMismatch` on foreign input.
    """
    if engine == "brute":
        return brute_force_decide(instance, budget), "general"
    if engine == "trivially-perfect":
        return _tp(instance), "trivially-perfect"
    if engine == "cograph":
        return _cograph(instance), "cograph"
    if engine == "chordal":
        return solve_chordal(instance), "chordal"
    if engine != "auto":
        raise ContractError(f"unknown engine {engine!r}; choose from {ENGINES}")
    for name, run in (("trivially-perfect", _tp), ("cograph", _cograph), ("chordal", solve_chordal)):
        try:
            return run(instance), name
        except ClassMismatch:
            continue
    return brute_force_decide(instance, budget), "general"
