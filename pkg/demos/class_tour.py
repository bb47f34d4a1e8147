"""Solve one instance from each supported graph class and certify the answer."""

from defcol import Instance, solve, verify_coloring
from defcol.generators import generate, random_graph

CASES = [
    # (class, n, seed, chi, delta)
    ("tp", 9, 7, 2, 1),
    ("cograph", 10, 7, 3, 1),
    ("chordal", 10, 0, 2, 1),
    ("chordal", 10, 20, 2, 1),
    ("split", 10, 7, 3, 2),
]


def show(label, g, chi, delta):
    inst = Instance(g, chi, delta)
    col, cls = solve(inst)
    verdict = "NO" if col is None else "YES"
    print(f"{label:>8}: n={g.n:2d} m={g.m:2d} chi={chi} delta={delta} -> {verdict} via {cls}")
    if col is not None:
        report = verify_coloring(inst, col)
        print(f"{'':>10}coloring {col}  max deficiency {report.max_deficiency}")


if __name__ == "__main__":
    for cls, n, seed, chi, delta in CASES:
        show(cls, generate(cls, n, seed=seed), chi, delta)
    # no class structure: falls back to the exhaustive search
    show("random", random_graph(8, 0.5, seed=7), 2, 1)
