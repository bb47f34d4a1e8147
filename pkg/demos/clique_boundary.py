"""A clique on chi*(delta+1) vertices is colorable, one more vertex is not.

Each engine is asked both questions to show the boundary is sharp.
"""

from defcol import (
    Graph,
    Instance,
    brute_force_decide,
    build_cotree,
    build_rooted_forest,
    greedy_tp_color,
    solve_chordal,
    solve_few_colors,
    solve_small_deficiency,
)


def engines(g, chi, delta):
    tree = build_cotree(g)
    inst = Instance(g, chi, delta)
    return {
        "brute": brute_force_decide(inst),
        "greedy": greedy_tp_color(build_rooted_forest(g), chi, delta),
        "small-def": solve_small_deficiency(tree, chi, delta),
        "few-colors": solve_few_colors(tree, chi, delta),
        "chordal": solve_chordal(inst),
    }


if __name__ == "__main__":
    for chi, delta in [(1, 1), (2, 1), (2, 2), (3, 1)]:
        k = chi * (delta + 1)
        for size in (k, k + 1):
            answers = engines(Graph.complete(size), chi, delta)
            row = " ".join(f"{name}={'Y' if col else 'N'}" for name, col in answers.items())
            print(f"K{size:<2} chi={chi} delta={delta}: {row}")
