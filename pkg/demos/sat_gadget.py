"""Encode a small 3-CNF formula as a split-graph coloring instance and back."""

from defcol import brute_force_decide, verify_coloring
from defcol.chordal import recognize_split
from defcol.reductions import CnfFormula, reduce_3sat, witness_sat_backward, witness_sat_forward

if __name__ == "__main__":
    formulas = {
        "satisfiable": CnfFormula(2, ((1, 2, 2), (-1, 2, 2))),
        "unsatisfiable": CnfFormula(1, ((1, 1, 1), (-1, -1, -1))),
    }
    for label, f in formulas.items():
        red = reduce_3sat(f, 1)
        g = red.instance.graph
        K, S = recognize_split(g)
        print(f"{label}: {f.clauses}")
        chi, delta = red.instance.chi, red.instance.delta
        print(f"  graph n={g.n} m={g.m}, clique part {len(K)}, independent part {len(S)}, chi={chi} delta={delta}")
        col = brute_force_decide(red.instance)
        if col is None:
            print(f"  no ({chi},{delta})-coloring exists")
            continue
        a = witness_sat_backward(red, col, f)
        print(f"  coloring found, recovered assignment {a}, satisfies: {f.satisfied_by(a)}")
        fwd = witness_sat_forward(red, a)
        print(f"  re-encoded coloring valid: {verify_coloring(red.instance, fwd).valid}")
