#!/usr/bin/env python3
"""Print the full degree-10 witness certificate with supporting detail."""

import sys

from permdeg.perm import format_perm
from permdeg.stabchain import build_chain, group_order
from permdeg.pipeline import witness_degree_10


def main() -> int:
    w = witness_degree_10()
    print(f"G = G(2,2,5) on 10 points, |G| = {build_chain(w.group).order}")
    print(f"generators: {', '.join(w.group.gen_strings())}")
    print(f"mu(G) = {w.mu_value}")
    print(f"C_Sym(10)(G) has order {group_order(w.centralizer)}")
    print(f"witness z = {format_perm(w.witness_element)} (order 2, z not in G)")
    print(f"mu(G x <z>) = {w.product_mu}")
    print(f"strict inequality: {w.product_mu} < {w.mu_value} + 2")
    if w.contradictions:
        for c in w.contradictions:
            print(f"CONTRADICTION: {c}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
