#!/usr/bin/env python3
"""Writing parity as a NAND tree.

A 4-leaf NAND tree computes (l0 AND l1) OR (l2 AND l3).  Feeding it the
literals (a, b, ~a, ~b) gives XNOR(a,b) = (1+a+b) mod 2, and (a, ~b, ~a, b)
gives XOR(a,b).  Stacking the two gadgets writes the parity of k bits as a
k^2-leaf instance in which each variable owns its own disjoint block of
leaves; that is why evaluating a NAND tree is at least as hard as parity
on sqrt(N) bits.
"""

import itertools

from nandwalk import embed_parity, eval_nand, parity_blocks, parity_layout


def literal(var, neg):
    return ("~" if neg else "") + f"x{var}"


for k in (2, 4):
    print("=" * 66)
    print(f"k = {k} variables -> N = {k*k} leaves")
    print("=" * 66)
    layout = parity_layout(k)
    print("leaf literals: ", " ".join(literal(v, n) for v, n in layout))
    print("variable blocks:")
    for j, block in enumerate(parity_blocks(k)):
        print(f"  x{j}: leaf positions {list(block)}")
    print(f"\n{'assignment':>12} {'leaves':>18} {'root':>5} {'(1+sum)%2':>10}")
    shown = 0
    for x in itertools.product((0, 1), repeat=k):
        tree = embed_parity(x)
        got = eval_nand(tree)
        want = (1 + sum(x)) % 2
        mark = "" if got == want else "  <-- MISMATCH"
        print(f"{str(list(x)):>12} {tree.to_text():>18} {got:>5} {want:>10}{mark}")
        shown += 1
        if k > 2 and shown == 6:
            print(f"{'...':>12}")
            break

print()
print("=" * 66)
print("Exhaustive verification")
print("=" * 66)
for k in (2, 4, 8):
    bad = sum(
        eval_nand(embed_parity(x)) != (1 + sum(x)) % 2
        for x in itertools.product((0, 1), repeat=k)
    )
    print(f"  k={k}: {2**k} assignments, {bad} mismatches")

print()
print("flipping one variable only rewrites its own block:")
base = embed_parity([0, 0, 0, 0]).to_text()
flip = embed_parity([0, 1, 0, 0]).to_text()
diff = "".join("^" if a != b else " " for a, b in zip(base, flip))
print(f"  x=[0,0,0,0]: {base}")
print(f"  x=[0,1,0,0]: {flip}")
print(f"               {diff}")
