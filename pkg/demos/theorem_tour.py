"""One weight block, both matrices, entry-by-entry agreement.

The transition matrix gamma rewrites a PBW monomial of one reduced word in
the PBW basis of the other; the intertwiner Phi maps the q-oscillator Fock
representation attached to one word onto the other's.  Computed completely
independently, the two matrices coincide.  This walks a small C2 block.
"""

from qpbw.intertwiner import PhiTable
from qpbw.pbw import transition_block
from qpbw.presets import preset, reverse
from qpbw.qfield import canonical_string

name = "C2"
weight = (2, 2)          # conserved pair (m2, m1)

p = preset(name)
phi = PhiTable(name)
rows, cols, ent = phi.block(weight)
tb = transition_block(name, weight)

print(f"{name} block at weight {weight}: "
      f"{len(rows)} outputs x {len(cols)} inputs\n")
print("output ket      input ket       Phi == gamma")
for C in rows:
    for B in cols:
        a = ent.get((C, B))
        if a is None:
            continue
        g = tb.gamma(reverse(C), reverse(B))
        s = canonical_string(a)
        assert canonical_string(g) == s
        print(f"{str(C):15} {str(B):15} {s}")

n = sum(1 for (C, B) in ent)
print(f"\n{n} nonzero entries; every one equals its PBW counterpart.")
print("Nothing here is numeric: each value is an exact polynomial in q.")
