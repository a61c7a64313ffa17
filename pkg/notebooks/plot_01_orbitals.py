"""
Orbitals and the spectral table of a small group
================================================

A transitive permutation group G on X splits X x X into orbitals Z_0, ..., Z_m.
When the orbit operators commute they share eigenspaces W_0, ..., W_m, and
lambda(u, w) is the scalar by which f_u acts on W_w.
"""

import numpy as np

from wreathblock import cyclic_group, orbitals, spectral_table, symmetric_group

# The swap on two points: one diagonal orbital, one off-diagonal.
s2 = symmetric_group(2)
for orb in orbitals(s2):
    print(orb.index, sorted(orb.pairs), "transpose ->", orb.transpose_index)

print(spectral_table(s2).lam.real)

# Z_3 acting on itself.  Orbitals 1 and 2 are transposes of each other, so
# the table is complex: it is the character table of Z_3 up to column order.
c3 = cyclic_group(3)
st = spectral_table(c3)
print("dims", st.dims)
np.set_printoptions(precision=3, suppress=True)
print(st.lam)

# Columns sum to |X| on W_0 and to 0 elsewhere, since the f_u add up to J.
print(st.lam.sum(axis=0))
