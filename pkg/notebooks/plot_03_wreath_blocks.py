"""
Blocks for the wreath product G wr S_n
======================================

Words over X with a zero letter L0 carry an action of G wr S_n.  The orbit
matrices M_{i,j}^{t,l} are conjugated by the unitary M(n), built from a
semisymmetric Jordan basis, into blocks indexed by (k, s, p).  Here we
check that against the closed form and read off Johnson-type eigenvalues.
"""

import numpy as np

from wreathblock import cyclic_group, spectral_table
from wreathblock.block_diag import johnson_eigenvalue, phi
from wreathblock.generalized_boolean import (
    OrbitInvariant, build_M, enumerate_words, index_set_I, index_set_J_level,
)
from wreathblock.group_action import orbital_table
from wreathblock.jordan_ssjb import build_unitary

action = cyclic_group(3)
st = spectral_table(action)
n = 2
space = enumerate_words(n, action.x_size)
table = orbital_table(action)
print(space.size, "words;", len(index_set_I(n, st.m)), "basis matrices")

U = build_unitary(n, st)
inv = OrbitInvariant(1, 2, 1, (0, 1, 0))
conj = U.matrix.conj().T @ build_M(space, inv, table).toarray() @ U.matrix

# Compare every chain block with the formula.
image = phi(n, inv, st)
worst = max(np.abs(conj[np.ix_(cols, cols)] - image.blocks[chain.block_index]).max()
            for chain, cols in zip(U.chains, U.chain_columns))
print("largest deviation from phi:", worst)

# Eigenvalues of M_{1,1}^{1,l} on the level of one-letter words.
for l in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
    vals = [johnson_eigenvalue(n, 1, 1, l, *b, st.x_size, st.lam) for b in index_set_J_level(n, st.m, 1)]
    print(l, np.round(vals, 3))
