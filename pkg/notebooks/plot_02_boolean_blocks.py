"""
Block diagonalizing the Boolean algebra
=======================================

With a single letter the words of length n are the subsets of [n].  The
matrices M_{i,j}^t (rows of size i, columns of size j, meeting in t
points) span the S_n commutant, and an orthogonal symmetric Jordan basis
turns each one into small blocks, one per chain start k.
"""

import numpy as np

from wreathblock import boolean_scheme as bs

n = 4
sjb = bs.build_sjb(n)
print("chain starts", sjb.starts)
print("chain ends  ", sjb.ends())

# Normalize the chains into a unitary and conjugate M_{2,2}^1, the Johnson graph J(4, 2).
N, labels = sjb.normalized_matrix()
M = bs.boolean_M(n, 2, 2, 1)
conj = N.T @ M @ N
print("off-block mass", np.abs(conj).sum() - sum(
    abs(conj[a, b]) for a, (ca, _) in enumerate(labels) for b, (cb, _) in enumerate(labels) if ca == cb))

# Each block has a single entry, given in closed form.
for k, block in bs.schrijver_block(n, 2, 2, 1).items():
    print("k =", k, "entry", block[2 - k, 2 - k])

# On the middle level those entries are the eigenvalues of J(4, 2).
rows = bs.rank_subsets(n, 2)
print(np.round(np.linalg.eigvalsh(M[np.ix_(rows, rows)]), 6))
print([bs.delsarte_eigenvalue(n, 2, 1, k) for k in range(3)])
