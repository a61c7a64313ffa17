"""The Boolean algebra B(n): up/down operators, an orthogonal symmetric Jordan
basis, and the block and eigenvalue formulas for its S_n commutant.

Subsets of [n] = {1, ..., n} are n-bit integers (bit i-1 <=> element i);
vectors on B(n) are indexed by that integer.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from ._combinat import binom


@lru_cache(maxsize=None)
def rank_subsets(n: int, i: int) -> tuple[int, ...]:
    """Bitmasks of the i-subsets of [n], in increasing numeric order."""
    return tuple(s for s in range(1 << n) if bin(s).count("1") == i)


def _check_rank(n: int, i: int, lo: int, hi: int) -> None:
    if not lo <= i <= hi:
        raise IndexError(f"rank {i} out of range {lo}..{hi} for n={n}")


def up_matrix(n: int, i: int) -> np.ndarray:
    """0-1 matrix of U from rank i to rank i+1 (rows: (i+1)-sets, cols: i-sets)."""
    _check_rank(n, i, 0, n - 1)
    rows = rank_subsets(n, i + 1)
    cols = rank_subsets(n, i)
    out = np.zeros((len(rows), len(cols)))
    for c, a in enumerate(cols):
        for r, b in enumerate(rows):
            if a & b == a:
                out[r, c] = 1.0
    return out


def down_matrix(n: int, i: int) -> np.ndarray:
    """0-1 matrix of D from rank i to rank i-1; the transpose of ``up_matrix(n, i-1)``."""
    _check_rank(n, i, 1, n)
    return up_matrix(n, i - 1).T.copy()


def up_operator(n: int) -> np.ndarray:
    """Dense 2^n x 2^n matrix of U on all of V(B(n))."""
    size = 1 << n
    out = np.zeros((size, size))
    for a in range(size):
        for e in range(n):
            if not a >> e & 1:
                out[a | 1 << e, a] = 1.0
    return out


@dataclass
class BooleanJordanBasis:
    """Orthogonal SJB of V(B(n)) for the operator ``scale * U``.

    ``chains[c]`` is an array whose rows are the chain vectors (bottom rank
    first) and ``starts[c]`` is the rank of its first vector.
    """

    n: int
    scale: float
    chains: list
    starts: list

    def ends(self) -> list[int]:
        return [k + len(c) - 1 for k, c in zip(self.starts, self.chains)]

    def normalized_matrix(self) -> tuple[np.ndarray, list[tuple[int, int]]]:
        """The unitary N(n) and, per column, its (chain number, rank) label."""
        cols, labels = [], []
        for c, (k, chain) in enumerate(zip(self.starts, self.chains)):
            for h, v in enumerate(chain):
                cols.append(v / np.linalg.norm(v))
                labels.append((c, k + h))
        return np.column_stack(cols), labels


@lru_cache(maxsize=None)
def _build_sjb_cached(n: int, scale: float) -> BooleanJordanBasis:
    size = 1 << n
    up = scale * up_operator(n)
    chains, starts = [], []
    for k in range(n // 2 + 1):
        subsets = rank_subsets(n, k)
        if k == 0:
            kernel = np.ones((1, 1))
        else:
            kernel = scipy.linalg.null_space(down_matrix(n, k))
        expected = binom(n, k) - binom(n, k - 1)
        if kernel.shape[1] != expected:
            raise RuntimeError(f"kernel of D at rank {k} has dimension {kernel.shape[1]}, "
                               f"expected {expected}")
        for col in kernel.T:
            v = np.zeros(size)
            v[list(subsets)] = col
            chain = [v]
            for _ in range(n - 2 * k):
                chain.append(up @ chain[-1])
            chains.append(np.array(chain))
            starts.append(k)
    return BooleanJordanBasis(n, scale, chains, starts)


def build_sjb(n: int, scale: float = 1.0) -> BooleanJordanBasis:
    """Orthogonal symmetric Jordan basis of V(B(n)) under ``scale * U``.

    Chains starting at rank k are seeded by an orthonormal basis of the kernel
    of D on rank k and raised with ``scale * U`` up to rank n-k.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _build_sjb_cached(int(n), float(scale))


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def beta(n: int, t: int, i: int, j: int, k: int) -> int:
    """Exact integer coefficient of the Boolean block formula.

    Terms with u > min(i, j) vanish through the binomials, so the sum stops
    at min(n, i, j) (the full range 0..n gives the same value).
    """
    total = 0
    for u in range(0, max(-1, min(n, i, j)) + 1):
        total += (_sign(u - t) * binom(u, t) * binom(n - 2 * k, u - k)
                  * binom(n - k - u, i - u) * binom(n - k - u, j - u))
    return total


def schrijver_block(n: int, i: int, j: int, t: int) -> dict[int, np.ndarray]:
    """Blocks of Phi(M_{i,j}^t), one per k in 0..n//2.

    Block k has rows/columns indexed by ranks k..n-k (stored with offset -k).
    """
    if not (0 <= t <= min(i, j) and i + j - t <= n):
        raise ValueError(f"invalid (i, j, t) = ({i}, {j}, {t}) for n={n}")
    out = {}
    for k in range(n // 2 + 1):
        block = np.zeros((n - 2 * k + 1, n - 2 * k + 1))
        if k <= i <= n - k and k <= j <= n - k:
            norm = (binom(n - 2 * k, i - k) * binom(n - 2 * k, j - k)) ** -0.5
            block[i - k, j - k] = norm * beta(n, t, i, j, k)
        out[k] = block
    return out


def delsarte_eigenvalue(n: int, i: int, t: int, k: int) -> int:
    """Eigenvalue of M_{i,i}^t on V(n, i, k), the Johnson-scheme eigenvalue."""
    if not (0 <= i <= n and max(0, 2 * i - n) <= t <= i and 0 <= k <= min(i, n - i)):
        raise ValueError(f"invalid (n, i, t, k) = ({n}, {i}, {t}, {k})")
    # the written range u <= n reduces to u <= i: C(i-k, i-u) = 0 for u > i
    return sum(_sign(u - t) * binom(u, t) * binom(n - k - u, i - u) * binom(i - k, i - u)
               for u in range(0, i + 1))


def boolean_M(n: int, i: int, j: int, t: int) -> np.ndarray:
    """Dense 0-1 matrix M_{i,j}^t on B(n) (row a, column b)."""
    size = 1 << n
    out = np.zeros((size, size))
    for a in rank_subsets(n, i):
        for b in rank_subsets(n, j):
            if bin(a & b).count("1") == t:
                out[a, b] = 1.0
    return out


def boolean_invariants(n: int) -> list[tuple[int, int, int]]:
    return [(i, j, t) for i in range(n + 1) for j in range(n + 1)
            for t in range(min(i, j) + 1) if i + j - t <= n]
