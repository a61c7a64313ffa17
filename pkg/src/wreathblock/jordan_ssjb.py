"""Upper Boolean decomposition of V(B_X(n)) and its semisymmetric Jordan basis.

Coordinates of [n] are 0-based here.  A ``TensorLabel`` (l, A, f, B) names
the product vector v(A, f, B): position p carries the f_r(p)-th vector of
B_r when p is in A_r, the normalized all-ones vector z when p is in B, and
L0 otherwise.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import reduce

import numpy as np
import scipy.sparse as sp

from ._combinat import compositions
from .boolean_scheme import build_sjb
from .generalized_boolean import DEFAULT_WORD_CAP, BlockIndex, WordSpace, enumerate_words, index_set_J
from .group_action import SpectralTable


@dataclass(frozen=True)
class TensorLabel:
    n: int
    l: tuple
    A: tuple  # A[r-1] = sorted positions carrying a W_r vector
    f: tuple  # f[r-1][h] = which vector of B_r sits at A[r-1][h]
    B: tuple = ()

    @property
    def sigma(self) -> frozenset:
        return frozenset(itertools.chain.from_iterable(self.A))

    @property
    def free(self) -> tuple:
        """[n] minus Sigma(A), increasing; the order-preserving map gamma."""
        sig = self.sigma
        return tuple(p for p in range(self.n) if p not in sig)

    @property
    def rank(self) -> int:
        return len(self.sigma) + len(self.B)

    @property
    def offset(self) -> int:
        return sum(self.l[1:])

    def with_B(self, B) -> "TensorLabel":
        return TensorLabel(self.n, self.l, self.A, self.f, tuple(sorted(B)))

    def validate(self, dims) -> None:
        m = len(dims) - 1
        if len(self.l) != m + 1 or len(self.A) != m or len(self.f) != m:
            raise ValueError("label shape does not match the spectral table")
        if sum(self.l) != self.n:
            raise ValueError("l must be a composition of n")
        seen = set()
        for r, (a, fr) in enumerate(zip(self.A, self.f), start=1):
            if len(a) != self.l[r] or len(fr) != len(a):
                raise ValueError(f"|A_{r}| must equal l_{r} and match f_{r}")
            if any(not 0 <= v < dims[r] for v in fr):
                raise ValueError(f"f_{r} selects a vector outside B_{r}")
            if seen & set(a) or any(not 0 <= p < self.n for p in a):
                raise ValueError("the A_r must be disjoint subsets of [n]")
            seen |= set(a)
        if seen & set(self.B) or any(not 0 <= p < self.n for p in self.B):
            raise ValueError("B must lie in [n] minus Sigma(A)")


def _factor_vectors(label: TensorLabel, spectral: SpectralTable) -> list[np.ndarray]:
    q = spectral.x_size + 1
    factors = [None] * label.n
    for r, (a, fr) in enumerate(zip(label.A, label.f), start=1):
        for p, h in zip(a, fr):
            v = np.zeros(q, dtype=complex)
            v[1:] = spectral.basis[r][:, h]
            factors[p] = v
    zvec = np.zeros(q, dtype=complex)
    zvec[1:] = spectral.basis[0][:, 0]
    l0vec = np.zeros(q, dtype=complex)
    l0vec[0] = 1.0
    for p in range(label.n):
        if factors[p] is None:
            factors[p] = zvec if p in label.B else l0vec
    return factors


def standard_vector(label: TensorLabel, spectral: SpectralTable) -> np.ndarray:
    """Coordinates of v(A, f, B) in the word basis of B_X(n)."""
    label.validate(spectral.dims)
    if label.n == 0:
        return np.ones(1, dtype=complex)
    return reduce(np.kron, _factor_vectors(label, spectral))


def set_partitions(n: int, l: tuple) -> list[tuple]:
    """All (A_1, ..., A_m) with disjoint A_r of sizes l[1:], lexicographic."""
    out = []

    def rec(r, avail, acc):
        if r == len(l):
            out.append(tuple(acc))
            return
        for a in itertools.combinations(avail, l[r]):
            rest = tuple(p for p in avail if p not in a)
            rec(r + 1, rest, acc + [a])

    rec(1, tuple(range(n)), [])
    return out


def iter_AF(n: int, l: tuple, dims) -> list[TensorLabel]:
    """All labels (l, A, f) with B empty, ordered by A then f."""
    out = []
    for A in set_partitions(n, l):
        choices = [itertools.product(range(dims[r]), repeat=len(a))
                   for r, a in enumerate(A, start=1)]
        for f in itertools.product(*choices):
            out.append(TensorLabel(n, l, A, tuple(f)))
    return out


def all_labels(n: int, spectral: SpectralTable) -> list[TensorLabel]:
    """The index set of the orthonormal basis K_X(n)."""
    out = []
    for l in compositions(n, spectral.m + 1):
        for base in iter_AF(n, l, spectral.dims):
            free = base.free
            for size in range(len(free) + 1):
                for B in itertools.combinations(free, size):
                    out.append(base.with_B(B))
    return out


def up_operator(space: WordSpace) -> sp.csr_matrix:
    """Sparse matrix of U_n: each word maps to the sum of the words covering it."""
    rows, cols = [], []
    dig = space.digits
    for p in range(space.n):
        weight = space.q ** (space.n - 1 - p)
        src = np.nonzero(dig[:, p] == 0)[0]
        for x in range(1, space.q):
            rows.append(src + x * weight)
            cols.append(src)
    if not rows:
        return sp.csr_matrix((space.size, space.size))
    r = np.concatenate(rows)
    c = np.concatenate(cols)
    return sp.csr_matrix((np.ones(len(r)), (r, c)), shape=(space.size, space.size))


def up_action_check(label: TensorLabel, x_size: int) -> list[tuple[TensorLabel, float]]:
    """Expansion of U_n v(A, f, B): each cover B' of B in [n] - Sigma(A), weight sqrt|X|."""
    coef = math.sqrt(x_size)
    B = set(label.B)
    return [(label.with_B(B | {p}), coef) for p in label.free if p not in B]


@dataclass
class SSJBChain:
    k: int
    s: int
    p: tuple
    label: TensorLabel
    chain_index: int
    vectors: np.ndarray = field(repr=False)  # rows: ranks k .. n+s-k, un-normalized

    @property
    def block_index(self) -> BlockIndex:
        return BlockIndex(self.k, self.s, self.p)

    @property
    def end(self) -> int:
        return self.k + len(self.vectors) - 1


@dataclass
class SSJB:
    n: int
    spectral: SpectralTable
    groups: dict  # BlockIndex -> list[SSJBChain], in J_X(n) order

    @property
    def chains(self) -> list[SSJBChain]:
        return [c for g in self.groups.values() for c in g]


def build_ssjb(n: int, spectral: SpectralTable, cap: int = DEFAULT_WORD_CAP) -> SSJB:
    """Orthogonal SSJB of V(B_X(n)), grouped by (k, s, p).

    For every (l, A, f) the SJB of B(l_0) under sqrt|X| U is carried into
    V_(l, A, f) by sending a subset of {1..l_0} to v(A, f, gamma(subset)).
    """
    space = enumerate_words(n, spectral.x_size, cap)
    m = spectral.m
    scale = math.sqrt(spectral.x_size)
    groups = {b: [] for b in index_set_J(n, m)}
    for s in range(n + 1):
        l0 = n - s
        sjb = build_sjb(l0, scale)
        for p in compositions(s, m):
            l = (l0, *p)
            for base in iter_AF(n, l, spectral.dims):
                free = base.free
                images = np.empty((1 << l0, space.size), dtype=complex)
                for mask in range(1 << l0):
                    B = [free[e] for e in range(l0) if mask >> e & 1]
                    images[mask] = standard_vector(base.with_B(B), spectral)
                for c, (start, chain) in enumerate(zip(sjb.starts, sjb.chains)):
                    key = BlockIndex(start + s, s, p)
                    groups[key].append(SSJBChain(start + s, s, p, base, c, chain @ images))
    return SSJB(n, spectral, groups)


@dataclass
class BlockUnitary:
    n: int
    matrix: np.ndarray
    columns: list  # (chain number, rank) per column
    chains: list  # SSJBChain per chain number
    chain_columns: list  # column indices per chain number, bottom rank first


def build_unitary(n: int, spectral: SpectralTable, ssjb: SSJB | None = None,
                  cap: int = DEFAULT_WORD_CAP) -> BlockUnitary:
    """M(n): columns are the normalized SSJB vectors ordered by (k, s, p, chain, rank)."""
    if ssjb is None:
        ssjb = build_ssjb(n, spectral, cap)
    cols, labels, chain_cols = [], [], []
    chains = ssjb.chains
    for c, chain in enumerate(chains):
        idx = []
        for h, v in enumerate(chain.vectors):
            idx.append(len(cols))
            cols.append(v / np.linalg.norm(v))
            labels.append((c, chain.k + h))
        chain_cols.append(np.array(idx))
    return BlockUnitary(n, np.column_stack(cols), labels, chains, chain_cols)
