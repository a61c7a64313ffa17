"""Words of B_X(n), orbit invariants of word pairs, the orbit matrices
M_{i,j}^{t,l}, and the index sets and counting formulas around them.

A word is stored as its digit vector over {0, ..., |X|}: digit 0 is the zero
letter L0 and digit x+1 is the letter x of X.  Words are enumerated in
mixed-radix order with position 0 most significant, so the word space is the
Kronecker product of n copies of V(Y) with Y ordered (L0, 0, 1, ..., |X|-1).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np
import scipy.sparse as sp

from ._combinat import binom, compositions, multinomial

L0 = -1
DEFAULT_WORD_CAP = 200_000


class Word(NamedTuple):
    """An element of B_X(n); entries are letters of X or ``L0``."""

    entries: tuple

    @property
    def support(self) -> frozenset:
        return frozenset(p for p, a in enumerate(self.entries) if a != L0)

    @property
    def rank(self) -> int:
        return sum(a != L0 for a in self.entries)


class OrbitInvariant(NamedTuple):
    i: int
    j: int
    t: int
    l: tuple

    def transpose(self, pairing: Sequence[int]) -> "OrbitInvariant":
        """Invariant of (b, a) given that of (a, b); ``pairing[u]`` is u*."""
        lt = [0] * len(self.l)
        for u, c in enumerate(self.l):
            lt[pairing[u]] += c
        return OrbitInvariant(self.j, self.i, self.t, tuple(lt))


class BlockIndex(NamedTuple):
    k: int
    s: int
    p: tuple


@dataclass(frozen=True)
class WordSpace:
    n: int
    x_size: int

    @property
    def q(self) -> int:
        return self.x_size + 1

    @property
    def size(self) -> int:
        return self.q ** self.n

    @cached_property
    def digits(self) -> np.ndarray:
        """``size x n`` digit array, row r = word number r."""
        idx = np.arange(self.size)
        out = np.empty((self.size, self.n), dtype=np.int64)
        for p in range(self.n - 1, -1, -1):
            out[:, p] = idx % self.q
            idx //= self.q
        return out

    @cached_property
    def ranks(self) -> np.ndarray:
        return (self.digits != 0).sum(axis=1)

    @cached_property
    def by_rank(self) -> tuple[np.ndarray, ...]:
        return tuple(np.nonzero(self.ranks == i)[0] for i in range(self.n + 1))

    def word(self, index: int) -> Word:
        return Word(tuple(int(d) - 1 for d in self.digits[index]))

    def index(self, word: Word) -> int:
        out = 0
        for a in word.entries:
            out = out * self.q + (a + 1)
        return out


def enumerate_words(n: int, x_size: int, cap: int = DEFAULT_WORD_CAP) -> WordSpace:
    if n < 0 or x_size < 1:
        raise ValueError("need n >= 0 and |X| >= 1")
    if (x_size + 1) ** n > cap:
        raise ValueError(f"|B_X(n)| = {(x_size + 1) ** n} exceeds the cap of {cap}")
    return WordSpace(n, x_size)


def orbit_type(a: Word, b: Word, table: np.ndarray) -> OrbitInvariant:
    """(|S(a)|, |S(b)|, |S(a) & S(b)|, C(a, b)) for words over the same alphabet."""
    if len(a.entries) != len(b.entries):
        raise ValueError("words have different lengths")
    m1 = int(table.max()) + 1
    l = [0] * m1
    for x, y in zip(a.entries, b.entries):
        if x != L0 and y != L0:
            l[table[x, y]] += 1
    return OrbitInvariant(a.rank, b.rank, sum(l), tuple(l))


def category_table(table: np.ndarray) -> np.ndarray:
    """Per-coordinate category of a digit pair (a_p, b_p).

    0: letter over L0 (counts i-t), 1: L0 over letter (counts j-t),
    2: L0 over L0, 3+u: both letters, in orbital u.
    """
    q = table.shape[0] + 1
    cat = np.empty((q, q), dtype=np.int64)
    cat[1:, 0] = 0
    cat[0, 1:] = 1
    cat[0, 0] = 2
    cat[1:, 1:] = 3 + table
    return cat


def pair_keys(dig_a: np.ndarray, dig_b: np.ndarray, cat: np.ndarray, n: int) -> np.ndarray:
    """Integer key of the orbit invariant for every pair (row of dig_a, row of dig_b).

    The key encodes the count of each coordinate category in base n+1, which
    determines (i, j, t, l) and vice versa.
    """
    base = n + 1
    weights = base ** np.arange(cat.max() + 1, dtype=np.int64)
    keys = np.zeros((dig_a.shape[0], dig_b.shape[0]), dtype=np.int64)
    for p in range(dig_a.shape[1]):
        keys += weights[cat[dig_a[:, p][:, None], dig_b[:, p][None, :]]]
    return keys


def invariant_key(inv: OrbitInvariant, n: int) -> int:
    counts = [inv.i - inv.t, inv.j - inv.t, n + inv.t - inv.i - inv.j, *inv.l]
    return sum(c * (n + 1) ** e for e, c in enumerate(counts))


def is_valid_invariant(inv: OrbitInvariant, n: int, m: int) -> bool:
    i, j, t, l = inv
    return (0 <= t <= min(i, j) and i + j - t <= n and len(l) == m + 1
            and all(c >= 0 for c in l) and sum(l) == t)


def build_M(space: WordSpace, inv: OrbitInvariant, table: np.ndarray) -> sp.csr_matrix:
    """Sparse 0-1 matrix with (a, b) entry 1 iff orbit_type(a, b) == inv."""
    m = int(table.max())
    inv = OrbitInvariant(*inv)
    if not is_valid_invariant(inv, space.n, m):
        raise ValueError(f"{inv} is not in I_X({space.n}) for m={m}")
    rows = space.by_rank[inv.i]
    cols = space.by_rank[inv.j]
    keys = pair_keys(space.digits[rows], space.digits[cols], category_table(table), space.n)
    r, c = np.nonzero(keys == invariant_key(inv, space.n))
    return sp.csr_matrix((np.ones(len(r)), (rows[r], cols[c])), shape=(space.size, space.size))


def index_set_I(n: int, m: int) -> list[OrbitInvariant]:
    return [OrbitInvariant(i, j, t, l)
            for i in range(n + 1) for j in range(n + 1) for t in range(min(i, j) + 1)
            if i + j - t <= n for l in compositions(t, m + 1)]


def index_set_I_level(n: int, m: int, i: int) -> list[tuple[int, tuple]]:
    return [(t, l) for t in range(max(0, 2 * i - n), i + 1) for l in compositions(t, m + 1)]


def index_set_J(n: int, m: int) -> list[BlockIndex]:
    return [BlockIndex(k, s, p)
            for k in range(n + 1) for s in range(max(0, 2 * k - n), k + 1)
            for p in compositions(s, m)]


def index_set_J_level(n: int, m: int, i: int) -> list[BlockIndex]:
    return [b for b in index_set_J(n, m) if b.k <= i <= n + b.s - b.k]


def dim_commutant(n: int, m: int) -> int:
    return binom(n + m + 3, m + 3)


def dim_level_commutant(n: int, m: int, i: int) -> int:
    if 2 * i <= n:
        return binom(m + i + 1, m + 1)
    return binom(m + i + 1, m + 1) - binom(m + 2 * i - n, m + 1)


def mu(n: int, k: int, s: int, p: Sequence[int], dims: Sequence[int]) -> int:
    """Number of semisymmetric Jordan chains with start rank k, offset s, type p.

    ``dims`` is (d_0, d_1, ..., d_m); d_0 is not used.
    """
    weight = 1
    for pr, d in zip(p, dims[1:]):
        weight *= d ** pr
    return (multinomial(n, (n - s, *p)) * weight
            * (binom(n - s, k - s) - binom(n - s, k - s - 1)))
