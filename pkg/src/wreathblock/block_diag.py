"""Explicit block diagonalization of the commutant A_X(n).

``phi`` gives, for each basis matrix M_{i,j}^{t,l}, its image as one block per
(k, s, p) in J_X(n).  A block for start rank k and offset s has rows and
columns indexed by ranks k..n+s-k; arrays store them with offset -k.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._combinat import binom, multinomial
from .boolean_scheme import _sign, beta
from .generalized_boolean import OrbitInvariant, index_set_J, is_valid_invariant
from .group_action import SpectralTable
from .jordan_ssjb import TensorLabel, standard_vector


def margin_matrices(rows: Sequence[int], cols: Sequence[int]):
    """Nonnegative integer matrices with the given row and column sums.

    Filled row by row; each row is split over the columns within the column
    margins still left.
    """
    if any(r < 0 for r in rows) or any(c < 0 for c in cols) or sum(rows) != sum(cols):
        return
    nr, nc = len(rows), len(cols)

    def split(total, caps, j):
        if j == nc - 1:
            if total <= caps[j]:
                yield (total,)
            return
        rest = sum(caps[j + 1:])
        for v in range(max(0, total - rest), min(total, caps[j]) + 1):
            for tail in split(total - v, caps, j + 1):
                yield (v, *tail)

    def rec(r, caps, acc):
        if r == nr:
            yield tuple(acc)
            return
        for row in split(rows[r], caps, 0):
            yield from rec(r + 1, [c - v for c, v in zip(caps, row)], acc + [row])

    yield from rec(0, list(cols), [])


def lambda_sum(lam: np.ndarray, l: Sequence[int], p_plus: Sequence[int]) -> complex:
    """Sum over margin matrices r (rows l, columns p_plus) of
    prod_w multinomial(p_w; r(., w)) * prod_{u,w} lam[u, w]^r(u, w).

    Infeasible margins give 0; l = p_plus = 0 gives 1 (the all-zero matrix).
    """
    total = 0j
    for r in margin_matrices(l, p_plus):
        coef = 1
        for w, pw in enumerate(p_plus):
            coef *= multinomial(pw, [r[u][w] for u in range(len(l))])
        term = complex(coef)
        for u, row in enumerate(r):
            for w, e in enumerate(row):
                if e:
                    term *= lam[u, w] ** e
        total += term
    return total


def alpha(n: int, t: int, l: Sequence[int], p: Sequence[int], i: int, j: int, k: int,
          s: int, x_size: int, lam: np.ndarray) -> complex:
    p_plus = (t - s, *p)
    if t - s < 0:
        return 0j
    lsum = lambda_sum(lam, l, p_plus)
    if lsum == 0:
        return 0j
    power = math.sqrt(x_size) ** (i + j - 2 * t)
    return power * lsum * beta(n - s, t - s, i - s, j - s, k - s)


@dataclass
class BlockImage:
    """Phi of a commutant element: one square block per BlockIndex."""

    n: int
    blocks: dict
    source: OrbitInvariant | None = None

    def __matmul__(self, other: "BlockImage") -> "BlockImage":
        return BlockImage(self.n, {b: self.blocks[b] @ other.blocks[b] for b in self.blocks})

    def __add__(self, other: "BlockImage") -> "BlockImage":
        return BlockImage(self.n, {b: self.blocks[b] + other.blocks[b] for b in self.blocks})

    def scaled(self, c: complex) -> "BlockImage":
        return BlockImage(self.n, {b: c * v for b, v in self.blocks.items()}, self.source)

    def adjoint(self) -> "BlockImage":
        return BlockImage(self.n, {b: v.conj().T for b, v in self.blocks.items()})

    def max_diff(self, other: "BlockImage") -> float:
        return max((float(np.abs(self.blocks[b] - other.blocks[b]).max()) for b in self.blocks),
                   default=0.0)

    @classmethod
    def zero(cls, n: int, m: int) -> "BlockImage":
        return cls(n, {b: np.zeros((n + b.s - 2 * b.k + 1,) * 2, dtype=complex)
                       for b in index_set_J(n, m)})


def phi(n: int, inv: OrbitInvariant, spectral: SpectralTable) -> BlockImage:
    m = spectral.m
    if m == 0:
        raise ValueError("m = 0 (|X| = 1) is the Boolean case; use boolean_scheme.schrijver_block")
    inv = OrbitInvariant(*inv)
    if not is_valid_invariant(inv, n, m):
        raise ValueError(f"{inv} is not in I_X({n}) for m={m}")
    i, j, t, l = inv
    out = {}
    for b in index_set_J(n, m):
        k, s, p = b
        size = n + s - 2 * k + 1
        block = np.zeros((size, size), dtype=complex)
        if k <= i <= n + s - k and k <= j <= n + s - k:
            norm = (binom(n + s - 2 * k, i - k) * binom(n + s - 2 * k, j - k)) ** -0.5
            block[i - k, j - k] = norm * alpha(n, t, l, p, i, j, k, s, spectral.x_size,
                                               spectral.lam)
        out[b] = block
    return BlockImage(n, out, inv)


def johnson_eigenvalue(n: int, i: int, t: int, l: Sequence[int], k: int, s: int,
                       p: Sequence[int], x_size: int, lam: np.ndarray) -> complex:
    """Eigenvalue of M_{i,i}^{t,l} on the irreducible V_X(n, i, k, s, p)."""
    l = tuple(l)
    p = tuple(p)
    if not (max(0, 2 * i - n) <= t <= i and sum(l) == t and min(l, default=0) >= 0):
        raise ValueError(f"(t, l) = ({t}, {l}) not in I_X({n}, {i})")
    if not (0 <= s <= k <= min(i, n + s - i) and sum(p) == s and min(p, default=0) >= 0):
        raise ValueError(f"(k, s, p) = ({k}, {s}, {p}) not in J_X({n}, {i})")
    if t < s:
        return 0j
    lsum = lambda_sum(lam, l, (t - s, *p))
    tail = sum(_sign(u - t + s) * binom(u, t - s) * binom(n - k - u, i - s - u)
               * binom(i - k, i - s - u) for u in range(0, n - s + 1))
    return float(x_size) ** (i - t) * lsum * tail


def factorized_terms(n: int, inv: OrbitInvariant, spectral: SpectralTable,
                     label: TensorLabel) -> list[tuple[TensorLabel, complex]]:
    """M_{i,j}^{t,l} applied to v(A, f, B), as (label, coefficient) terms.

    Zero unless |B| = j-s; otherwise a common scalar times the sum of
    v(A, f, B') over B' in [n] - Sigma(A) with |B'| = i-s and |B & B'| = t-s.
    """
    i, j, t, l = inv
    s = label.offset
    if len(label.B) != j - s or t < s:
        return []
    p_plus = (t - s, *label.l[1:])
    coef = math.sqrt(spectral.x_size) ** (i + j - 2 * t) * lambda_sum(spectral.lam, l, p_plus)
    if coef == 0:
        return []
    B = set(label.B)
    outside = [q for q in label.free if q not in B]
    terms = []
    for keep in itertools.combinations(sorted(B), t - s):
        for add in itertools.combinations(outside, i - t):
            terms.append((label.with_B(set(keep) | set(add)), coef))
    return terms


def factorized_apply(n: int, inv: OrbitInvariant, spectral: SpectralTable,
                     label: TensorLabel) -> np.ndarray:
    out = np.zeros((spectral.x_size + 1) ** n, dtype=complex)
    for lab, c in factorized_terms(n, inv, spectral, label):
        out += c * standard_vector(lab, spectral)
    return out
