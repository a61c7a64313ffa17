"""Finite permutation groups acting on X, their orbitals, and the spectral table.

A group is given by generators, each an image array ``g`` with ``g[x]`` the
image of point ``x``.  Composition is ``(g*h)[x] = g[h[x]]``.
"""
from __future__ import annotations

import functools
import json
import os
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

DEFAULT_GROUP_CAP = 100_000


class GroupError(ValueError):
    """Invalid group description or an action outside the supported class."""


class ClusteringError(RuntimeError):
    """Common eigenspaces of the orbit operators could not be separated."""


@dataclass(frozen=True)
class GroupAction:
    x_size: int
    generators: tuple[tuple[int, ...], ...]
    elements: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class Orbital:
    index: int
    pairs: frozenset
    transpose_index: int


@dataclass(frozen=True)
class SpectralTable:
    """Joint eigen-data of the orbit operators f_0, ..., f_m.

    ``lam[u, w]`` is the scalar by which f_u acts on W_w and ``basis[w]`` is a
    ``|X| x d_w`` matrix whose orthonormal columns span W_w.
    """

    m: int
    dims: tuple[int, ...]
    lam: np.ndarray
    basis: tuple[np.ndarray, ...]

    @property
    def x_size(self) -> int:
        return sum(self.dims)


def _compose(g: Sequence[int], h: Sequence[int]) -> tuple[int, ...]:
    return tuple(g[h[x]] for x in range(len(h)))


def _is_permutation(g: Sequence[int], degree: int) -> bool:
    return len(g) == degree and sorted(g) == list(range(degree))


def load_group(spec, cap: int = DEFAULT_GROUP_CAP) -> GroupAction:
    """Build a GroupAction from ``{"degree": int, "generators": [[...], ...]}``.

    ``spec`` may also be a path to a JSON file with that content.
    """
    if isinstance(spec, (str, os.PathLike)):
        with open(spec) as fh:
            try:
                spec = json.load(fh)
            except json.JSONDecodeError as exc:
                raise GroupError(f"group file is not valid JSON: {exc}") from exc
    if not isinstance(spec, dict) or "degree" not in spec or "generators" not in spec:
        raise GroupError("group description needs 'degree' and 'generators'")
    degree = spec["degree"]
    if not isinstance(degree, int) or degree < 1:
        raise GroupError(f"degree must be a positive integer, got {degree!r}")
    gens = spec["generators"]
    if not isinstance(gens, list):
        raise GroupError("'generators' must be a list of image arrays")
    return from_generators(degree, gens, cap=cap)


def from_generators(degree: int, generators, cap: int = DEFAULT_GROUP_CAP) -> GroupAction:
    gens = []
    for g in generators:
        if not all(isinstance(v, (int, np.integer)) for v in g):
            raise GroupError(f"generator {g!r} has non-integer entries")
        g = tuple(int(v) for v in g)
        if not _is_permutation(g, degree):
            raise GroupError(f"generator {g!r} is not a permutation of 0..{degree - 1}")
        gens.append(g)
    identity = tuple(range(degree))
    seen = {identity}
    queue = deque([identity])
    while queue:
        h = queue.popleft()
        for g in gens:
            gh = _compose(g, h)
            if gh not in seen:
                seen.add(gh)
                if len(seen) > cap:
                    raise GroupError(f"group closure exceeds the cap of {cap} elements")
                queue.append(gh)
    elements = tuple(sorted(seen))
    orbit = {elem[0] for elem in elements}
    if len(orbit) != degree:
        raise GroupError("the action is not transitive")
    return GroupAction(degree, tuple(gens), elements)


def symmetric_group(k: int) -> GroupAction:
    if k == 1:
        return from_generators(1, [])
    gens = [[1, 0] + list(range(2, k)), list(range(1, k)) + [0]]
    return from_generators(k, gens)


def cyclic_group(k: int) -> GroupAction:
    """The regular action of Z_k on itself."""
    return from_generators(k, [list(range(1, k)) + [0]] if k > 1 else [])


def regular_action(action: GroupAction) -> GroupAction:
    """Left-translation action of ``action``'s group on its own elements."""
    elems = list(action.elements)
    pos = {g: i for i, g in enumerate(elems)}
    gens = [[pos[_compose(g, h)] for h in elems] for g in action.generators]
    return from_generators(len(elems), gens)


def orbital_table(action: GroupAction) -> np.ndarray:
    """``|X| x |X|`` integer array with entry (x, y) = u such that (x, y) lies in Z_u."""
    k = action.x_size
    table = -np.ones((k, k), dtype=np.int64)
    count = 0
    # row-major scan meets each orbit first at its smallest pair; (0, 0) comes
    # first, so the diagonal (one orbit, by transitivity) gets label 0
    for x in range(k):
        for y in range(k):
            if table[x, y] >= 0:
                continue
            for g in action.elements:
                table[g[x], g[y]] = count
            count += 1
    return table


def orbitals(action: GroupAction) -> list[Orbital]:
    table = orbital_table(action)
    m1 = int(table.max()) + 1
    out = []
    for u in range(m1):
        xs, ys = np.nonzero(table == u)
        pairs = frozenset(zip(xs.tolist(), ys.tolist()))
        x, y = int(xs[0]), int(ys[0])
        out.append(Orbital(u, pairs, int(table[y, x])))
    return out


def transpose_pairing(table: np.ndarray) -> tuple[int, ...]:
    m1 = int(table.max()) + 1
    star = [0] * m1
    for u in range(m1):
        x, y = np.argwhere(table == u)[0]
        star[u] = int(table[y, x])
    return tuple(star)


def orbit_matrix(action: GroupAction, u: int, table: np.ndarray | None = None) -> np.ndarray:
    if table is None:
        table = orbital_table(action)
    m = int(table.max())
    if not 0 <= u <= m:
        raise IndexError(f"orbital index {u} out of range 0..{m}")
    return (table == u).astype(complex)


def check_multiplicity_free(action: GroupAction) -> bool:
    """True iff the orbit operators pairwise commute."""
    table = orbital_table(action)
    mats = [(table == u).astype(np.int64) for u in range(int(table.max()) + 1)]
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            if not np.array_equal(mats[a] @ mats[b], mats[b] @ mats[a]):
                return False
    return True


def _lam_compare(a: np.ndarray, b: np.ndarray, tol: float) -> int:
    for x, y in zip(a, b):
        for p, q in ((x.real, y.real), (x.imag, y.imag)):
            if abs(p - q) > tol:
                return -1 if p < q else 1
    return 0


def spectral_table(action: GroupAction, seed: int = 0, tol: float = 1e-8,
                   retries: int = 5) -> SpectralTable:
    """Simultaneously diagonalize the orbit operators.

    A random Hermitian combination of the f_u and their adjoints is
    diagonalized and its eigenvalues are clustered at ``tol``; a fresh
    combination is drawn (up to ``retries`` times) until exactly m+1 clusters
    appear, each acted on by every f_u as a scalar.
    """
    if not check_multiplicity_free(action):
        raise GroupError("permutation representation is not multiplicity free "
                         "(orbit operators do not commute)")
    table = orbital_table(action)
    m1 = int(table.max()) + 1
    k = action.x_size
    mats = [(table == u).astype(complex) for u in range(m1)]
    rng = np.random.default_rng(seed)
    ones = np.ones(k) / np.sqrt(k)
    last = None
    for _ in range(retries):
        c_re = rng.standard_normal(m1)
        c_im = rng.standard_normal(m1)
        herm = sum(c_re[u] * (f + f.T) + c_im[u] * 1j * (f - f.T) for u, f in enumerate(mats))
        w, vecs = np.linalg.eigh(herm)
        scale = max(1.0, float(np.abs(w).max()))
        cuts = np.nonzero(np.diff(w) > tol * scale)[0] + 1
        clusters = np.split(np.arange(k), cuts)
        last = len(clusters)
        if len(clusters) != m1:
            continue
        spaces = []
        ok = True
        for idx in clusters:
            q, _ = np.linalg.qr(vecs[:, idx])
            lam = np.array([np.trace(q.conj().T @ f @ q) / q.shape[1] for f in mats])
            resid = max(np.linalg.norm(f @ q - lam[u] * q) for u, f in enumerate(mats))
            if resid > 1e3 * tol * scale:
                ok = False
                break
            spaces.append((lam, q))
        if not ok:
            continue
        trivial = int(np.argmax([np.linalg.norm(q.conj().T @ ones) for _, q in spaces]))
        lam0, q0 = spaces.pop(trivial)
        if q0.shape[1] != 1:
            continue
        spaces.sort(key=functools.cmp_to_key(lambda a, b: _lam_compare(a[0], b[0], tol)))
        lam_cols = [np.array([float(f.sum(axis=0)[0].real) for f in mats], dtype=complex)]
        basis = [ones.astype(complex).reshape(k, 1)]
        for lam, q in spaces:
            lam = lam.copy()
            lam[0] = 1.0  # f_0 is the identity
            lam_cols.append(lam)
            basis.append(q)
        return SpectralTable(
            m=m1 - 1,
            dims=tuple(b.shape[1] for b in basis),
            lam=np.column_stack(lam_cols),
            basis=tuple(basis),
        )
    raise ClusteringError(
        f"found {last} eigenvalue clusters at tol={tol}, expected {m1}; "
        "try a looser or tighter tolerance, or another seed")
