"""Brute-force oracles for the block diagonalization.

Each oracle recomputes its quantity from raw word pairs, dense linear algebra
or explicit group elements, and compares it with the formula path.  Results
come back as ``OracleReport`` records.
"""
from __future__ import annotations

import functools
import json
import time
from dataclasses import asdict, dataclass, field
from typing import Iterable

import numpy as np
import scipy.sparse as sp
from scipy.optimize import linear_sum_assignment
from scipy.sparse.csgraph import connected_components

from . import boolean_scheme as bs
from .block_diag import BlockImage, factorized_apply, johnson_eigenvalue, phi
from .generalized_boolean import (
    OrbitInvariant, WordSpace, build_M, category_table, enumerate_words, index_set_I,
    index_set_I_level, index_set_J_level, mu, pair_keys,
)
from .group_action import GroupAction, orbital_table, spectral_table, transpose_pairing
from .jordan_ssjb import (
    BlockUnitary, all_labels, build_ssjb, build_unitary, standard_vector,
    up_operator,
)

DEFAULT_TOL = 1e-8
ORBIT_COUNT_CAP = 5_000
CONJUGATION_CAP = 256
EIGEN_CAP = 512


@dataclass
class OracleReport:
    name: str
    params: dict
    deviation: float
    tolerance: float
    passed: bool = field(init=False)
    seconds: float = 0.0
    seed: int | None = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        self.deviation = float(self.deviation)
        self.passed = bool(self.deviation <= self.tolerance)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, default=float)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        args = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return (f"{status}  {self.name}({args})  deviation={self.deviation:.3e}  "
                f"tol={self.tolerance:.1e}  {self.seconds:.2f}s")


def _timed(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        report = fn(*args, **kwargs)
        report.seconds = time.perf_counter() - t0
        return report
    return wrapper


def _group_params(action: GroupAction, n: int) -> dict:
    return {"x_size": action.x_size, "order": action.order, "n": n}


# ---------------------------------------------------------------- orbits

def orbit_count_oracle(action: GroupAction, n: int, cap: int = ORBIT_COUNT_CAP,
                       chunk: int = 256) -> int:
    """Number of distinct orbit invariants over all pairs in B_X(n)^2."""
    space = WordSpace(n, action.x_size)
    if space.size > cap:
        raise ValueError(f"|B_X(n)| = {space.size} exceeds the oracle cap of {cap}")
    cat = category_table(orbital_table(action))
    dig = space.digits
    seen = set()
    for lo in range(0, space.size, chunk):
        keys = pair_keys(dig[lo:lo + chunk], dig, cat, n)
        seen.update(np.unique(keys).tolist())
    return len(seen)


def wreath_word_permutation(space: WordSpace, gs: Iterable, pi) -> np.ndarray:
    """Index permutation of B_X(n) for (g_1, ..., g_n, pi): b_i = g_i a_{pi^-1(i)}."""
    dig = space.digits
    inv_pi = np.argsort(pi)
    out = np.empty_like(dig)
    for i, g in enumerate(gs):
        lut = np.concatenate([[0], np.asarray(g) + 1])
        out[:, i] = lut[dig[:, inv_pi[i]]]
    weights = space.q ** np.arange(space.n - 1, -1, -1)
    return out @ weights if space.n else np.zeros(1, dtype=np.int64)


def random_wreath_element(action: GroupAction, n: int, rng) -> tuple[list, np.ndarray]:
    gs = [action.elements[rng.integers(action.order)] for _ in range(n)]
    return gs, rng.permutation(n)


def wreath_generators(action: GroupAction, n: int) -> list[tuple[list, list]]:
    ident = tuple(range(action.x_size))
    gens = []
    for g in action.generators:
        gens.append(([g] + [ident] * (n - 1), list(range(n))))
    if n >= 2:
        gens.append(([ident] * n, [1, 0] + list(range(2, n))))
        gens.append(([ident] * n, list(range(1, n)) + [0]))
    return gens


def wreath_orbit_count(action: GroupAction, n: int, cap: int = 400) -> int:
    """Orbits of the wreath product on B_X(n)^2 by connected components.

    Uses only the group generators, not the orbit invariant.
    """
    space = WordSpace(n, action.x_size)
    if space.size > cap:
        raise ValueError(f"|B_X(n)| = {space.size} exceeds the cap of {cap}")
    size = space.size
    pair = np.arange(size * size)
    a, b = pair // size, pair % size
    rows, cols = [], []
    for gs, pi in wreath_generators(action, n):
        perm = wreath_word_permutation(space, gs, pi)
        rows.append(pair)
        cols.append(perm[a] * size + perm[b])
    if not rows:
        return size * size
    graph = sp.csr_matrix((np.ones(len(rows) * len(pair)),
                           (np.concatenate(rows), np.concatenate(cols))),
                          shape=(size * size, size * size))
    count, _ = connected_components(graph, directed=True, connection="weak")
    return int(count)


@_timed
def averaged_commutant_oracle(action: GroupAction, n: int, samples: int = 100, seed: int = 0,
                              matrices: dict | None = None) -> OracleReport:
    """Check that every M_{i,j}^{t,l} is fixed by conjugation with sampled wreath elements.

    ``matrices`` (invariant -> sparse or dense matrix) replaces the built
    basis, which is how a corrupted matrix is fed in as a negative control.
    """
    space = enumerate_words(n, action.x_size)
    table = orbital_table(action)
    m = int(table.max())
    if matrices is None:
        matrices = {inv: build_M(space, inv, table) for inv in index_set_I(n, m)}
    dense = {inv: (M.toarray() if sp.issparse(M) else np.asarray(M)) for inv, M in matrices.items()}
    rng = np.random.default_rng(seed)
    elems = [([tuple(range(action.x_size))] * n, np.arange(n))]
    elems += [random_wreath_element(action, n, rng) for _ in range(samples)]
    worst = 0.0
    for gs, pi in elems:
        perm = wreath_word_permutation(space, gs, pi)
        for M in dense.values():
            # (tau M tau^-1)(tau a, tau b) = M(a, b)
            moved = np.empty_like(M)
            moved[np.ix_(perm, perm)] = M
            worst = max(worst, float(np.abs(moved - M).max()))
    return OracleReport("averaged_commutant", {**_group_params(action, n), "samples": samples},
                        worst, 0.0, seed=seed)


# ---------------------------------------------------------- conjugation

def basis_matrices(space: WordSpace, table: np.ndarray, invariants) -> dict:
    return {inv: build_M(space, inv, table).toarray() for inv in invariants}


def corrupt_unitary(unitary: BlockUnitary, column: int = 0, amount: float = 0.05) -> BlockUnitary:
    """Copy of ``unitary`` with one column mixed with its neighbour (negative control)."""
    mat = unitary.matrix.copy()
    other = (column + 1) % mat.shape[1]
    mat[:, column] = mat[:, column] + amount * mat[:, other]
    mat[:, column] /= np.linalg.norm(mat[:, column])
    return BlockUnitary(unitary.n, mat, unitary.columns, unitary.chains, unitary.chain_columns)


def flip_entry(matrix: np.ndarray) -> np.ndarray:
    """Copy of a 0-1 matrix with its first nonzero entry set to 0 and the next entry toggled."""
    out = np.array(matrix, dtype=float, copy=True)
    r, c = np.argwhere(out != 0)[0]
    out[r, c] = 0.0
    out[r, (c + 1) % out.shape[1]] = 1.0 - out[r, (c + 1) % out.shape[1]]
    return out


@_timed
def conjugation_oracle(action: GroupAction, n: int, tol: float = DEFAULT_TOL,
                       unitary: BlockUnitary | None = None, matrices: dict | None = None,
                       seed: int = 0, cap: int = CONJUGATION_CAP) -> OracleReport:
    """Dense M(n)^* M M(n) for every basis matrix M, compared with ``phi``.

    Reported deviations: entries outside the chain blocks, differences
    between blocks of chains sharing (k, s, p), and differences from phi.
    """
    space = enumerate_words(n, action.x_size)
    if space.size > cap:
        raise ValueError(f"|B_X(n)| = {space.size} exceeds the conjugation cap of {cap}")
    st = spectral_table(action, seed=seed)
    table = orbital_table(action)
    if unitary is None:
        unitary = build_unitary(n, st)
    invariants = index_set_I(n, st.m)
    if matrices is None:
        matrices = basis_matrices(space, table, invariants)
    U = unitary.matrix
    mask = np.zeros(U.shape, dtype=bool)
    for idx in unitary.chain_columns:
        mask[np.ix_(idx, idx)] = True
    off = dup = formula = 0.0
    for inv in invariants:
        conj = U.conj().T @ matrices[inv] @ U
        off = max(off, float(np.abs(conj[~mask]).max(initial=0.0)))
        image = phi(n, inv, st)
        first = {}
        for c, chain in enumerate(unitary.chains):
            idx = unitary.chain_columns[c]
            block = conj[np.ix_(idx, idx)]
            key = chain.block_index
            if key in first:
                dup = max(dup, float(np.abs(block - first[key]).max()))
            else:
                first[key] = block
            formula = max(formula, float(np.abs(block - image.blocks[key]).max()))
    return OracleReport("conjugation", {**_group_params(action, n), "invariants": len(invariants)},
                        max(off, dup, formula), tol, seed=seed,
                        details={"off_block": off, "duplicate_blocks": dup, "phi": formula})


# ---------------------------------------------------------- eigenvalues

def _multiset_distance(a: np.ndarray, b: np.ndarray) -> float:
    cost = np.abs(a[:, None] - b[None, :])
    r, c = linear_sum_assignment(cost)
    return float(cost[r, c].max(initial=0.0))


@_timed
def eigen_oracle(action: GroupAction, n: int, i: int, tol: float = DEFAULT_TOL,
                 seed: int = 0, cap: int = EIGEN_CAP) -> OracleReport:
    """Eigenvalues of M_{i,i}^{t,l} on the rank-i level against johnson_eigenvalue.

    Three checks: the scalar action on each span of rank-i SSJB vectors
    with index (k, s, p); the full spectrum of the dense level matrix
    against the predicted eigenvalues with multiplicities mu(n, k, s, p);
    and that distinct (k, s, p) have distinct joint eigenvalue vectors.
    """
    space = enumerate_words(n, action.x_size)
    level = space.by_rank[i]
    if len(level) > cap:
        raise ValueError(f"|B_X(n)_i| = {len(level)} exceeds the eigen cap of {cap}")
    st = spectral_table(action, seed=seed)
    table = orbital_table(action)
    ssjb = build_ssjb(n, st)
    spans = {}
    for key in index_set_J_level(n, st.m, i):
        vecs = [c.vectors[i - c.k][level] for c in ssjb.groups[key]]
        q = np.column_stack([v / np.linalg.norm(v) for v in vecs])
        spans[key] = q
    action_dev = spectrum_dev = 0.0
    joint = {key: [] for key in spans}
    for t, l in index_set_I_level(n, st.m, i):
        inv = OrbitInvariant(i, i, t, l)
        M = build_M(space, inv, table).toarray()[np.ix_(level, level)]
        predicted = []
        for key, q in spans.items():
            ev = johnson_eigenvalue(n, i, t, l, *key, st.x_size, st.lam)
            action_dev = max(action_dev, float(np.abs(M @ q - ev * q).max()))
            predicted += [ev] * mu(n, *key, st.dims)
            joint[key].append(ev)
        spectrum_dev = max(spectrum_dev,
                           _multiset_distance(np.linalg.eigvals(M), np.array(predicted)))
    vectors = np.array(list(joint.values()))
    gaps = [np.abs(vectors[a] - vectors[b]).max()
            for a in range(len(vectors)) for b in range(a + 1, len(vectors))]
    separation = float(min(gaps, default=np.inf))
    dim_ok = sum(q.shape[1] for q in spans.values()) == len(level)
    distinct_ok = separation > 1e-6 and dim_ok
    deviation = max(action_dev, spectrum_dev) if distinct_ok else np.inf
    return OracleReport("eigen", {**_group_params(action, n), "i": i}, deviation, tol, seed=seed,
                        details={"scalar_action": action_dev, "spectrum": spectrum_dev,
                                 "min_separation": separation})


# ------------------------------------------------------- boolean base case

@_timed
def schrijver_oracle(n: int, tol: float = DEFAULT_TOL) -> OracleReport:
    """N(n)^* M_{i,j}^t N(n) against schrijver_block for every (i, j, t)."""
    sjb = bs.build_sjb(n)
    N, labels = sjb.normalized_matrix()
    cols_of = {}
    for col, (c, _) in enumerate(labels):
        cols_of.setdefault(c, []).append(col)
    mask = np.zeros(N.shape, dtype=bool)
    for idx in cols_of.values():
        mask[np.ix_(idx, idx)] = True
    worst = 0.0
    for i, j, t in bs.boolean_invariants(n):
        conj = N.T @ bs.boolean_M(n, i, j, t) @ N
        worst = max(worst, float(np.abs(conj[~mask]).max(initial=0.0)))
        blocks = bs.schrijver_block(n, i, j, t)
        for c, idx in cols_of.items():
            k = sjb.starts[c]
            worst = max(worst, float(np.abs(conj[np.ix_(idx, idx)] - blocks[k]).max()))
    return OracleReport("schrijver", {"n": n}, worst, tol)


@_timed
def delsarte_oracle(n: int, tol: float = DEFAULT_TOL) -> OracleReport:
    """Spectrum of each dense M_{i,i}^t on rank i against delsarte_eigenvalue."""
    worst = 0.0
    for i in range(n + 1):
        level = list(bs.rank_subsets(n, i))
        for t in range(max(0, 2 * i - n), i + 1):
            M = bs.boolean_M(n, i, i, t)[np.ix_(level, level)]
            got = np.linalg.eigvalsh(M)
            want = []
            for k in range(min(i, n - i) + 1):
                mult = bs.binom(n, k) - bs.binom(n, k - 1)
                want += [bs.delsarte_eigenvalue(n, i, t, k)] * mult
            worst = max(worst, float(np.abs(np.sort(got) - np.sort(np.array(want, float))).max()))
    return OracleReport("delsarte", {"n": n}, worst, tol)


# ---------------------------------------------------------- *-homomorphism

def expand_in_basis(matrix: np.ndarray, basis: dict, tol: float = 1e-9) -> dict:
    """Coefficients of a commutant element in the orbit-matrix basis.

    Each coefficient is read at one representative pair of its orbit; the
    reconstruction is checked against ``matrix``.
    """
    coeffs = {}
    recon = np.zeros_like(matrix, dtype=complex)
    for inv, M in basis.items():
        r, c = np.argwhere(M)[0]
        coeffs[inv] = matrix[r, c]
        recon += coeffs[inv] * M
    err = float(np.abs(recon - matrix).max())
    if err > tol:
        raise ValueError(f"matrix is not in the span of the basis (residual {err:.2e})")
    return coeffs


@_timed
def homomorphism_oracle(action: GroupAction, n: int, tol: float = DEFAULT_TOL,
                        samples: int | None = None, seed: int = 0) -> OracleReport:
    """Phi(M M') = Phi(M) Phi(M') and Phi(M^T) = Phi(M)^*.

    All basis pairs when ``samples`` is None, otherwise that many random pairs.
    """
    st = spectral_table(action, seed=seed)
    table = orbital_table(action)
    star = transpose_pairing(table)
    space = enumerate_words(n, action.x_size)
    invariants = index_set_I(n, st.m)
    basis = basis_matrices(space, table, invariants)
    images = {inv: phi(n, inv, st) for inv in invariants}
    if samples is None:
        pairs = [(a, b) for a in invariants for b in invariants]
    else:
        rng = np.random.default_rng(seed)
        picks = rng.integers(len(invariants), size=(samples, 2))
        pairs = [(invariants[a], invariants[b]) for a, b in picks]
    prod_dev = 0.0
    for a, b in pairs:
        coeffs = expand_in_basis(basis[a] @ basis[b], basis)
        lhs = BlockImage.zero(n, st.m)
        for inv, c in coeffs.items():
            if c:
                lhs = lhs + images[inv].scaled(c)
        prod_dev = max(prod_dev, lhs.max_diff(images[a] @ images[b]))
    adj_dev = 0.0
    for inv in invariants:
        tinv = inv.transpose(star)
        if not np.array_equal(basis[inv].T, basis[tinv]):
            adj_dev = np.inf
        adj_dev = max(adj_dev, images[tinv].max_diff(images[inv].adjoint()))
    return OracleReport("homomorphism", {**_group_params(action, n), "pairs": len(pairs)},
                        max(prod_dev, adj_dev), tol, seed=seed,
                        details={"product": prod_dev, "adjoint": adj_dev})


# ------------------------------------------------------ factorized action

@_timed
def factorized_oracle(action: GroupAction, n: int, samples: int = 200, tol: float = 1e-9,
                      seed: int = 0) -> OracleReport:
    """Sparse M_{i,j}^{t,l} times v(A, f, B) against factorized_apply on random pairs."""
    st = spectral_table(action, seed=seed)
    table = orbital_table(action)
    space = enumerate_words(n, action.x_size)
    invariants = index_set_I(n, st.m)
    labels = all_labels(n, st)
    rng = np.random.default_rng(seed)
    cache = {}
    worst = 0.0
    for _ in range(samples):
        inv = invariants[rng.integers(len(invariants))]
        label = labels[rng.integers(len(labels))]
        if inv not in cache:
            cache[inv] = build_M(space, inv, table)
        direct = cache[inv] @ standard_vector(label, st)
        worst = max(worst, float(np.abs(direct - factorized_apply(n, inv, st, label)).max()))
    return OracleReport("factorized", {**_group_params(action, n), "samples": samples},
                        worst, tol, seed=seed)


# ---------------------------------------------------------- SSJB structure

@_timed
def ssjb_oracle(action: GroupAction, n: int, tol: float = 1e-9, seed: int = 0) -> OracleReport:
    """Chain recurrence, top kill, offset identity, orthogonality and group sizes."""
    st = spectral_table(action, seed=seed)
    ssjb = build_ssjb(n, st)
    space = enumerate_words(n, action.x_size)
    up = up_operator(space)
    rec = kill = 0.0
    shape_ok = True
    vecs = []
    for chain in ssjb.chains:
        if chain.k + chain.end != n + chain.s:
            shape_ok = False
        for h, v in enumerate(chain.vectors):
            if np.any(space.ranks[np.abs(v) > 1e-12] != chain.k + h):
                shape_ok = False
            image = up @ v
            if h + 1 < len(chain.vectors):
                nxt = chain.vectors[h + 1]
                rec = max(rec, float(np.linalg.norm(image - nxt) / np.linalg.norm(nxt)))
            else:
                kill = max(kill, float(np.linalg.norm(image) / np.linalg.norm(v)))
            vecs.append(v / np.linalg.norm(v))
    gram = np.array(vecs).conj() @ np.array(vecs).T
    ortho = float(np.abs(gram - np.eye(len(vecs))).max())
    counts_ok = all(len(g) == mu(n, *key, st.dims) for key, g in ssjb.groups.items())
    complete = len(vecs) == space.size
    dev = max(rec, kill, ortho) if (shape_ok and counts_ok and complete) else np.inf
    return OracleReport("ssjb", _group_params(action, n), dev, tol, seed=seed,
                        details={"recurrence": rec, "top_kill": kill, "orthogonality": ortho,
                                 "ranks_and_offsets": shape_ok, "mu_counts": counts_ok})


# ---------------------------------------------------------------- suite

def run_suite(action: GroupAction, n: int, tol: float = DEFAULT_TOL, seed: int = 0,
              corrupt: str | None = None) -> list[OracleReport]:
    """Every oracle for one (group, n).

    ``corrupt`` injects a negative control: ``"unitary"`` perturbs a column of
    M(n), ``"matrix"`` flips an entry of one basis matrix.
    """
    st = spectral_table(action, seed=seed)
    m = st.m
    reports = []
    t0 = time.perf_counter()
    expected = bs.binom(n + m + 3, m + 3)
    space = WordSpace(n, action.x_size)
    if space.size <= ORBIT_COUNT_CAP:
        got = orbit_count_oracle(action, n)
        rep = OracleReport("orbit_count", {**_group_params(action, n), "expected": expected,
                                           "counted": got}, abs(got - expected), 0.0)
        rep.seconds = time.perf_counter() - t0
        reports.append(rep)
    reports.append(ssjb_oracle(action, n, tol=min(tol, 1e-9), seed=seed))
    unitary = matrices = None
    if corrupt == "unitary":
        unitary = corrupt_unitary(build_unitary(n, st))
    elif corrupt == "matrix":
        table = orbital_table(action)
        matrices = basis_matrices(enumerate_words(n, action.x_size), table, index_set_I(n, m))
        target = next((inv for inv in matrices if inv.i == inv.j == 1 and inv.t == 1), None)
        if target is None:
            raise ValueError("the matrix negative control needs n >= 1")
        matrices[target] = flip_entry(matrices[target])
    elif corrupt is not None:
        raise ValueError(f"unknown corruption mode {corrupt!r}")
    reports.append(averaged_commutant_oracle(action, n, samples=50, seed=seed, matrices=matrices))
    reports.append(conjugation_oracle(action, n, tol=tol, unitary=unitary, matrices=matrices,
                                      seed=seed))
    for i in range(n + 1):
        reports.append(eigen_oracle(action, n, i, tol=tol, seed=seed))
    reports.append(factorized_oracle(action, n, samples=200, seed=seed))
    return reports


def write_reports(reports: Iterable[OracleReport], fh) -> None:
    for rep in reports:
        fh.write(rep.to_json() + "\n")


def read_reports(fh) -> list[dict]:
    return [json.loads(line) for line in fh if line.strip()]
