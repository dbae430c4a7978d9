"""F_q-linear sum-rank codes: canonical bases, duals, exhaustive invariants, isometries."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from sumrank import config, linalg
from sumrank.gf import Field
from sumrank.matspace import AmbientShape, Codeword, SupportElem, batch_srk, block_ranks, support_space_constraints
from sumrank.parallel import chunk_ranges, pmap

CHUNK = 1 << 14


@dataclass(frozen=True, eq=False)
class LinearCode:
    """An F_q-linear subspace of M stored by its RREF basis (rows are flattened codewords)."""

    field: Field
    shape: AmbientShape
    basis: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=np.int64).reshape(-1, self.shape.dim)
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def size(self) -> int:
        return self.field.order**self.dim

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearCode)
            and self.field == other.field
            and self.shape == other.shape
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self) -> int:
        return hash((self.shape, self.basis.tobytes()))

    def __repr__(self) -> str:
        return f"LinearCode(GF({self.field.order}), {self.shape!r}, dim={self.dim})"

    @classmethod
    def ambient(cls, F: Field, shape: AmbientShape) -> LinearCode:
        return cls(F, shape, np.eye(shape.dim, dtype=np.int64))

    @classmethod
    def zero(cls, F: Field, shape: AmbientShape) -> LinearCode:
        return cls(F, shape, np.zeros((0, shape.dim), np.int64))

    def codewords_range(self, lo: int, hi: int) -> np.ndarray:
        """Codewords with message index lo..hi-1 (index digits base q, least significant = row 0)."""
        q, k = self.field.order, self.dim
        idx = np.arange(lo, hi, dtype=np.int64)
        if k == 0:
            return np.zeros((idx.size, self.shape.dim), np.int64)
        msgs = (idx[:, None] // (q ** np.arange(k, dtype=np.int64))[None, :]) % q
        return linalg.matmul(self.field, msgs, self.basis)

    def codewords(self) -> np.ndarray:
        config.check("codeword enumeration", self.size)
        return self.codewords_range(0, self.size)

    def contains(self, v) -> bool:
        v = np.asarray(v.to_vector() if isinstance(v, Codeword) else v, dtype=np.int64)
        if self.dim == 0:
            return not v.any()
        return linalg.rank(self.field, np.vstack([self.basis, v[None, :]])) == self.dim

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def codeword(self, i: int) -> Codeword:
        return Codeword.from_vector(self.shape, self.codewords_range(i, i + 1)[0])


def canonicalize(F: Field, shape: AmbientShape, generators: Iterable | np.ndarray) -> LinearCode:
    """The code spanned by the generators, with its unique RREF basis."""
    rows = []
    for g in generators if not isinstance(generators, np.ndarray) else list(generators):
        rows.append(g.to_vector() if isinstance(g, Codeword) else np.asarray(g, dtype=np.int64).reshape(shape.dim))
    if not rows:
        return LinearCode.zero(F, shape)
    R, _ = linalg.rref(F, np.vstack(rows))
    return LinearCode(F, shape, R)


def dual_code(C: LinearCode) -> LinearCode:
    """Dual with respect to Tr(D, C) = sum_i tr(D_i C_i^t), the flattened dot product."""
    if C.dim == 0:
        return LinearCode.ambient(C.field, C.shape)
    return canonicalize(C.field, C.shape, linalg.nullspace(C.field, C.basis))


# ------------------------------------------------------------ sweeps


def _srk_range(C: LinearCode, lo: int, hi: int) -> np.ndarray:
    return batch_srk(C.field, C.shape, C.codewords_range(lo, hi))


def _minmax_chunk(C: LinearCode, lo: int, hi: int) -> tuple[int, int]:
    w = _srk_range(C, lo, hi)
    nz = w[w > 0]
    return (int(nz.min()) if nz.size else 0, int(w.max()) if w.size else 0)


def max_sum_rank(C: LinearCode, workers: int | None = None) -> int:
    if C.dim == 0:
        return 0
    return distance_invariants(C, workers)[1]


def projective_ranges(q: int, k: int, chunk: int = CHUNK) -> list[tuple[int, int]]:
    """Message-index chunks whose most significant nonzero digit is 1.

    Every nonzero codeword is an F_q^* multiple of exactly one of these, and
    srk is invariant under such scaling.
    """
    out = []
    for j in range(k):
        lo, hi = q**j, 2 * q**j
        out += [(lo + a, lo + b) for a, b in chunk_ranges(hi - lo, chunk)]
    return out


def distance_invariants(C: LinearCode, workers: int | None = None) -> tuple[int, int]:
    """(d(C), maxsrk(C)) by sweeping every codeword up to F_q^* scaling; the zero code has no distance."""
    if C.dim == 0:
        raise ValueError("the zero code has no minimum distance (maxsrk is 0)")
    q = C.field.order
    config.check("distance sweep", (C.size - 1) // (q - 1))
    parts = pmap(_minmax_chunk, [(C, lo, hi) for lo, hi in projective_ranges(q, C.dim)], workers)
    d = min(p[0] for p in parts if p[0] > 0)
    return d, max(p[1] for p in parts)


def minimum_distance(C: LinearCode, workers: int | None = None) -> int:
    return distance_invariants(C, workers)[0]


def _coset_reps(C: LinearCode, lo: int, hi: int) -> np.ndarray:
    """Vectors vanishing on the pivot coordinates of C: one per coset of C."""
    F, N = C.field, C.shape.dim
    pivots = set(int(np.flatnonzero(row)[0]) for row in C.basis)
    free = [j for j in range(N) if j not in pivots]
    q = F.order
    idx = np.arange(lo, hi, dtype=np.int64)
    vals = (idx[:, None] // (q ** np.arange(len(free), dtype=np.int64))[None, :]) % q
    out = np.zeros((idx.size, N), dtype=np.int64)
    out[:, free] = vals
    return out


def _covering_chunk(C: LinearCode, lo: int, hi: int) -> int:
    F = C.field
    reps = _coset_reps(C, lo, hi)
    words = C.codewords()
    best = 0
    step = max(1, CHUNK // max(1, words.shape[0]))
    for a in range(0, reps.shape[0], step):
        R = reps[a : a + step]
        X = F.sub(R[:, None, :], words[None, :, :]).reshape(-1, C.shape.dim)
        w = batch_srk(F, C.shape, X).reshape(R.shape[0], words.shape[0])
        best = max(best, int(w.min(axis=1).max()))
    return best


def covering_radius(C: LinearCode, workers: int | None = None) -> int:
    """max over M of the distance to C, computed coset by coset."""
    F, N = C.field, C.shape.dim
    total = F.order**N
    config.check("covering radius sweep", total)
    ncosets = F.order ** (N - C.dim)
    step = max(1, CHUNK // max(1, C.size))
    return max(pmap(_covering_chunk, [(C, lo, hi) for lo, hi in chunk_ranges(ncosets, step * 8)], workers))


def distance_to_code(C: LinearCode, v) -> int:
    v = np.asarray(v.to_vector() if isinstance(v, Codeword) else v, dtype=np.int64)
    config.check("distance to code", C.size)
    X = C.field.sub(v[None, :], C.codewords())
    return int(batch_srk(C.field, C.shape, X).min())


def exhaustive_decode(C: LinearCode, received) -> tuple[int, list[Codeword]]:
    """All codewords at minimum sum-rank distance from the received word."""
    v = np.asarray(received.to_vector() if isinstance(received, Codeword) else received, dtype=np.int64)
    config.check("exhaustive decoding", C.size)
    W = C.codewords()
    dist = batch_srk(C.field, C.shape, C.field.sub(v[None, :], W))
    best = int(dist.min())
    return best, [Codeword.from_vector(C.shape, w) for w in W[dist == best]]


# ------------------------------------------------------ support structure


def subcode_supported(C: LinearCode, L: SupportElem) -> LinearCode:
    """C(L) = C ∩ V_L, the codewords whose block row spaces lie in L."""
    F = C.field
    K = support_space_constraints(F, C.shape, L)
    if C.dim == 0 or K.shape[0] == 0:
        return C
    # message a is admissible iff a (G K^T) = 0
    A = linalg.matmul(F, C.basis, K.T)
    msgs = linalg.nullspace(F, A.T)
    if msgs.shape[0] == 0:
        return LinearCode.zero(F, C.shape)
    return canonicalize(F, C.shape, linalg.matmul(F, msgs, C.basis))


def block_projection_dims(C: LinearCode) -> list[tuple[int, int | None]]:
    """Per block: (dim of the sum of row spaces, dim of the sum of column spaces or None if not square)."""
    F, s = C.field, C.shape
    out = []
    for i in range(s.ell):
        blocks = s.blocks_of(C.basis, i)
        rows = blocks.reshape(-1, s.n_list[i])
        r = linalg.rank(F, rows) if rows.size else 0
        c = None
        if s.m_list[i] == s.n_list[i]:
            cols = np.swapaxes(blocks, 1, 2).reshape(-1, s.m_list[i])
            c = linalg.rank(F, cols) if cols.size else 0
        out.append((r, c))
    return out


def code_weight(C: LinearCode) -> int:
    """wt(C): least maxsrk of a product of optimal anticodes containing C.

    The product condition splits per block, so each block contributes the
    smaller of its row-space and (for square blocks) column-space dimension.
    """
    return sum(r if c is None else min(r, c) for r, c in block_projection_dims(C))


# ------------------------------------------------------------ isometries


@dataclass(frozen=True)
class SumRankIsometry:
    """C -> (A_i psi_i(C_{sigma(i)}) B_i)_i with psi_i transposition or identity.

    ``sigma`` is 0-based; transposition is only allowed on square blocks.
    """

    sigma: tuple[int, ...]
    left: tuple[np.ndarray, ...]
    right: tuple[np.ndarray, ...]
    transpose: tuple[bool, ...]

    def validate(self, F: Field, shape: AmbientShape) -> None:
        ell = shape.ell
        if sorted(self.sigma) != list(range(ell)):
            raise ValueError("sigma is not a permutation")
        for i, j in enumerate(self.sigma):
            if (shape.m_list[i], shape.n_list[i]) != (shape.m_list[j], shape.n_list[j]):
                raise ValueError(f"sigma maps block {j} onto block {i} of a different size")
            if self.transpose[i] and shape.m_list[i] != shape.n_list[i]:
                raise ValueError(f"block {i} is not square, it cannot be transposed")
            if np.shape(self.left[i]) != (shape.m_list[i],) * 2 or linalg.rank(F, self.left[i]) != shape.m_list[i]:
                raise ValueError(f"left factor {i} is not invertible of size {shape.m_list[i]}")
            if np.shape(self.right[i]) != (shape.n_list[i],) * 2 or linalg.rank(F, self.right[i]) != shape.n_list[i]:
                raise ValueError(f"right factor {i} is not invertible of size {shape.n_list[i]}")

    def apply_vectors(self, F: Field, shape: AmbientShape, vecs: np.ndarray) -> np.ndarray:
        vecs = np.asarray(vecs, dtype=np.int64).reshape(-1, shape.dim)
        out = np.zeros_like(vecs)
        for i, j in enumerate(self.sigma):
            X = shape.blocks_of(vecs, j)
            if self.transpose[i]:
                X = np.swapaxes(X, 1, 2)
            Y = linalg.matmul(F, linalg.matmul(F, np.asarray(self.left[i])[None], X), np.asarray(self.right[i])[None])
            out[:, shape.block_slice(i)] = Y.reshape(vecs.shape[0], -1)
        return out

    @classmethod
    def random(cls, F: Field, shape: AmbientShape, rng: np.random.Generator) -> SumRankIsometry:
        ell = shape.ell
        sigma = list(range(ell))
        # shuffle within groups of equal block size
        groups: dict[tuple[int, int], list[int]] = {}
        for i in range(ell):
            groups.setdefault((shape.m_list[i], shape.n_list[i]), []).append(i)
        for members in groups.values():
            perm = rng.permutation(members)
            for a, b in zip(members, perm):
                sigma[a] = int(b)
        left = tuple(random_invertible(F, m, rng) for m in shape.m_list)
        right = tuple(random_invertible(F, n, rng) for n in shape.n_list)
        tr = tuple(bool(m == n and rng.integers(2)) for m, n in zip(shape.m_list, shape.n_list))
        return cls(tuple(sigma), left, right, tr)


def random_invertible(F: Field, n: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        A = rng.integers(0, F.order, size=(n, n))
        if linalg.rank(F, A) == n:
            return A.astype(np.int64)


def apply_isometry(phi: SumRankIsometry, C: LinearCode) -> LinearCode:
    phi.validate(C.field, C.shape)
    return canonicalize(C.field, C.shape, phi.apply_vectors(C.field, C.shape, C.basis))


def apply_isometry_codeword(F: Field, phi: SumRankIsometry, c: Codeword) -> Codeword:
    phi.validate(F, c.shape)
    return Codeword.from_vector(c.shape, phi.apply_vectors(F, c.shape, c.to_vector())[0])


def random_code(F: Field, shape: AmbientShape, dim: int, rng: np.random.Generator) -> LinearCode:
    """A uniformly random generator set of ``dim`` vectors; the span may be smaller if they are dependent."""
    return canonicalize(F, shape, rng.integers(0, F.order, size=(dim, shape.dim)))


def random_code_exact(F: Field, shape: AmbientShape, dim: int, rng: np.random.Generator) -> LinearCode:
    while True:
        C = random_code(F, shape, dim, rng)
        if C.dim == dim:
            return C


def restrict_columns(C: LinearCode, keep: Sequence[Sequence[int]], rows: Sequence[Sequence[int]] | None = None,
                     shape: AmbientShape | None = None) -> LinearCode:
    """Project every codeword onto the kept rows/columns of each block (empty blocks are dropped).

    ``keep[i]`` lists local column indices of block i; ``rows[i]`` local row
    indices (all rows by default).  The result lives in ``shape`` if given,
    otherwise in the shape formed by the kept sizes.
    """
    s = C.shape
    rows = rows if rows is not None else [range(m) for m in s.m_list]
    parts, m_new, n_new = [], [], []
    for i in range(s.ell):
        if not keep[i] or not rows[i]:
            continue
        X = s.blocks_of(C.basis, i)[:, list(rows[i])][:, :, list(keep[i])]
        parts.append(X.reshape(C.dim, len(rows[i]) * len(keep[i])))
        m_new.append(len(rows[i]))
        n_new.append(len(keep[i]))
    new_shape = shape or AmbientShape(m_new, n_new, strict=False)
    if C.dim == 0:
        return LinearCode.zero(C.field, new_shape)
    vecs = np.hstack(parts) if parts else np.zeros((C.dim, 0), np.int64)
    return canonicalize(C.field, new_shape, vecs)


def iter_block_rank_profiles(C: LinearCode, workers: int | None = None) -> np.ndarray:
    """Per-codeword block ranks for every codeword, shape (q^k, ell)."""
    config.check("rank profile sweep", C.size)
    parts = pmap(_ranks_chunk, [(C, lo, hi) for lo, hi in chunk_ranges(C.size, CHUNK)], workers)
    return np.vstack(parts) if parts else np.zeros((0, C.shape.ell), np.int64)


def _ranks_chunk(C: LinearCode, lo: int, hi: int) -> np.ndarray:
    return block_ranks(C.field, C.shape, C.codewords_range(lo, hi))


def all_subspaces_of_ambient(F: Field, shape: AmbientShape) -> Iterable[LinearCode]:
    """Every F_q-subspace of M (small ambient spaces only)."""
    from sumrank.matspace import subspaces

    config.check("subspaces of M", F.order**shape.dim, config.LIMITS.block)
    for B in subspaces(F, shape.dim):
        yield LinearCode(F, shape, B)

