"""F_{q^m}-linear codes with a length partition, their matrix images, and MSRD tests on generator matrices."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from sumrank import config, linalg
from sumrank.anticode import Choice, dedupe, min_t_by_dim, product_table
from sumrank.code import LinearCode, canonicalize
from sumrank.gf import FieldTower
from sumrank.matspace import AmbientShape, Codeword, subspaces


@dataclass(frozen=True, eq=False)
class FqmCode:
    """Row space of G over GF(q^m) in GF(q^m)^n, n = sum(partition); G is stored in RREF."""

    tower: FieldTower
    partition: tuple[int, ...]
    G: np.ndarray

    def __post_init__(self):
        part = tuple(int(x) for x in self.partition)
        if not part or any(x <= 0 for x in part):
            raise ValueError("partition entries must be positive")
        object.__setattr__(self, "partition", part)
        G = linalg.as_matrix(self.G, sum(part))
        if G.shape[1] != sum(part):
            raise ValueError(f"generator has {G.shape[1]} columns, partition sums to {sum(part)}")
        R = linalg.rref(self.tower.top, G)[0] if G.shape[0] else G
        R = np.ascontiguousarray(R, dtype=np.int64)
        R.setflags(write=False)
        object.__setattr__(self, "G", R)

    @property
    def k(self) -> int:
        return self.G.shape[0]

    @property
    def n(self) -> int:
        return sum(self.partition)

    @property
    def ell(self) -> int:
        return len(self.partition)

    @property
    def shape(self) -> AmbientShape:
        m = self.tower.m
        return AmbientShape([m] * self.ell, self.partition, strict=all(x <= m for x in self.partition))

    @property
    def col_offsets(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.concatenate([[0], np.cumsum(self.partition)[:-1]]))

    def block_cols(self, i: int) -> slice:
        o = self.col_offsets[i]
        return slice(o, o + self.partition[i])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FqmCode)
            and self.tower == other.tower
            and self.partition == other.partition
            and np.array_equal(self.G, other.G)
        )

    def __hash__(self) -> int:
        return hash((self.tower, self.partition, self.G.tobytes()))

    def __repr__(self) -> str:
        return f"FqmCode(q={self.tower.q}, m={self.tower.m}, partition={self.partition}, k={self.k})"

    def encode(self, msgs) -> np.ndarray:
        return linalg.matmul(self.tower.top, linalg.as_matrix(msgs, self.k), self.G)

    def to_linear_code(self) -> LinearCode:
        """The F_q-linear image in M: spanned by the images of alpha_s g_r."""
        T = self.tower
        F = T.top
        if self.k == 0:
            return LinearCode.zero(T.mid, self.shape)
        scaled = F.mul(np.array(T.alpha, dtype=np.int64)[:, None, None], self.G[None, :, :]).reshape(-1, self.n)
        return canonicalize(T.mid, self.shape, image_vectors(T, self.partition, scaled))


# ------------------------------------------------------- matrix image


def image_vectors(tower: FieldTower, partition, vecs) -> np.ndarray:
    """Flattened matrix images of the rows of ``vecs`` (..., n), block by block, each m x n_i row-major."""
    vecs = np.asarray(vecs, dtype=np.int64)
    n = sum(partition)
    if vecs.shape[-1] != n:
        raise ValueError(f"vector length {vecs.shape[-1]} does not match partition total {n}")
    X = tower.coords(vecs)  # (..., n, m)
    parts = []
    o = 0
    for ni in partition:
        blk = np.swapaxes(X[..., o : o + ni, :], -1, -2)  # (..., m, n_i)
        parts.append(blk.reshape(blk.shape[:-2] + (-1,)))
        o += ni
    return np.concatenate(parts, axis=-1)


def vectors_from_image(tower: FieldTower, partition, flat) -> np.ndarray:
    """Inverse of :func:`image_vectors`."""
    flat = np.asarray(flat, dtype=np.int64)
    m = tower.m
    cols = []
    o = 0
    for ni in partition:
        blk = flat[..., o : o + m * ni].reshape(flat.shape[:-1] + (m, ni))
        cols.append(tower.from_coords(np.swapaxes(blk, -1, -2)))
        o += m * ni
    return np.concatenate(cols, axis=-1)


def matrix_repr(tower: FieldTower, partition, c, direction: str = "to_blocks"):
    """to_blocks: vector over GF(q^m) -> Codeword; from_blocks: Codeword -> vector."""
    partition = tuple(partition)
    m = tower.m
    shape = AmbientShape([m] * len(partition), partition, strict=all(x <= m for x in partition))
    if direction == "to_blocks":
        c = np.asarray(c, dtype=np.int64)
        if c.shape != (sum(partition),):
            raise ValueError(f"expected a vector of length {sum(partition)}")
        return Codeword.from_vector(shape, image_vectors(tower, partition, c))
    if direction == "from_blocks":
        if not isinstance(c, Codeword):
            raise TypeError("from_blocks expects a Codeword")
        if tuple(b.shape for b in c.blocks) != tuple(zip(shape.m_list, shape.n_list)):
            raise ValueError("codeword shape does not match the partition")
        return vectors_from_image(tower, partition, c.to_vector())
    raise ValueError(f"unknown direction {direction!r}")


def trace_dual_basis(tower: FieldTower) -> tuple[int, ...]:
    """alpha* with Tr(alpha_i alpha*_j) = [i == j]."""
    F = tower.top
    m = tower.m
    T = np.array([[tower.trace(F.mul(a, b)) for b in tower.alpha] for a in tower.alpha], dtype=np.int64)
    Tinv = linalg.inverse(tower.mid, T)
    # alpha*_j = sum_b Tinv[b, j] alpha_b
    out = []
    for j in range(m):
        acc = 0
        for b in range(m):
            acc = F.add(acc, F.mul(int(Tinv[b, j]), tower.alpha[b]))
        out.append(int(acc))
    return tuple(out)


# ------------------------------------------------------------ duality


def fqm_dual(C: FqmCode) -> FqmCode:
    """Dual for the standard bilinear form on GF(q^m)^n."""
    H = linalg.nullspace(C.tower.top, C.G, C.n) if C.k else np.eye(C.n, dtype=np.int64)
    return FqmCode(C.tower, C.partition, H)


def parity_check(C: FqmCode) -> np.ndarray:
    return fqm_dual(C).G


def image_duality(C: FqmCode) -> tuple[bool, bool]:
    """(M_{alpha*}(C^perp) == M_alpha(C)^perp, M_alpha(C^perp) == M_alpha(C)^perp).

    The first always holds, since Tr(c d) pairs alpha*-coordinates of d with
    alpha-coordinates of c. The second needs alpha* to span the same images,
    which fails for most codes unless alpha is self-dual.
    """
    from sumrank.code import dual_code

    target = dual_code(C.to_linear_code())
    D = fqm_dual(C)
    star = C.tower.with_alpha(trace_dual_basis(C.tower))
    return FqmCode(star, C.partition, D.G).to_linear_code() == target, D.to_linear_code() == target


# ----------------------------------------------------------- isometries


@dataclass(frozen=True)
class FqmIsometry:
    """c -> (beta_1 c^(sigma(1)) A_1, ..., beta_ell c^(sigma(ell)) A_ell); sigma is 0-based."""

    sigma: tuple[int, ...]
    betas: tuple[int, ...]
    A_blocks: tuple[np.ndarray, ...]

    def validate(self, tower: FieldTower, partition) -> None:
        ell = len(partition)
        if sorted(self.sigma) != list(range(ell)) or len(self.betas) != ell or len(self.A_blocks) != ell:
            raise ValueError("sigma, betas and A_blocks must match the number of blocks")
        for i in range(ell):
            if partition[self.sigma[i]] != partition[i]:
                raise ValueError("sigma must preserve block lengths")
            if int(self.betas[i]) == 0:
                raise ValueError("block scalars must be nonzero")
            A = np.asarray(self.A_blocks[i])
            if A.shape != (partition[i], partition[i]) or np.any(A >= tower.q) or np.any(A < 0):
                raise ValueError(f"A_{i} must be an invertible {partition[i]}x{partition[i]} matrix over GF(q)")
            if linalg.rank(tower.mid, A) != partition[i]:
                raise ValueError(f"A_{i} is singular")

    @classmethod
    def identity(cls, partition) -> FqmIsometry:
        return cls(tuple(range(len(partition))), (1,) * len(partition), tuple(np.eye(n, dtype=np.int64) for n in partition))

    def apply_vectors(self, tower: FieldTower, partition, vecs) -> np.ndarray:
        F = tower.top
        vecs = np.asarray(vecs, dtype=np.int64)
        offs = np.concatenate([[0], np.cumsum(partition)])
        out = []
        for i in range(len(partition)):
            j = self.sigma[i]
            blk = vecs[..., offs[j] : offs[j + 1]]
            blk = linalg.matmul(F, blk.reshape(-1, partition[j]), np.asarray(self.A_blocks[i], dtype=np.int64))
            out.append(F.mul(int(self.betas[i]), blk).reshape(vecs.shape[:-1] + (partition[i],)))
        return np.concatenate(out, axis=-1)


def fqm_isometry_apply(params: FqmIsometry, C: FqmCode) -> FqmCode:
    params.validate(C.tower, C.partition)
    return FqmCode(C.tower, C.partition, params.apply_vectors(C.tower, C.partition, C.G))


def random_fqm_isometry(tower: FieldTower, partition, rng: np.random.Generator) -> FqmIsometry:
    from sumrank.code import random_invertible

    ell = len(partition)
    sigma = list(range(ell))
    for n in set(partition):
        idx = [i for i in range(ell) if partition[i] == n]
        perm = rng.permutation(idx)
        for a, b in zip(idx, perm):
            sigma[a] = int(b)
    betas = tuple(int(rng.integers(1, tower.top.order)) for _ in range(ell))
    A = tuple(random_invertible(tower.mid, n, rng) for n in partition)
    return FqmIsometry(tuple(sigma), betas, A)


def random_fqm_code(tower: FieldTower, partition, k: int, rng: np.random.Generator) -> FqmCode:
    n = sum(partition)
    while True:
        G = tower.top.random(rng, (k, n))
        if linalg.rank(tower.top, G) == k:
            return FqmCode(tower, partition, G)


# -------------------------------------------------------- weights d'_r


def _lattice_choices(C: FqmCode) -> list[list[Choice]]:
    """Per block: every subspace L of F_q^{n_i} with its constraints x G_i h^T = 0, h spanning L^perp."""
    T = C.tower
    out = []
    for i, ni in enumerate(C.partition):
        Gi = C.G[:, C.block_cols(i)]
        block = []
        for L in subspaces(T.mid, ni):
            H = linalg.complement_constraints(T.mid, L, ni) if L.shape[0] < ni else np.zeros((0, ni), np.int64)
            if H.shape[0]:
                cons = linalg.rref(T.top, linalg.matmul(T.top, H, Gi.T))[0]
            else:
                cons = np.zeros((0, C.k), np.int64)
            block.append(Choice(L.shape[0], T.m * L.shape[0], cons))
        out.append(dedupe(block, by_t=False))
    return out


def dprime_generalized_weights(C: FqmCode, workers: int | None = None) -> list[int]:
    """d'_r = least sum dim L_i over products with dim_{F_q^m}(C ∩ V_L) >= r, r = 1..k."""
    if C.k == 0:
        return []
    table = product_table(C.tower.top, C.k, _lattice_choices(C), workers)
    return min_t_by_dim(table, C.k)


def fqm_minimum_distance(C: FqmCode, workers: int | None = None) -> int:
    """d(C) = d'_1(C), read off the support lattice; usable when C is too large to sweep."""
    if C.k == 0:
        raise ValueError("the zero code has no minimum distance")
    return dprime_generalized_weights(C, workers)[0]


def projective_minimum_distance(C: FqmCode) -> int:
    """min srk over messages whose first nonzero entry is 1 (every codeword is a GF(q^m)* multiple of one)."""
    from sumrank.matspace import batch_srk

    T = C.tower
    Q = T.top.order
    k = C.k
    if k == 0:
        raise ValueError("the zero code has no minimum distance")
    config.check("projective codeword sweep", (Q**k - 1) // (Q - 1), config.LIMITS.sweep)
    best = C.n
    for lead in range(k):
        rest = k - lead - 1
        idx = np.arange(Q**rest, dtype=np.int64)
        for lo in range(0, idx.size, 1 << 14):
            chunk = idx[lo : lo + (1 << 14)]
            msgs = np.zeros((chunk.size, k), dtype=np.int64)
            msgs[:, lead] = 1
            for t in range(rest):
                msgs[:, lead + 1 + t] = (chunk // Q**t) % Q
            words = image_vectors(T, C.partition, C.encode(msgs))
            best = min(best, int(batch_srk(T.mid, C.shape, words).min()))
    return best


def fqm_wei_duality_check(C: FqmCode, workers: int | None = None, weights=None, dual_weights=None) -> bool:
    """[n] is the disjoint union of {d'_r} and {n + 1 - d'^perp_r}."""
    w = dprime_generalized_weights(C, workers) if weights is None else list(weights)
    D = fqm_dual(C)
    wd = dprime_generalized_weights(D, workers) if dual_weights is None else list(dual_weights)
    left = set(w)
    right = {C.n + 1 - x for x in wd}
    return len(left) == len(w) and len(right) == len(wd) and not (left & right) and left | right == set(range(1, C.n + 1))


# --------------------------------------------------------- minor tests


def gl_count(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def general_linear(tower: FieldTower, n: int) -> list[np.ndarray]:
    """All of GL_n(F_q), deterministic order."""
    q = tower.q
    config.check(f"GL_{n}(F_{q}) enumeration", q ** (n * n), config.LIMITS.sweep)
    if n == 0:
        return [np.zeros((0, 0), np.int64)]
    allm = np.array(list(itertools.product(range(q), repeat=n * n)), dtype=np.int64).reshape(-1, n, n)
    ranks = linalg.batch_rank(tower.mid, allm)
    return list(allm[ranks == n])


def _all_minors_invertible(F, M: np.ndarray, size: int, col_sets: np.ndarray, row_sets: np.ndarray | None = None) -> tuple | None:
    """First (rows, cols) whose size x size minor of M is singular, or None."""
    rows_iter = [np.arange(M.shape[0])] if row_sets is None else row_sets
    for rows in rows_iter:
        sub = M[rows][:, col_sets]  # (size, N, size)
        sub = np.swapaxes(sub, 0, 1)
        ranks = linalg.batch_rank(F, sub)
        bad = np.flatnonzero(ranks < size)
        if bad.size:
            return tuple(int(x) for x in rows), tuple(int(x) for x in col_sets[bad[0]])
    return None


@dataclass(frozen=True)
class MinorWitness:
    A_blocks: tuple[np.ndarray, ...]
    columns: tuple[int, ...]


def msrd_minor_witness(C: FqmCode, use: str = "generator") -> MinorWitness | None:
    """A block choice A_i in GL_{n_i}(F_q) and a singular maximal minor of M diag(A_i), if one exists."""
    T = C.tower
    if C.k == 0:
        raise ValueError("the zero code is not MSRD")
    if use == "generator":
        M = C.G
    elif use == "parity":
        M = parity_check(C)
    else:
        raise ValueError(f"use must be 'generator' or 'parity', not {use!r}")
    kk = M.shape[0]
    if kk == 0:
        return None
    cost = comb(C.n, kk)
    for ni in C.partition:
        cost *= gl_count(ni, T.q)
    config.check("GL-product minor sweep", cost, config.LIMITS.sweep)
    col_sets = np.array(list(itertools.combinations(range(C.n), kk)), dtype=np.int64)
    gls = [general_linear(T, ni) for ni in C.partition]
    for choice in itertools.product(*gls):
        D = np.zeros((C.n, C.n), dtype=np.int64)
        for i, A in enumerate(choice):
            D[C.block_cols(i), C.block_cols(i)] = A
        MA = linalg.matmul(T.top, M, D)
        bad = _all_minors_invertible(T.top, MA, kk, col_sets)
        if bad is not None:
            return MinorWitness(tuple(choice), bad[1])
    return None


def msrd_minor_test(C: FqmCode, use: str = "generator") -> bool:
    return msrd_minor_witness(C, use) is None


@dataclass(frozen=True)
class SystematicWitness:
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    rows: tuple[int, ...]
    cols: tuple[int, ...]


def systematic_form(C: FqmCode, split) -> tuple[np.ndarray, np.ndarray, list[int], list[int]]:
    """(G_sys, P, info columns, redundancy columns) for G = (J_1|P_1|...|J_ell|P_ell)."""
    split = tuple(int(x) for x in split)
    if len(split) != C.ell or any(not 0 <= a <= b for a, b in zip(split, C.partition)) or sum(split) != C.k:
        raise ValueError(f"split {split} must satisfy 0 <= k_i <= n_i and sum k_i = {C.k}")
    info, red = [], []
    for i, (ki, ni) in enumerate(zip(split, C.partition)):
        o = C.col_offsets[i]
        info += list(range(o, o + ki))
        red += list(range(o + ki, o + ni))
    F = C.tower.top
    J = C.G[:, info]
    if linalg.rank(F, J) < C.k:
        raise ValueError(f"no systematic form for split {split}: information columns are dependent")
    Gs = linalg.matmul(F, linalg.inverse(F, J), C.G)
    return Gs, Gs[:, red], info, red


def systematic_msrd_witness(C: FqmCode, split) -> SystematicWitness | None:
    """Search every block-diagonal (A, B, C) for a singular square submatrix of B P A + C."""
    T = C.tower
    F, q = T.top, T.q
    if C.k == 0:
        raise ValueError("the zero code is not MSRD")
    _, P, _, _ = systematic_form(C, split)
    k, r = P.shape
    if r == 0:
        return None
    split = tuple(int(x) for x in split)
    red = tuple(n - a for n, a in zip(C.partition, split))
    cost = 1
    for a, b in zip(split, red):
        cost *= gl_count(a, q) * gl_count(b, q) * q ** (a * b)
    n_minors = sum(comb(k, s) * comb(r, s) for s in range(1, min(k, r) + 1))
    config.check("systematic (A, B, C) sweep", cost * n_minors, config.LIMITS.sweep)

    def c_blocks(a, b):
        if a * b == 0:
            return [np.zeros((a, b), np.int64)]
        return list(np.array(list(itertools.product(range(q), repeat=a * b)), dtype=np.int64).reshape(-1, a, b))

    Bs = [general_linear(T, a) for a in split]
    As = [general_linear(T, b) for b in red]
    Cs = [c_blocks(a, b) for a, b in zip(split, red)]
    ro = np.concatenate([[0], np.cumsum(split)])
    co = np.concatenate([[0], np.cumsum(red)])
    subsets = {
        s: (np.array(list(itertools.combinations(range(k), s)), dtype=np.int64),
            np.array(list(itertools.combinations(range(r), s)), dtype=np.int64))
        for s in range(1, min(k, r) + 1)
    }

    def diag(blocks, rows, cols):
        M = np.zeros((rows[-1], cols[-1]), dtype=np.int64)
        for i, X in enumerate(blocks):
            M[rows[i] : rows[i + 1], cols[i] : cols[i + 1]] = X
        return M

    for Bc in itertools.product(*Bs):
        B = diag(Bc, ro, ro)
        BP = linalg.matmul(F, B, P)
        for Ac in itertools.product(*As):
            A = diag(Ac, co, co)
            BPA = linalg.matmul(F, BP, A)
            for Cc in itertools.product(*Cs):
                Cm = diag(Cc, ro, co)
                M = F.add(BPA, Cm)
                for s, (rsets, csets) in subsets.items():
                    bad = _all_minors_invertible(F, M, s, csets, rsets)
                    if bad is not None:
                        return SystematicWitness(A, B, Cm, bad[0], bad[1])
    return None


def systematic_msrd_test(C: FqmCode, split) -> bool:
    return systematic_msrd_witness(C, split) is None


def default_split(C: FqmCode) -> tuple[int, ...]:
    """Greedy split filling blocks left to right, the first one that admits a systematic form."""
    for split in _splits(C.partition, C.k):
        try:
            systematic_form(C, split)
            return split
        except ValueError:
            continue
    raise ValueError("no block split admits a systematic form")


def _splits(partition, k):
    if not partition:
        if k == 0:
            yield ()
        return
    for a in range(min(partition[0], k), -1, -1):
        for rest in _splits(partition[1:], k - a):
            yield (a,) + rest
