"""The ambient space M = prod F_q^{m_i x n_i}: shapes, codewords, supports, sum-rank weight."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from sumrank import config, linalg
from sumrank.gf import Field


@dataclass(frozen=True)
class AmbientShape:
    """Block sizes (m_i, n_i); the flattening of M is block by block, each row-major."""

    m_list: tuple[int, ...]
    n_list: tuple[int, ...]

    def __init__(self, m_list: Sequence[int], n_list: Sequence[int], *, strict: bool = True):
        object.__setattr__(self, "m_list", tuple(int(x) for x in m_list))
        object.__setattr__(self, "n_list", tuple(int(x) for x in n_list))
        if len(self.m_list) != len(self.n_list) or not self.m_list:
            raise ValueError("m_list and n_list must be non-empty and of equal length")
        if any(x <= 0 for x in self.m_list + self.n_list):
            raise ValueError("block sizes must be positive")
        if strict:
            if any(a < b for a, b in zip(self.m_list, self.m_list[1:])):
                raise ValueError(f"m_list {self.m_list} must be non-increasing (use AmbientShape.normalized)")
            if any(n > m for m, n in zip(self.m_list, self.n_list)):
                raise ValueError(f"need n_i <= m_i, got m={self.m_list} n={self.n_list}")

    @classmethod
    def normalized(cls, m_list, n_list) -> tuple[AmbientShape, tuple[int, ...]]:
        """Sort blocks by decreasing m (stable); returns the shape and the permutation used."""
        perm = tuple(sorted(range(len(m_list)), key=lambda i: -m_list[i]))
        return cls([m_list[i] for i in perm], [n_list[i] for i in perm]), perm

    @classmethod
    def uniform(cls, m: int, n_list) -> AmbientShape:
        return cls([m] * len(n_list), n_list)

    def __repr__(self) -> str:
        inner = " x ".join(f"{m}x{n}" for m, n in zip(self.m_list, self.n_list))
        return f"AmbientShape({inner})"

    @property
    def ell(self) -> int:
        return len(self.m_list)

    @property
    def n(self) -> int:
        return sum(self.n_list)

    @property
    def m_bar(self) -> int:
        return sum(self.m_list)

    @property
    def dim(self) -> int:
        return sum(m * n for m, n in zip(self.m_list, self.n_list))

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, t = [], 0
        for m, n in zip(self.m_list, self.n_list):
            out.append(t)
            t += m * n
        return tuple(out)

    @cached_property
    def col_offsets(self) -> tuple[int, ...]:
        return tuple(itertools.accumulate((0,) + self.n_list[:-1]))

    @property
    def equal_m(self) -> bool:
        return len(set(self.m_list)) == 1

    def block_slice(self, i: int) -> slice:
        o = self.offsets[i]
        return slice(o, o + self.m_list[i] * self.n_list[i])

    def blocks_of(self, vecs: np.ndarray, i: int) -> np.ndarray:
        """Block i of a stack of flattened vectors, shape (..., m_i, n_i)."""
        v = np.asarray(vecs)[..., self.block_slice(i)]
        return v.reshape(v.shape[:-1] + (self.m_list[i], self.n_list[i]))

    def column_block(self, col: int) -> tuple[int, int]:
        """Global column index (0-based) -> (block, local column)."""
        for i, off in enumerate(self.col_offsets):
            if col < off + self.n_list[i]:
                return i, col - off
        raise IndexError(col)

    def describe(self) -> dict:
        return {"ell": self.ell, "m_list": list(self.m_list), "n_list": list(self.n_list)}


@dataclass(frozen=True, eq=False)
class Codeword:
    shape: AmbientShape
    blocks: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.blocks) != self.shape.ell:
            raise ValueError("wrong number of blocks")
        for b, m, n in zip(self.blocks, self.shape.m_list, self.shape.n_list):
            if np.shape(b) != (m, n):
                raise ValueError(f"block of shape {np.shape(b)} where {(m, n)} expected")

    @classmethod
    def from_blocks(cls, shape: AmbientShape, blocks) -> Codeword:
        bl = []
        for b, m, n in zip(blocks, shape.m_list, shape.n_list):
            a = np.array(b, dtype=np.int64)
            bl.append(a.reshape(m, n))
        return cls(shape, tuple(bl))

    @classmethod
    def from_vector(cls, shape: AmbientShape, v) -> Codeword:
        v = np.asarray(v, dtype=np.int64)
        if v.shape != (shape.dim,):
            raise ValueError("vector length does not match shape")
        return cls(shape, tuple(shape.blocks_of(v, i).copy() for i in range(shape.ell)))

    @classmethod
    def zero(cls, shape: AmbientShape) -> Codeword:
        return cls.from_vector(shape, np.zeros(shape.dim, np.int64))

    def to_vector(self) -> np.ndarray:
        return np.concatenate([b.ravel() for b in self.blocks]) if self.blocks else np.zeros(0, np.int64)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Codeword)
            and self.shape == other.shape
            and all(np.array_equal(a, b) for a, b in zip(self.blocks, other.blocks))
        )

    def __hash__(self) -> int:
        return hash((self.shape, self.to_vector().tobytes()))

    def __repr__(self) -> str:
        return f"Codeword({[b.tolist() for b in self.blocks]})"


def _check_same(C: Codeword, D: Codeword) -> None:
    if C.shape != D.shape:
        raise ValueError("codewords live in different ambient spaces")


# ------------------------------------------------------------------ ranks


def rank_rref(F: Field, M) -> tuple[int, np.ndarray, np.ndarray]:
    """(rank, full-size rref, rowspace basis) of a matrix over F."""
    A = np.asarray(M, dtype=np.int64)
    R, piv = linalg.rref(F, A) if A.size else (np.zeros((0, A.shape[1] if A.ndim == 2 else 0), np.int64), [])
    full = np.zeros_like(A)
    full[: len(piv)] = R
    return len(piv), full, R


def srk(F: Field, C: Codeword) -> int:
    return sum(linalg.rank(F, b) for b in C.blocks)


def sr_distance(F: Field, C: Codeword, D: Codeword) -> int:
    _check_same(C, D)
    return sum(linalg.rank(F, F.sub(a, b)) for a, b in zip(C.blocks, D.blocks))


def trace_form(F: Field, D: Codeword, C: Codeword) -> int:
    """Tr(D, C) = sum_i tr(D_i C_i^t), i.e. the flattened dot product."""
    _check_same(C, D)
    return int(F.sum(F.mul(D.to_vector(), C.to_vector()))) if D.shape.dim else 0


def block_ranks(F: Field, shape: AmbientShape, vecs: np.ndarray) -> np.ndarray:
    """Per-block ranks of a stack of flattened vectors: shape (B, ell)."""
    vecs = np.asarray(vecs, dtype=np.int64).reshape(-1, shape.dim)
    out = np.zeros((vecs.shape[0], shape.ell), dtype=np.int64)
    for i in range(shape.ell):
        out[:, i] = linalg.batch_rank(F, shape.blocks_of(vecs, i))
    return out


def batch_srk(F: Field, shape: AmbientShape, vecs: np.ndarray) -> np.ndarray:
    return block_ranks(F, shape, vecs).sum(axis=1)


def embed_block_diag(C: Codeword) -> np.ndarray:
    """The block-diagonal image of C in F_q^{m_bar x n}."""
    s = C.shape
    out = np.zeros((s.m_bar, s.n), dtype=np.int64)
    r = 0
    for i, b in enumerate(C.blocks):
        c = s.col_offsets[i]
        out[r : r + s.m_list[i], c : c + s.n_list[i]] = b
        r += s.m_list[i]
    return out


# --------------------------------------------------------------- supports


def _key(R: np.ndarray) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in R)


@dataclass(frozen=True)
class SupportElem:
    """L_1 x ... x L_ell with each L_i given by its RREF basis (no zero rows)."""

    n_list: tuple[int, ...]
    spaces: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.spaces)

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def basis(self, i: int) -> np.ndarray:
        return np.array(self.spaces[i], dtype=np.int64).reshape(len(self.spaces[i]), self.n_list[i])

    @classmethod
    def from_bases(cls, F: Field, n_list, bases) -> SupportElem:
        spaces = []
        for n, B in zip(n_list, bases):
            B = linalg.as_matrix(B, n)
            R = linalg.rref(F, B)[0] if B.shape[0] else np.zeros((0, n), np.int64)
            spaces.append(_key(R))
        return cls(tuple(n_list), tuple(spaces))

    @classmethod
    def zero(cls, n_list) -> SupportElem:
        return cls(tuple(n_list), tuple(() for _ in n_list))

    @classmethod
    def full(cls, n_list) -> SupportElem:
        return cls(tuple(n_list), tuple(_key(np.eye(n, dtype=np.int64)) for n in n_list))

    def contains(self, F: Field, other: SupportElem) -> bool:
        for i, n in enumerate(self.n_list):
            if other.dims[i] and linalg.span_dim(F, self.basis(i), other.basis(i)) != self.dims[i]:
                return False
        return True

    def encode(self) -> str:
        """Concatenated RREF row codes, blocks separated by '|'."""
        out = []
        for sp in self.spaces:
            out.append(".".join("".join(str(x) if x < 10 else f"({x})" for x in row) for row in sp) or "0")
        return "|".join(out)


def support_of(F: Field, C: Codeword) -> SupportElem:
    return SupportElem.from_bases(F, C.shape.n_list, C.blocks)


def support_of_code_join(F: Field, shape: AmbientShape, basis: np.ndarray) -> SupportElem:
    """Smallest L with supp(C) <= L for every C in the span of ``basis``."""
    bases = []
    for i in range(shape.ell):
        rows = shape.blocks_of(basis, i).reshape(-1, shape.n_list[i])
        bases.append(rows)
    return SupportElem.from_bases(F, shape.n_list, bases)


def subspaces(F: Field, n: int, dim: int | None = None) -> Iterator[np.ndarray]:
    """Every subspace of F^n (optionally of one dimension) as an RREF basis, deterministic order."""
    q = F.order
    config.check(f"subspace enumeration of GF({q})^{n}", q**n, config.LIMITS.block)
    dims = range(n + 1) if dim is None else [dim]
    for t in dims:
        if t < 0 or t > n:
            continue
        for piv in itertools.combinations(range(n), t):
            free = [(i, j) for i, p in enumerate(piv) for j in range(p + 1, n) if j not in piv]
            for vals in itertools.product(range(q), repeat=len(free)):
                B = np.zeros((t, n), dtype=np.int64)
                for i, p in enumerate(piv):
                    B[i, p] = 1
                for (i, j), v in zip(free, vals):
                    B[i, j] = v
                yield B


def gaussian_count(a: int, b: int, q: int) -> int:
    if a < 0 or b < 0 or b > a:
        return 0
    num = den = 1
    for i in range(b):
        num *= q ** (a - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def support_lattice_enum(F: Field, n_list, dim_profile=None) -> Iterator[SupportElem]:
    """All products L_1 x ... x L_ell, each exactly once, in lexicographic block order."""
    n_list = tuple(n_list)
    q = F.order
    total = 1
    for i, n in enumerate(n_list):
        if dim_profile is None:
            total *= sum(gaussian_count(n, b, q) for b in range(n + 1))
        else:
            total *= gaussian_count(n, dim_profile[i], q)
    config.check("support lattice enumeration", total, config.LIMITS.lattice)
    per_block = []
    for i, n in enumerate(n_list):
        d = None if dim_profile is None else dim_profile[i]
        per_block.append([_key(B) for B in subspaces(F, n, d)])
    for combo in itertools.product(*per_block):
        yield SupportElem(n_list, tuple(combo))


def row_support_constraints(F: Field, m: int, n: int, L: np.ndarray) -> np.ndarray:
    """Linear functionals on F^{m x n} (row-major) cutting out {X : rowsp(X) <= L}."""
    H = linalg.complement_constraints(F, L, n)
    out = np.zeros((m * H.shape[0], m * n), dtype=np.int64)
    for r in range(m):
        for t, h in enumerate(H):
            out[r * H.shape[0] + t, r * n : (r + 1) * n] = h
    return out


def col_support_constraints(F: Field, m: int, n: int, L: np.ndarray) -> np.ndarray:
    """Functionals cutting out {X : colsp(X) <= L} for L <= F^m."""
    H = linalg.complement_constraints(F, L, m)
    out = np.zeros((n * H.shape[0], m * n), dtype=np.int64)
    for c in range(n):
        for t, h in enumerate(H):
            row = np.zeros((m, n), dtype=np.int64)
            row[:, c] = h
            out[c * H.shape[0] + t] = row.ravel()
    return out


def support_space_constraints(F: Field, shape: AmbientShape, L: SupportElem) -> np.ndarray:
    """Functionals on M whose common kernel is the row-support space V_L."""
    rows = []
    for i in range(shape.ell):
        K = row_support_constraints(F, shape.m_list[i], shape.n_list[i], L.basis(i))
        full = np.zeros((K.shape[0], shape.dim), dtype=np.int64)
        full[:, shape.block_slice(i)] = K
        rows.append(full)
    return np.vstack(rows) if rows else np.zeros((0, shape.dim), np.int64)
