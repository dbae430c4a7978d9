"""Dense linear algebra over a :class:`~sumrank.gf.Field` on integer-coded numpy arrays."""

from __future__ import annotations

import numpy as np

from sumrank.gf import Field


def as_matrix(M, cols: int | None = None) -> np.ndarray:
    A = np.array(M, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(-1, cols if cols is not None else A.shape[0]) if A.size else np.zeros((0, cols or 0), np.int64)
    return A


def rref(F: Field, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with zero rows dropped, and the pivot columns."""
    A = np.array(M, dtype=np.int64)
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        lead = int(A[r, c])
        if lead != 1:
            A[r] = F.mul(F.inv(lead), A[r])
        col = A[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col)
        if others.size:
            A[others] = F.sub(A[others], F.mul(col[others, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(F: Field, M) -> int:
    A = np.asarray(M)
    if A.size == 0:
        return 0
    return len(rref(F, A)[1])


def nullspace(F: Field, M, ncols: int | None = None) -> np.ndarray:
    """Basis (as rows) of the right kernel {x : M x = 0}."""
    A = np.asarray(M, dtype=np.int64)
    if A.size == 0:
        n = A.shape[1] if A.ndim == 2 else ncols
        return np.eye(n, dtype=np.int64)
    R, piv = rref(F, A)
    n = A.shape[1]
    free = [c for c in range(n) if c not in piv]
    out = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        out[t, f] = 1
        for i, pc in enumerate(piv):
            out[t, pc] = F.neg(int(R[i, f]))
    return out


def matmul(F: Field, A, B) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if F.order == F.p:
        return (A @ B) % F.p
    prod = F.mul(A[..., :, :, None] if A.ndim >= 2 else A[:, None], B[None, :, :] if A.ndim >= 2 else B)
    return F.sum(prod, axis=-2)


def inverse(F: Field, A) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    R, piv = rref(F, np.hstack([A, np.eye(n, dtype=np.int64)]))
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ValueError("matrix is singular")
    return R[:n, n:]


def span_dim(F: Field, *blocks) -> int:
    mats = [np.asarray(b, dtype=np.int64) for b in blocks if np.asarray(b).size]
    if not mats:
        return 0
    return rank(F, np.vstack(mats))


def intersection(F: Field, U, V, n: int) -> np.ndarray:
    """Basis of rowspace(U) ∩ rowspace(V) in F^n (RREF rows)."""
    U = as_matrix(U, n)
    V = as_matrix(V, n)
    if U.shape[0] == 0 or V.shape[0] == 0:
        return np.zeros((0, n), np.int64)
    # x U = y V  <=>  (x, -y) [U; V] = 0
    K = nullspace(F, np.vstack([U, F.neg(V)]).T)
    if K.shape[0] == 0:
        return np.zeros((0, n), np.int64)
    W = matmul(F, K[:, : U.shape[0]], U)
    R, _ = rref(F, W)
    return R


def complement_constraints(F: Field, basis, n: int) -> np.ndarray:
    """Rows h with h.x = 0 exactly for x in rowspace(basis)."""
    B = as_matrix(basis, n)
    if B.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    return nullspace(F, B)


def batch_rref(F: Field, mats: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """RREF of a stack of matrices of shape (B, r, c); returns (rrefs, ranks).

    Zero rows stay at the bottom so each rref has the input shape.
    """
    A = np.array(mats, dtype=np.int64)
    B, rows, cols = A.shape
    r = np.zeros(B, dtype=np.int64)
    idx = np.arange(B)
    row_ids = np.arange(rows)
    for c in range(cols):
        col = A[:, :, c]
        cand = (col != 0) & (row_ids[None, :] >= r[:, None])
        has = cand.any(axis=1) & (r < rows)
        if not has.any():
            continue
        sel = idx[has]
        piv = np.argmax(cand[sel], axis=1)
        rr = r[sel]
        # swap pivot row into position rr
        row_p = A[sel, piv].copy()
        A[sel, piv] = A[sel, rr]
        lead = row_p[:, c]
        row_p = F.mul(F.inv(lead)[:, None], row_p)
        A[sel, rr] = row_p
        factors = A[sel, :, c].copy()
        factors[np.arange(sel.size), rr] = 0
        A[sel] = F.sub(A[sel], F.mul(factors[:, :, None], row_p[:, None, :]))
        r[sel] += 1
    return A, r


def batch_rank(F: Field, mats: np.ndarray) -> np.ndarray:
    mats = np.asarray(mats)
    if mats.shape[1] > mats.shape[2]:
        mats = np.swapaxes(mats, 1, 2)
    return batch_rref(F, mats)[1]
