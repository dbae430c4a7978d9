"""Optimal anticodes, the Anticode Bound, generalized weights and Wei duality.

Generalized weights are computed in the message space of the code: an
anticode product A = A_1 x ... x A_ell is cut out by linear constraints, each
block contributing a subspace S_i of functionals on F_q^k, and
dim(C ∩ A) = k - dim(S_1 + ... + S_ell).  A depth-first walk over the
blocks keeps the running sum in echelon form and ranks the last block in one
batched elimination.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from sumrank import config, linalg
from sumrank.code import LinearCode, canonicalize, dual_code, iter_block_rank_profiles
from sumrank.gf import Field
from sumrank.matspace import (
    AmbientShape,
    col_support_constraints,
    gaussian_count,
    row_support_constraints,
    subspaces,
)
from sumrank.parallel import pmap


@dataclass(frozen=True)
class OptimalBlockAnticode:
    """{X : rowsp(X) <= space} (row family) or {X : colsp(X) <= space} (column family, square blocks)."""

    block: int
    family: str
    space: tuple[tuple[int, ...], ...]
    m: int
    n: int

    @property
    def t(self) -> int:
        return len(self.space)

    @property
    def dim(self) -> int:
        return (self.m if self.family == "row" else self.n) * self.t

    def basis(self) -> np.ndarray:
        width = self.n if self.family == "row" else self.m
        return np.array(self.space, dtype=np.int64).reshape(self.t, width)

    def constraints(self, F: Field) -> np.ndarray:
        """Functionals on the block (row-major) whose kernel is the anticode."""
        if self.family == "row":
            return row_support_constraints(F, self.m, self.n, self.basis())
        return col_support_constraints(F, self.m, self.n, self.basis())

    def generators(self, F: Field) -> np.ndarray:
        """A basis of the anticode as flattened m x n matrices."""
        K = self.constraints(F)
        if K.shape[0] == 0:
            return np.eye(self.m * self.n, dtype=np.int64)
        return linalg.nullspace(F, K)


@dataclass(frozen=True)
class AnticodeProduct:
    shape: AmbientShape
    blocks: tuple[OptimalBlockAnticode, ...]

    @property
    def t_list(self) -> tuple[int, ...]:
        return tuple(b.t for b in self.blocks)

    @property
    def maxsrk(self) -> int:
        return sum(self.t_list)

    @property
    def dim(self) -> int:
        return sum(b.dim for b in self.blocks)

    def as_code(self, F: Field) -> LinearCode:
        s = self.shape
        rows = []
        for i, b in enumerate(self.blocks):
            G = b.generators(F)
            full = np.zeros((G.shape[0], s.dim), dtype=np.int64)
            full[:, s.block_slice(i)] = G
            rows.append(full)
        return canonicalize(F, s, np.vstack(rows) if rows else np.zeros((0, s.dim), np.int64))


def _rows_key(B: np.ndarray) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in r) for r in B)


def enum_block_anticodes(F: Field, shape: AmbientShape, i: int, t: int | None = None, families=("row", "col")):
    """Every optimal rank-metric anticode in block i (of maxrank t, or all t).

    Square blocks also get the column family; the zero and full anticodes are
    common to both families and are emitted once.
    """
    m, n = shape.m_list[i], shape.n_list[i]
    ts = range(n + 1) if t is None else [t]
    for tt in ts:
        if not 0 <= tt <= n:
            continue
        if "row" in families:
            for B in subspaces(F, n, tt):
                yield OptimalBlockAnticode(i, "row", _rows_key(B), m, n)
        if "col" in families and m == n and 0 < tt < n:
            for B in subspaces(F, m, tt):
                yield OptimalBlockAnticode(i, "col", _rows_key(B), m, n)


def anticode_bound_value(C: LinearCode, workers: int | None = None) -> int:
    """max over codewords of sum_i m_i rk(C_i)."""
    if C.dim == 0:
        return 0
    ranks = iter_block_rank_profiles(C, workers)
    return int((ranks @ np.array(C.shape.m_list)).max())


def is_optimal_anticode(C: LinearCode, workers: int | None = None) -> bool:
    return C.dim == anticode_bound_value(C, workers)


def old_anticode_bound(shape: AmbientShape, r: int) -> int:
    """m_1 n_1 + ... + m_i n_i + m_{i+1} delta for r = n_1 + ... + n_i + delta, 0 <= delta < n_{i+1}."""
    if not 0 <= r <= shape.n:
        raise ValueError(f"r={r} outside [0, {shape.n}]")
    total = 0
    for m, n in zip(shape.m_list, shape.n_list):
        if r >= n:
            total += m * n
            r -= n
        else:
            return total + m * r
    return total


# ---------------------------------------------------- message-space engine


@dataclass(frozen=True)
class Choice:
    """One per-block option: its maxsrk contribution, its dimension, and its constraints on messages."""

    t: int
    dim: int
    cons: np.ndarray
    label: object = None


def _message_constraints(F: Field, G_block: np.ndarray, K: np.ndarray) -> np.ndarray:
    """RREF rows spanning {a -> a G_block K^T column}: constraints on messages a in F^k."""
    k = G_block.shape[0]
    if K.shape[0] == 0 or k == 0:
        return np.zeros((0, k), np.int64)
    A = linalg.matmul(F, K, G_block.T)
    R, _ = linalg.rref(F, A)
    return R


def dedupe(choices: list[Choice], by_t: bool = True) -> list[Choice]:
    """Merge choices with equal constraint spaces.

    With ``by_t`` choices of different t are kept apart; otherwise only the
    smallest t survives (enough for minimizing maxsrk).
    """
    best: dict = {}
    for c in choices:
        key = (c.cons.tobytes(), c.cons.shape, c.t if by_t else None)
        if key not in best or c.t < best[key].t:
            best[key] = c
    return sorted(best.values(), key=lambda c: (c.t, c.cons.shape[0]))


def block_choices(C: LinearCode, families=("row", "col"), keep_labels: bool = False) -> list[list[Choice]]:
    F, s = C.field, C.shape
    out = []
    for i in range(s.ell):
        config.check(f"anticodes of block {i}", F.order ** max(s.m_list[i], s.n_list[i]), config.LIMITS.block)
        G_block = C.basis[:, s.block_slice(i)]
        block = []
        for A in enum_block_anticodes(F, s, i, families=families):
            cons = _message_constraints(F, G_block, A.constraints(F))
            block.append(Choice(A.t, A.dim, cons, A if keep_labels else None))
        out.append(block)
    return out


def _pad(choices: list[Choice], k: int) -> np.ndarray:
    c = max((ch.cons.shape[0] for ch in choices), default=0)
    out = np.zeros((len(choices), c, k), dtype=np.int64)
    for j, ch in enumerate(choices):
        out[j, : ch.cons.shape[0]] = ch.cons
    return out


def _walk(F: Field, k: int, blocks: list[list[Choice]], prefix: tuple[int, ...], t_max: int | None = None) -> np.ndarray:
    """Rows (choice indices..., sum_t, sum_dim, intersection dim) for all products extending prefix.

    With ``t_max`` only products with sum_t <= t_max are visited.
    """
    cap = np.iinfo(np.int64).max if t_max is None else t_max
    nb = len(blocks)
    rows: list[np.ndarray] = []
    last = blocks[-1]
    padded_last = _pad(last, k)
    last_t = np.array([c.t for c in last], dtype=np.int64)
    last_d = np.array([c.dim for c in last], dtype=np.int64)

    def emit(path, R, st, sd):
        sel = np.flatnonzero(st + last_t <= cap)
        if sel.size == 0:
            return
        if R.shape[0] == k:
            ranks = np.full(sel.size, k, dtype=np.int64)
        elif padded_last.shape[1] == 0:
            ranks = np.full(sel.size, R.shape[0], dtype=np.int64)
        else:
            stack = np.concatenate([np.broadcast_to(R, (sel.size,) + R.shape), padded_last[sel]], axis=1)
            ranks = linalg.batch_rank(F, stack)
        block = np.empty((sel.size, nb + 3), dtype=np.int64)
        block[:, : nb - 1] = path
        block[:, nb - 1] = sel
        block[:, nb] = st + last_t[sel]
        block[:, nb + 1] = sd + last_d[sel]
        block[:, nb + 2] = k - ranks
        rows.append(block)

    def rec(level, path, R, st, sd):
        if level == nb - 1:
            emit(path, R, st, sd)
            return
        for j, ch in enumerate(blocks[level]):
            if st + ch.t > cap:
                continue
            R2 = R
            if ch.cons.shape[0] and R.shape[0] < k:
                R2 = linalg.rref(F, np.vstack([R, ch.cons]))[0]
            rec(level + 1, path + [j], R2, st + ch.t, sd + ch.dim)

    R0 = np.zeros((0, k), np.int64)
    st = sd = 0
    for lvl, j in enumerate(prefix):
        ch = blocks[lvl][j]
        if ch.cons.shape[0]:
            R0 = linalg.rref(F, np.vstack([R0, ch.cons]))[0]
        st += ch.t
        sd += ch.dim
    if st <= cap:
        rec(len(prefix), list(prefix), R0, st, sd)
    if not rows:
        return np.zeros((0, nb + 3), np.int64)
    return np.vstack(rows)


def _count_products(blocks: list[list[Choice]], t_max: int | None) -> int:
    if t_max is None:
        total = 1
        for b in blocks:
            total *= len(b)
        return total
    ways = [1] + [0] * t_max
    for b in blocks:
        nxt = [0] * (t_max + 1)
        for s, w in enumerate(ways):
            if w:
                for ch in b:
                    if s + ch.t <= t_max:
                        nxt[s + ch.t] += w
        ways = nxt
    return sum(ways)


def product_table(F: Field, k: int, blocks: list[list[Choice]], workers: int | None = None,
                  t_max: int | None = None) -> np.ndarray:
    """Every product of per-block choices with (indices, sum_t, sum_dim, dim of intersection).

    Work is split on the first block's choices; rows come back in
    lexicographic order of the choice indices whatever the worker count.
    ``t_max`` restricts to products with sum_t <= t_max.
    """
    config.check("anticode product enumeration", _count_products(blocks, t_max), config.LIMITS.lattice)
    if len(blocks) == 1:
        return _walk(F, k, blocks, (), t_max)
    tasks = [(F, k, blocks, (j,), t_max) for j in range(len(blocks[0]))]
    return np.vstack(pmap(_walk, tasks, workers))


def min_t_by_dim(table: np.ndarray, k: int) -> list[int]:
    st, inter = table[:, -3], table[:, -1]
    out = []
    for r in range(1, k + 1):
        ok = inter >= r
        out.append(int(st[ok].min()))
    return out


def generalized_weights(C: LinearCode, workers: int | None = None) -> list[int]:
    """d_1..d_k: least maxsrk of an anticode product meeting C in dimension >= r."""
    if C.dim == 0:
        return []
    blocks = [dedupe(b, by_t=False) for b in block_choices(C)]
    return min_t_by_dim(product_table(C.field, C.dim, blocks, workers), C.dim)


def generalized_row_support_weights(C: LinearCode, workers: int | None = None) -> list[int]:
    """d_r^Supp: least dim L over products of subspaces L with dim(C ∩ V_L) >= r."""
    if C.dim == 0:
        return []
    blocks = [dedupe(b, by_t=False) for b in block_choices(C, families=("row",))]
    return min_t_by_dim(product_table(C.field, C.dim, blocks, workers), C.dim)


def generalized_weights_bruteforce(C: LinearCode) -> list[int]:
    """d_r straight from the definition: min wt(D) over all subcodes D of dim >= r (tiny codes only)."""
    from sumrank.code import code_weight

    F, k = C.field, C.dim
    config.check("subcode enumeration", sum(gaussian_count(k, r, F.order) for r in range(k + 1)), config.LIMITS.sweep)
    best = {}
    for r in range(1, k + 1):
        for B in subspaces(F, k, r):
            D = canonicalize(F, C.shape, linalg.matmul(F, B, C.basis))
            w = code_weight(D)
            best[r] = min(best.get(r, w), w)
    return [min(best[s] for s in range(r, k + 1)) for r in range(1, k + 1)]


def ambient_weight(shape: AmbientShape, s: int) -> int:
    """d_s(M) for s = sum_{i<j} m_i n_i + delta m_j + sigma with 0 < sigma <= m_j."""
    if not 1 <= s <= shape.dim:
        raise ValueError(f"s={s} outside [1, {shape.dim}]")
    before = 0
    for m, n in zip(shape.m_list, shape.n_list):
        if s <= m * n:
            return before + (s - 1) // m + 1
        s -= m * n
        before += n
    raise AssertionError("unreachable")


def oac_generalized_weights(t_list, m_list) -> list[int]:
    """Closed-form weights of a product of optimal anticodes with maxranks t_i in blocks with m_i rows."""
    out = []
    before = 0
    for t, m in zip(t_list, m_list):
        for tau in range(t):
            out.extend([before + tau + 1] * m)
        before += t
    return out


def _weight_sets(weights: list[int], r: int, m: int) -> list[int]:
    """{ d_{r+sm} : r+sm in [len(weights)] }."""
    k = len(weights)
    return sorted({weights[x - 1] for x in range(1, k + 1) if (x - r) % m == 0})


def wei_duality_check(C: LinearCode, workers: int | None = None, weights=None, dual_weights=None) -> bool:
    """D_r(C^perp) = [n] minus {n + 1 - d : d in D_{r + dim C}(C)} for every r in [m]."""
    s = C.shape
    if not s.equal_m:
        raise ValueError("Wei duality needs all blocks to have the same number of rows")
    m, n = s.m_list[0], s.n
    w = generalized_weights(C, workers) if weights is None else weights
    wd = generalized_weights(dual_code(C), workers) if dual_weights is None else dual_weights
    for r in range(1, m + 1):
        lhs = set(_weight_sets(wd, r, m))
        rhs = set(range(1, n + 1)) - {n + 1 - d for d in _weight_sets(w, r + C.dim, m)}
        if lhs != rhs:
            return False
    return True


# ------------------------------------------------------------ classification


def hamming_optimal_anticodes(F: Field, t: int) -> list[np.ndarray]:
    """All subspaces B of F^t with dim B = maxwt(B) (RREF bases)."""
    out = []
    for B in subspaces(F, t):
        if B.shape[0] == 0:
            out.append(B)
            continue
        msgs = np.array(list(itertools.product(range(F.order), repeat=B.shape[0])), dtype=np.int64)
        words = linalg.matmul(F, msgs, B)
        if int((words != 0).sum(axis=1).max()) == B.shape[0]:
            out.append(B)
    return out


def hamming_tail_length(shape: AmbientShape) -> int:
    """Number of trailing blocks with m_i = 1 (they are 1 x 1)."""
    return sum(1 for m in shape.m_list if m == 1)


def tail_is_nonproduct(F: Field, shape: AmbientShape) -> bool:
    return F.order == 2 and hamming_tail_length(shape) > 2


def anticode_choices(C: LinearCode, keep_labels: bool = False) -> list[list[Choice]]:
    """Per-block choices covering every optimal anticode of M.

    Blocks with m_i > 1 contribute their rank-metric anticodes; for q = 2 and
    a Hamming tail of length > 2 the tail becomes one pseudo-block whose
    choices are all optimal Hamming anticodes of F_2^tail.
    """
    F, s = C.field, C.shape
    if not tail_is_nonproduct(F, s):
        return block_choices(C, keep_labels=keep_labels)
    tail = hamming_tail_length(s)
    head = s.ell - tail
    per = block_choices(C, keep_labels=keep_labels)[:head]
    lo = s.offsets[head] if head < s.ell else s.dim
    G_tail = C.basis[:, lo:]
    tail_choices = []
    for B in hamming_optimal_anticodes(F, tail):
        K = linalg.complement_constraints(F, B, tail)
        cons = _message_constraints(F, G_tail, K)
        tail_choices.append(Choice(B.shape[0], B.shape[0], cons, ("tail", _rows_key(B)) if keep_labels else None))
    per.append(tail_choices)
    return per


def enumerate_optimal_anticodes(F: Field, shape: AmbientShape) -> list[LinearCode]:
    """Every optimal anticode of M as predicted by the product classification (with the Hamming tail)."""
    per_block = []
    tail = hamming_tail_length(shape) if tail_is_nonproduct(F, shape) else 0
    head = shape.ell - tail
    for i in range(head):
        gens = []
        for A in enum_block_anticodes(F, shape, i):
            G = A.generators(F)
            full = np.zeros((G.shape[0], shape.dim), dtype=np.int64)
            full[:, shape.block_slice(i)] = G
            gens.append(full)
        per_block.append(gens)
    if tail:
        lo = shape.offsets[head]
        gens = []
        for B in hamming_optimal_anticodes(F, tail):
            full = np.zeros((B.shape[0], shape.dim), dtype=np.int64)
            full[:, lo:] = B
            gens.append(full)
        per_block.append(gens)
    out = []
    for combo in itertools.product(*per_block):
        out.append(canonicalize(F, shape, np.vstack(combo)))
    return out
