"""Sum-rank, rank-list and support distributions, and the MacWilliams-type transforms.

Everything here is exact: counts and transform terms are Python integers.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from sumrank import config, linalg
from sumrank.code import CHUNK, LinearCode, dual_code
from sumrank.gf import Field
from sumrank.matspace import AmbientShape, SupportElem, subspaces
from sumrank.parallel import chunk_ranges, pmap

RankListDistribution = dict[tuple[int, ...], int]
SupportDistribution = dict[SupportElem, int]


@lru_cache(maxsize=None)
def gaussian_binomial(a: int, b: int, q: int) -> int:
    if a < 0 or b < 0 or b > a:
        return 0
    num = den = 1
    for i in range(b):
        num *= q ** (a - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _binom2(x: int) -> int:
    return x * (x - 1) // 2


@dataclass(frozen=True)
class Distributions:
    sum_rank: list[int]
    rank_list: RankListDistribution
    support: SupportDistribution


def _tally_chunk(C: LinearCode, lo: int, hi: int) -> tuple[Counter, Counter]:
    F, s = C.field, C.shape
    words = C.codewords_range(lo, hi)
    ranks = np.zeros((words.shape[0], s.ell), dtype=np.int64)
    keys = []
    for i in range(s.ell):
        R, r = linalg.batch_rref(F, s.blocks_of(words, i))
        ranks[:, i] = r
        keys.append(R.reshape(words.shape[0], -1))
    rl = Counter()
    uniq, counts = np.unique(ranks, axis=0, return_counts=True)
    for u, c in zip(uniq, counts):
        rl[tuple(int(x) for x in u)] += int(c)
    sup = Counter()
    allkeys = np.hstack(keys) if keys else np.zeros((words.shape[0], 0), np.int64)
    uniq, counts = np.unique(allkeys, axis=0, return_counts=True)
    for u, c in zip(uniq, counts):
        sup[tuple(int(x) for x in u)] += int(c)
    return rl, sup


def _support_from_key(shape: AmbientShape, key: tuple[int, ...]) -> SupportElem:
    spaces, pos = [], 0
    for m, n in zip(shape.m_list, shape.n_list):
        R = np.array(key[pos : pos + m * n], dtype=np.int64).reshape(m, n)
        pos += m * n
        spaces.append(tuple(tuple(int(x) for x in row) for row in R if row.any()))
    return SupportElem(shape.n_list, tuple(spaces))


def distributions(C: LinearCode, workers: int | None = None) -> Distributions:
    """Exhaustive tallies of the three distributions of C."""
    config.check("distribution sweep", C.size)
    parts = pmap(_tally_chunk, [(C, lo, hi) for lo, hi in chunk_ranges(C.size, CHUNK)], workers)
    rl, sup = Counter(), Counter()
    for a, b in parts:
        rl.update(a)
        sup.update(b)
    sr = [0] * (C.shape.n + 1)
    for v, c in rl.items():
        sr[sum(v)] += c
    support = {_support_from_key(C.shape, k): c for k, c in sup.items()}
    return Distributions(sr, dict(sorted(rl.items())), dict(sorted(support.items(), key=lambda kv: kv[0].encode())))


def rank_vectors(shape: AmbientShape):
    return np.ndindex(*(n + 1 for n in shape.n_list))


def _check_total(W: dict, q: int, k: int) -> None:
    if any(c < 0 for c in W.values()):
        raise ValueError("negative count in distribution")
    if sum(W.values()) != q**k:
        raise ValueError(f"distribution sums to {sum(W.values())}, not q^k = {q**k}")


def macwilliams_rank_list(W: RankListDistribution, shape: AmbientShape, k: int, q: int) -> RankListDistribution:
    """Rank-list distribution of the dual predicted from that of a k-dimensional code.

    The sum over w <= v factors block by block, so each block contributes
    T_i(u_i, v_i) = sum_w q^{m_i w} (-1)^{v_i-w} q^{binom(v_i-w, 2)} [n_i-u_i, w]_q [n_i-w, v_i-w]_q.
    """
    _check_total(W, q, k)
    for u in W:
        if len(u) != shape.ell or any(not 0 <= x <= n for x, n in zip(u, shape.n_list)):
            raise ValueError(f"rank vector {u} does not fit {shape}")

    @lru_cache(maxsize=None)
    def T(i: int, u: int, v: int) -> int:
        m, n = shape.m_list[i], shape.n_list[i]
        total = 0
        for w in range(v + 1):
            term = q ** (m * w) * q ** _binom2(v - w) * gaussian_binomial(n - u, w, q) * gaussian_binomial(n - w, v - w, q)
            total += -term if (v - w) % 2 else term
        return total

    size = q**k
    out: RankListDistribution = {}
    for v in rank_vectors(shape):
        acc = 0
        for u, c in W.items():
            if not c:
                continue
            prod = c
            for i in range(shape.ell):
                prod *= T(i, u[i], v[i])
                if not prod:
                    break
            acc += prod
        if acc % size:
            raise ValueError("transform is not integral: input is not a code distribution")
        if acc:
            out[tuple(int(x) for x in v)] = acc // size
    return out


def _block_subspaces(F: Field, n: int) -> list[np.ndarray]:
    return list(subspaces(F, n))


def macwilliams_support(W: SupportDistribution, shape: AmbientShape, k: int, F: Field) -> SupportDistribution:
    """Support distribution of the dual predicted from that of a k-dimensional code.

    W_L(C^perp) = |C|^{-1} sum_H W_H(C) sum_{u <= v} q^{sum m_i u_i}
    prod_i (-1)^{v_i-u_i} q^{binom(v_i-u_i, 2)} [dim(H_i^perp ∩ L_i), u_i]_q,
    which counts, with Moebius weights, the supports L' <= L contained in H^perp.
    """
    q = F.order
    _check_total(W, q, k)
    per_block = [_block_subspaces(F, n) for n in shape.n_list]
    keys = [{tuple(tuple(int(x) for x in r) for r in B): j for j, B in enumerate(bl)} for bl in per_block]

    # dim(H_i^perp ∩ L_i) for every H_i occurring in W and every L_i
    perp_idx: dict[tuple[int, tuple], int] = {}
    inter: dict[tuple[int, int, int], int] = {}
    for H in W:
        for i, sp in enumerate(H.spaces):
            if (i, sp) in perp_idx:
                continue
            n = shape.n_list[i]
            Hp = linalg.complement_constraints(F, H.basis(i), n) if sp else np.eye(n, dtype=np.int64)
            hp_key = tuple(tuple(int(x) for x in r) for r in (linalg.rref(F, Hp)[0] if Hp.shape[0] else Hp))
            perp_idx[(i, sp)] = keys[i][hp_key]
    for (i, sp), hj in perp_idx.items():
        Hp = per_block[i][hj]
        for lj, L in enumerate(per_block[i]):
            if (i, hj, lj) not in inter:
                inter[(i, hj, lj)] = linalg.intersection(F, Hp, L, shape.n_list[i]).shape[0]

    @lru_cache(maxsize=None)
    def block_term(i: int, a: int, v: int) -> int:
        # sum over u <= v of q^{m_i u} (-1)^{v-u} q^{binom(v-u,2)} [a, u]_q
        m = shape.m_list[i]
        total = 0
        for u in range(v + 1):
            term = q ** (m * u) * q ** _binom2(v - u) * gaussian_binomial(a, u, q)
            total += -term if (v - u) % 2 else term
        return total

    size = q**k
    out: SupportDistribution = {}
    H_list = [(tuple(perp_idx[(i, sp)] for i, sp in enumerate(H.spaces)), c) for H, c in W.items() if c]
    for combo in itertools.product(*(range(len(bl)) for bl in per_block)):
        v = [per_block[i][j].shape[0] for i, j in enumerate(combo)]
        acc = 0
        for hidx, c in H_list:
            prod = c
            for i, lj in enumerate(combo):
                prod *= block_term(i, inter[(i, hidx[i], lj)], v[i])
                if not prod:
                    break
            acc += prod
        if acc % size:
            raise ValueError("transform is not integral: input is not a code distribution")
        if acc:
            L = SupportElem(shape.n_list, tuple(tuple(tuple(int(x) for x in r) for r in per_block[i][j]) for i, j in enumerate(combo)))
            out[L] = acc // size
    return dict(sorted(out.items(), key=lambda kv: kv[0].encode()))


def support_to_rank_list(W: SupportDistribution) -> RankListDistribution:
    out: Counter = Counter()
    for L, c in W.items():
        out[L.dims] += c
    return dict(sorted(out.items()))


def rank_list_to_sum_rank(W: RankListDistribution, n: int) -> list[int]:
    out = [0] * (n + 1)
    for v, c in W.items():
        out[sum(v)] += c
    return out


def binomial_moments_sides(shape: AmbientShape, q: int, k: int, W: RankListDistribution,
                           W_dual: RankListDistribution, v) -> tuple[Fraction, Fraction]:
    """Both sides of the binomial-moment identity at v."""
    lhs = 0
    for u, c in W.items():
        prod = c
        for i in range(shape.ell):
            prod *= gaussian_binomial(shape.n_list[i] - u[i], v[i] - u[i], q)
        lhs += prod
    rhs = 0
    for u, c in W_dual.items():
        prod = c
        for i in range(shape.ell):
            prod *= gaussian_binomial(shape.n_list[i] - u[i], v[i], q)
        rhs += prod
    expo = sum(m * (n - x) for m, n, x in zip(shape.m_list, shape.n_list, v))
    return Fraction(lhs), Fraction(q**k * rhs, q**expo)


def binomial_moments_check(C: LinearCode, workers: int | None = None, W=None, W_dual=None) -> bool:
    """The binomial-moment identity for every v in prod [0, n_i]."""
    q = C.field.order
    W = distributions(C, workers).rank_list if W is None else W
    W_dual = distributions(dual_code(C), workers).rank_list if W_dual is None else W_dual
    for v in rank_vectors(C.shape):
        lhs, rhs = binomial_moments_sides(C.shape, q, C.dim, W, W_dual, v)
        if lhs != rhs:
            return False
    return True


@dataclass(frozen=True)
class NoMacWilliamsWitness:
    codes: tuple[LinearCode, LinearCode]
    sum_rank: tuple[list[int], list[int]]
    dual_sum_rank: tuple[list[int], list[int]]


def no_macwilliams_witness() -> NoMacWilliamsWitness:
    """Two codes with equal sum-rank distributions whose duals' distributions differ."""
    from sumrank.catalog import duality_pair

    C1, C2 = duality_pair()
    d1, d2 = distributions(C1), distributions(C2)
    e1, e2 = distributions(dual_code(C1)), distributions(dual_code(C2))
    return NoMacWilliamsWitness((C1, C2), (d1.sum_rank, d2.sum_rank), (e1.sum_rank, e2.sum_rank))
