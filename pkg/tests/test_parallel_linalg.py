from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from sumrank import linalg
from sumrank.anticode import generalized_weights
from sumrank.code import covering_radius, distance_invariants, random_code_exact
from sumrank.distr import distributions
from sumrank.gf import tower_for
from sumrank.matspace import AmbientShape
from sumrank.parallel import chunk_ranges, pmap


def _square(x, y):
    return x * y


def test_pmap_keeps_order():
    items = [(i, i + 1) for i in range(9)]
    assert pmap(_square, items, workers=3) == pmap(_square, items, workers=1) == [i * (i + 1) for i in range(9)]
    assert chunk_ranges(10, 4) == [(0, 4), (4, 8), (8, 10)]


def test_results_do_not_depend_on_worker_count():
    # 2^17 codewords, so the sweeps split into several chunks
    F = tower_for(2).mid
    s = AmbientShape((3, 3, 3), (3, 2, 2))
    C = random_code_exact(F, s, 17, np.random.default_rng(0))
    one = (distance_invariants(C, 1), distributions(C, 1).sum_rank, generalized_weights(C, 1))
    three = (distance_invariants(C, 3), distributions(C, 3).sum_rank, generalized_weights(C, 3))
    assert one == three
    small = random_code_exact(F, AmbientShape((2, 2), (2, 2)), 2, np.random.default_rng(1))
    assert covering_radius(small, 1) == covering_radius(small, 3)


@given(st.sampled_from([2, 3, 4, 5]), st.integers(1, 5), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_rank_and_nullspace(q, r, c, seed):
    F = tower_for(q).mid
    ref = oracles.SmallField(F.p, tuple(F.describe().get("modulus", (0, 1))))
    M = np.random.default_rng(seed).integers(0, q, size=(r, c))
    rk = linalg.rank(F, M)
    assert rk == oracles.rank(ref, M.tolist())
    N = linalg.nullspace(F, M, c)
    assert N.shape == (c - rk, c)
    if N.size:
        assert not linalg.matmul(F, M, N.T).any()
    R, piv = linalg.rref(F, M)
    assert len(piv) == rk and linalg.rank(F, np.vstack([R, M])) == rk


@pytest.mark.parametrize("q", [2, 3, 4])
def test_inverse_and_intersection(q, rng):
    F = tower_for(q).mid
    from sumrank.code import random_invertible

    A = random_invertible(F, 4, rng)
    assert np.array_equal(linalg.matmul(F, A, linalg.inverse(F, A)), np.eye(4, dtype=np.int64))
    U = np.eye(4, dtype=np.int64)[:2]
    V = np.eye(4, dtype=np.int64)[1:3]
    I = linalg.intersection(F, U, V, 4)
    assert I.shape[0] == 1 and linalg.span_dim(F, I, np.eye(4, dtype=np.int64)[1:2]) == 1


def test_batch_rank_matches_single(rng):
    F = tower_for(3).mid
    mats = rng.integers(0, 3, size=(50, 3, 4))
    assert linalg.batch_rank(F, mats).tolist() == [linalg.rank(F, M) for M in mats]
