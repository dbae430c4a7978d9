from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from sumrank.anticode import (
    ambient_weight,
    anticode_bound_value,
    enumerate_optimal_anticodes,
    generalized_row_support_weights,
    generalized_weights,
    generalized_weights_bruteforce,
    hamming_optimal_anticodes,
    is_optimal_anticode,
    oac_generalized_weights,
    old_anticode_bound,
    wei_duality_check,
)
from sumrank.catalog import duality_pair, three_block_code
from sumrank.code import LinearCode, canonicalize, code_weight, dual_code, minimum_distance, random_code_exact
from sumrank.gf import tower_for
from sumrank.matspace import AmbientShape, subspaces

SMALL = [((2, 1), (2, 1)), ((3, 2, 1), (1, 2, 1)), ((2, 2), (2, 1)), ((1, 1, 1), (1, 1, 1)), ((3, 3), (1, 3))]
EQUAL_M = [((2, 2), (2, 1)), ((2, 2), (1, 1)), ((3, 3), (2, 1)), ((1, 1, 1, 1), (1, 1, 1, 1)), ((2, 2, 2), (1, 2, 1))]


@given(st.sampled_from([2, 3]), st.sampled_from(SMALL), st.integers(0, 2**32 - 1))
def test_generalized_weights_match_oracle(q, mn, seed):
    F = tower_for(q).mid
    ref = oracles.prime_field(q)
    s = AmbientShape(*mn)
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, (4 if q == 2 else 3) + 1))
    C = random_code_exact(F, s, min(k, s.dim), rng)
    expected = oracles.generalized_weights(ref, C.basis.tolist(), s.m_list, s.n_list)
    assert generalized_weights(C) == expected
    assert generalized_weights_bruteforce(C) == expected


def test_three_block_example_weights():
    assert generalized_weights(three_block_code(2)) == [1, 1, 2, 4]
    assert generalized_weights(three_block_code(3)) == [1, 1, 2, 4]


@given(st.sampled_from(SMALL), st.integers(0, 2**32 - 1))
def test_weight_growth_laws(mn, seed):
    F = tower_for(2).mid
    s = AmbientShape(*mn)
    rng = np.random.default_rng(seed)
    C = random_code_exact(F, s, int(rng.integers(1, s.dim + 1)), rng)
    w = generalized_weights(C)
    assert w[0] == minimum_distance(C)
    assert w == sorted(w)
    assert w[-1] == code_weight(C)
    # a subsequence of the ambient weights
    amb = [ambient_weight(s, r) for r in range(1, s.dim + 1)]
    assert all(w[r] <= amb[s.dim - C.dim + r] for r in range(C.dim))
    # weights grow after m_k steps once they reach block k
    for r in range(C.dim):
        for k in range(s.ell):
            if r + s.m_list[k] < C.dim and w[r] > sum(s.n_list[:k]):
                assert w[r + s.m_list[k]] > w[r]


def test_ambient_weights_take_every_value():
    s = AmbientShape((3, 2, 1), (1, 2, 1))
    assert [ambient_weight(s, r) for r in range(1, s.dim + 1)] == [1, 1, 1, 2, 2, 3, 3, 4]
    assert generalized_weights(LinearCode.ambient(tower_for(2).mid, s)) == [1, 1, 1, 2, 2, 3, 3, 4]


@given(st.sampled_from(EQUAL_M), st.integers(0, 2**32 - 1))
def test_wei_duality_for_equal_m(mn, seed):
    F = tower_for(2).mid
    s = AmbientShape(*mn)
    rng = np.random.default_rng(seed)
    C = random_code_exact(F, s, int(rng.integers(0, s.dim + 1)), rng)
    assert wei_duality_check(C)


def test_wei_duality_needs_equal_m():
    C1, C2 = duality_pair()
    with pytest.raises(ValueError):
        wei_duality_check(C1)
    assert generalized_weights(C1) == generalized_weights(C2)
    assert generalized_weights(dual_code(C1))[3] == 2
    assert generalized_weights(dual_code(C2))[3] == 3


def test_anticode_bound_and_classification_small_ambient():
    F = tower_for(2).mid
    s = AmbientShape((2, 1), (2, 1))
    ref = oracles.prime_field(2)
    classified = set(enumerate_optimal_anticodes(F, s))
    count = 0
    for B in subspaces(F, s.dim):
        C = canonicalize(F, s, B) if B.shape[0] else LinearCode.zero(F, s)
        words = [tuple(v) for v in C.codewords().tolist()]
        bound = max(sum(m * r for m, r in zip(s.m_list, oracles.block_ranks(ref, w, s.m_list, s.n_list))) for w in words)
        assert anticode_bound_value(C) == bound >= C.dim
        assert is_optimal_anticode(C) == (C in classified)
        count += 1
    assert count == 374
    # 2x2 block: zero, 3 row-line and 3 column-line spaces, everything; 1x1 block: 2 choices
    assert len(classified) == 8 * 2


def test_hamming_tail_caveat():
    F = tower_for(2).mid
    # in F_2^3 the even-weight code is an optimal anticode but not a product
    even = np.array([[1, 1, 0], [0, 1, 1]])
    hams = {B.tobytes() for B in hamming_optimal_anticodes(F, 3)}
    from sumrank import linalg

    assert linalg.rref(F, even)[0].astype(np.int64).tobytes() in hams
    s = AmbientShape((1, 1, 1), (1, 1, 1))
    classified = enumerate_optimal_anticodes(F, s)
    assert canonicalize(F, s, even) in classified
    # over GF(3) the even-weight analogue is not optimal
    F3 = tower_for(3).mid
    assert not is_optimal_anticode(canonicalize(F3, s, [[1, 2, 0], [0, 1, 2]]))


def test_old_anticode_bound():
    s = AmbientShape((3, 2, 1), (1, 2, 1))
    assert [old_anticode_bound(s, r) for r in range(s.n + 1)] == [0, 3, 5, 7, 8]


def test_optimal_anticode_weights_closed_form():
    assert oac_generalized_weights([1, 2], [3, 2]) == [1, 1, 1, 2, 2, 3, 3]
    F = tower_for(2).mid
    s = AmbientShape((3, 2), (1, 2))
    A = canonicalize(F, s, np.eye(s.dim, dtype=np.int64)[[0, 1, 2, 3, 5]])
    assert is_optimal_anticode(A)
    assert generalized_weights(A) == oac_generalized_weights([1, 1], [3, 2])


def test_row_support_weights_bound_weights(rng):
    F = tower_for(2).mid
    s = AmbientShape((2, 2), (2, 1))
    for _ in range(10):
        C = random_code_exact(F, s, 3, rng)
        a, b = generalized_weights(C), generalized_row_support_weights(C)
        assert all(x <= y for x, y in zip(a, b))
