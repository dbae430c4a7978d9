from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from sumrank.catalog import PAIR_SHAPE, duality_pair
from sumrank.code import dual_code, random_code_exact
from sumrank.distr import (
    binomial_moments_check,
    binomial_moments_sides,
    distributions,
    gaussian_binomial,
    macwilliams_rank_list,
    macwilliams_support,
    no_macwilliams_witness,
    rank_list_to_sum_rank,
    support_to_rank_list,
)
from sumrank.gf import tower_for
from sumrank.matspace import AmbientShape

SHAPES = [((2, 1), (2, 1)), ((3, 2, 1), (1, 2, 1)), ((2, 2), (2, 1)), ((3, 3), (2, 1)), ((2, 2, 2), (1, 1, 1))]


@pytest.mark.parametrize("a,b,q,val", [(4, 2, 2, 35), (3, 1, 3, 13), (5, 0, 4, 1), (2, 3, 2, 0), (6, 3, 2, 1395)])
def test_gaussian_binomial(a, b, q, val):
    assert gaussian_binomial(a, b, q) == val == oracles.q_binomial(a, b, q)


@given(st.sampled_from([2, 3]), st.sampled_from(SHAPES), st.integers(0, 2**32 - 1))
def test_distributions_match_oracle(q, mn, seed):
    F = tower_for(q).mid
    ref = oracles.prime_field(q)
    s = AmbientShape(*mn)
    rng = np.random.default_rng(seed)
    C = random_code_exact(F, s, int(rng.integers(0, min(s.dim, 6 if q == 2 else 4) + 1)), rng)
    words = [tuple(v) for v in C.codewords().tolist()]
    dist = distributions(C)
    assert dist.rank_list == oracles.rank_list(ref, words, s.m_list, s.n_list)
    assert support_to_rank_list(dist.support) == dist.rank_list
    assert rank_list_to_sum_rank(dist.rank_list, s.n) == dist.sum_rank
    assert sum(dist.sum_rank) == q**C.dim


@given(st.sampled_from([2, 3]), st.sampled_from(SHAPES), st.integers(0, 2**32 - 1))
def test_macwilliams_transforms_predict_dual(q, mn, seed):
    F = tower_for(q).mid
    s = AmbientShape(*mn)
    rng = np.random.default_rng(seed)
    lo, hi = max(0, s.dim - 8), min(s.dim, 8)
    C = random_code_exact(F, s, int(rng.integers(lo, hi + 1)), rng)
    D = dual_code(C)
    dC, dD = distributions(C), distributions(D)
    assert macwilliams_rank_list(dC.rank_list, s, C.dim, q) == dD.rank_list
    assert macwilliams_support(dC.support, s, C.dim, F) == dD.support
    assert binomial_moments_check(C, W=dC.rank_list, W_dual=dD.rank_list)


def test_binomial_moments_detect_a_wrong_distribution():
    C1, C2 = duality_pair()
    W = distributions(C1).rank_list
    W_wrong = distributions(dual_code(C2)).rank_list
    sides = [binomial_moments_sides(PAIR_SHAPE, 2, 1, W, W_wrong, (a, b)) for a in range(3) for b in range(2)]
    assert any(lhs != rhs for lhs, rhs in sides)


def test_rank_list_transform_rejects_bad_totals():
    with pytest.raises(ValueError):
        macwilliams_rank_list({(0, 0): 1, (1, 0): 2}, PAIR_SHAPE, 1, 2)


def test_no_macwilliams_witness():
    w = no_macwilliams_witness()
    assert w.sum_rank[0] == w.sum_rank[1] == [1, 1, 0, 0]
    assert w.dual_sum_rank[0][1] == 9 and w.dual_sum_rank[1][1] == 6
