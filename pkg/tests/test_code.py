from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from sumrank import config
from sumrank.catalog import SIX_BLOCK_SHAPE, six_block_code, six_block_far_word
from sumrank.code import (
    LinearCode,
    SumRankIsometry,
    apply_isometry,
    canonicalize,
    code_weight,
    covering_radius,
    distance_invariants,
    distance_to_code,
    dual_code,
    exhaustive_decode,
    projective_ranges,
    random_code_exact,
)
from sumrank.distr import distributions
from sumrank.gf import tower_for
from sumrank.matspace import AmbientShape

SMALL = [((2, 1), (2, 1)), ((3, 2, 1), (1, 2, 1)), ((2, 2), (1, 2)), ((1, 1, 1), (1, 1, 1))]


def _words(C: LinearCode) -> set[tuple[int, ...]]:
    return {tuple(v) for v in C.codewords().tolist()}


def _ref(q):
    F = tower_for(q).mid
    return F, oracles.SmallField(F.p, tuple(F.describe().get("modulus", (0, 1))))


@given(st.sampled_from([2, 3, 4]), st.sampled_from(SMALL), st.integers(0, 2**32 - 1))
def test_distance_and_maxsrk_match_oracle(q, mn, seed):
    F, ref = _ref(q)
    s = AmbientShape(*mn)
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, min(s.dim, 3 if q < 4 else 2) + 1))
    C = random_code_exact(F, s, k, rng)
    words = oracles.span(ref, C.basis.tolist(), s.dim)
    assert _words(C) == words
    assert distance_invariants(C) == (
        oracles.min_distance(ref, words, s.m_list, s.n_list),
        oracles.max_srk(ref, words, s.m_list, s.n_list),
    )


@given(st.sampled_from([2, 3]), st.sampled_from(SMALL), st.integers(0, 2**32 - 1))
def test_dual_matches_oracle(q, mn, seed):
    F, ref = _ref(q)
    s = AmbientShape(*mn)
    rng = np.random.default_rng(seed)
    C = random_code_exact(F, s, int(rng.integers(0, s.dim + 1)), rng)
    D = dual_code(C)
    assert D.dim == s.dim - C.dim
    assert _words(D) == oracles.dual(ref, C.basis.tolist(), s.dim)
    assert dual_code(D) == C


@pytest.mark.parametrize("seed", range(4))
def test_covering_radius_matches_oracle(seed):
    F, ref = _ref(2)
    s = AmbientShape((2, 1), (2, 1))
    C = random_code_exact(F, s, 1 + seed % 3, np.random.default_rng(seed))
    words = _words(C)
    assert covering_radius(C) == oracles.covering_radius(ref, words, s.m_list, s.n_list)


def test_six_block_invariants():
    C = six_block_code()
    assert C.shape == SIX_BLOCK_SHAPE and C.dim == 4
    assert distance_invariants(C) == (2, 7)
    assert covering_radius(C) == 6
    assert distance_to_code(C, six_block_far_word().to_vector()) == 6


@pytest.mark.parametrize("q,k", [(2, 5), (3, 4), (4, 3), (5, 2), (2, 17)])
def test_projective_ranges_cover_one_representative_per_line(q, k):
    idx = np.concatenate([np.arange(lo, hi) for lo, hi in projective_ranges(q, k, chunk=7)])
    assert len(idx) == (q**k - 1) // (q - 1)
    # top nonzero base-q digit of every index equals 1
    for x in idx[:: max(1, len(idx) // 500)]:
        while x >= q:
            x //= q
        assert x == 1


@given(st.sampled_from(SMALL), st.integers(0, 2**32 - 1))
def test_isometries_preserve_rank_lists_up_to_permutation(mn, seed):
    F = tower_for(3).mid
    s = AmbientShape(*mn)
    rng = np.random.default_rng(seed)
    C = random_code_exact(F, s, int(rng.integers(1, 4)), rng)
    phi = SumRankIsometry.random(F, s, rng)
    D = apply_isometry(phi, C)
    assert D.dim == C.dim
    assert distributions(D).sum_rank == distributions(C).sum_rank
    assert code_weight(D) == code_weight(C)
    permuted = {tuple(k[j] for j in phi.sigma): v for k, v in distributions(C).rank_list.items()}
    assert distributions(D).rank_list == permuted


def test_isometry_validation():
    F = tower_for(2).mid
    s = AmbientShape((2, 1), (2, 1))
    I2, I1 = np.eye(2, dtype=np.int64), np.eye(1, dtype=np.int64)
    with pytest.raises(ValueError):
        SumRankIsometry((1, 0), (I2, I1), (I2, I1), (False, False)).validate(F, s)
    with pytest.raises(ValueError):
        SumRankIsometry((0, 1), (np.zeros((2, 2), np.int64), I1), (I2, I1), (False, False)).validate(F, s)


def test_exhaustive_decode_finds_nearest():
    C = six_block_code()
    rng = np.random.default_rng(3)
    c = C.codewords()[5]
    e = np.zeros(C.shape.dim, dtype=np.int64)
    e[0] = 1
    d, near = exhaustive_decode(C, (c + e) % 2)
    assert d == 1 and any(np.array_equal(x.to_vector(), c) for x in near)
    del rng


def test_canonical_form_is_basis_independent(rng):
    F = tower_for(3).mid
    s = AmbientShape((2, 2), (2, 1))
    C = random_code_exact(F, s, 3, rng)
    M = np.array([[1, 2, 0], [0, 1, 1], [2, 0, 1]])
    mixed = (M @ C.basis) % 3
    assert canonicalize(F, s, mixed) == C
    assert hash(canonicalize(F, s, mixed)) == hash(C)


def test_ceiling_is_enforced():
    F = tower_for(2).mid
    s = AmbientShape((3, 3, 3), (3, 3, 3))
    C = random_code_exact(F, s, 20, np.random.default_rng(1))
    old = config.set_limits(sweep=1000)
    try:
        with pytest.raises(config.CeilingExceeded) as err:
            distance_invariants(C)
        assert "--ceiling" in str(err.value)
    finally:
        config.set_limits(**old.__dict__)


def test_zero_code():
    F = tower_for(2).mid
    s = AmbientShape((2,), (2,))
    Z = LinearCode.zero(F, s)
    assert Z.dim == 0 and dual_code(Z).dim == 4
    assert list(itertools.islice(_words(Z), 2)) == [(0, 0, 0, 0)]
