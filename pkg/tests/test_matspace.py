from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from sumrank import linalg
from sumrank.gf import tower_for
from sumrank.matspace import (
    AmbientShape,
    Codeword,
    batch_srk,
    embed_block_diag,
    gaussian_count,
    sr_distance,
    srk,
    subspaces,
    support_of,
    trace_form,
)

SHAPES = [((3, 2, 1), (1, 2, 1)), ((2, 1), (2, 1)), ((3, 3), (2, 3)), ((2, 2, 2), (1, 2, 2))]


def _ref(q):
    F = tower_for(q).mid
    return F, oracles.SmallField(F.p, tuple(F.describe().get("modulus", (0, 1))))


@given(st.sampled_from([2, 3, 4]), st.sampled_from(SHAPES), st.integers(0, 2**32 - 1))
def test_srk_matches_oracle(q, mn, seed):
    F, ref = _ref(q)
    s = AmbientShape(*mn)
    vecs = np.random.default_rng(seed).integers(0, q, size=(8, s.dim))
    got = batch_srk(F, s, vecs)
    assert got.tolist() == [oracles.srk(ref, v.tolist(), s.m_list, s.n_list) for v in vecs]


@given(st.sampled_from(SHAPES), st.integers(0, 2**32 - 1))
def test_metric_axioms(mn, seed):
    F = tower_for(3).mid
    s = AmbientShape(*mn)
    rng = np.random.default_rng(seed)
    X, Y, Z = (Codeword.from_vector(s, rng.integers(0, 3, s.dim)) for _ in range(3))
    assert sr_distance(F, X, X) == 0
    assert sr_distance(F, X, Y) == sr_distance(F, Y, X)
    assert sr_distance(F, X, Z) <= sr_distance(F, X, Y) + sr_distance(F, Y, Z)


def test_block_diagonal_embedding_preserves_weight(rng):
    F = tower_for(2).mid
    s = AmbientShape((3, 2, 1), (1, 2, 1))
    for _ in range(20):
        X = Codeword.from_vector(s, rng.integers(0, 2, s.dim))
        E = embed_block_diag(X)
        assert E.shape == (s.m_bar, s.n)
        assert linalg.rank(F, E) == srk(F, X)


def test_trace_form_is_flattened_dot_product(rng):
    F = tower_for(5).mid
    s = AmbientShape((3, 2), (2, 2))
    for _ in range(20):
        u, v = rng.integers(0, 5, size=(2, s.dim))
        X, Y = Codeword.from_vector(s, u), Codeword.from_vector(s, v)
        assert trace_form(F, X, Y) == int(np.dot(u, v) % 5) == trace_form(F, Y, X)


@pytest.mark.parametrize("q,n", [(2, 4), (3, 3), (4, 2), (2, 5)])
def test_subspace_enumeration_counts(q, n):
    F = tower_for(q).mid
    for d in range(n + 1):
        got = list(subspaces(F, n, d))
        assert len(got) == gaussian_count(n, d, q) == oracles.q_binomial(n, d, q)
        assert len({B.tobytes() for B in got}) == len(got)


def test_shape_validation():
    with pytest.raises(ValueError):
        AmbientShape((1, 2), (1, 1))
    with pytest.raises(ValueError):
        AmbientShape((2,), (3,))
    s, perm = AmbientShape.normalized((1, 3, 2), (1, 2, 2))
    assert s.m_list == (3, 2, 1) and perm == (1, 2, 0)
    assert AmbientShape((2, 1), (2, 1)).dim == 5


def test_support_of_codeword():
    F = tower_for(2).mid
    s = AmbientShape((2, 1), (2, 1))
    X = Codeword.from_blocks(s, [[[1, 1], [1, 1]], [[0]]])
    L = support_of(F, X)
    assert L.dims == (1, 0)
    assert L.basis(0).tolist() == [[1, 1]]
