from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sumrank.anticode import generalized_weights
from sumrank.code import dual_code, minimum_distance
from sumrank.construct import lrs_code
from sumrank.fqm import (
    FqmCode,
    FqmIsometry,
    default_split,
    dprime_generalized_weights,
    fqm_dual,
    fqm_isometry_apply,
    fqm_minimum_distance,
    fqm_wei_duality_check,
    general_linear,
    gl_count,
    image_duality,
    matrix_repr,
    msrd_minor_test,
    msrd_minor_witness,
    projective_minimum_distance,
    random_fqm_code,
    random_fqm_isometry,
    systematic_form,
    systematic_msrd_test,
    trace_dual_basis,
)
from sumrank.gf import tower_for
from sumrank.matspace import batch_srk

CASES = [((2, 2), (2, 1)), ((3, 2), (2, 1)), ((2, 3), (2, 1)), ((2, 2), (1, 1, 1)), ((4, 2), (1, 1))]


def _random(case, seed):
    (q, m), part = case
    T = tower_for(q, m)
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, sum(part)))
    return random_fqm_code(T, part, k, rng)


def test_matrix_representation_columns_hold_coordinates():
    T = tower_for(3, 2)
    c = np.array([1, 3, 4])
    X = matrix_repr(T, (2, 1), c)
    assert X.blocks[0].tolist() == [[1, 0], [0, 1]]
    assert X.blocks[1].tolist() == [[1], [1]]
    assert np.array_equal(matrix_repr(T, (2, 1), X, "from_blocks"), c)


@pytest.mark.parametrize("qm", [(2, 2), (2, 3), (3, 2), (4, 2), (5, 3)])
def test_trace_dual_basis(qm):
    T = tower_for(*qm)
    star = trace_dual_basis(T)
    for i, a in enumerate(T.alpha):
        for j, b in enumerate(star):
            assert T.trace(T.top.mul(a, b)) == int(i == j)


@given(st.sampled_from(CASES), st.integers(0, 2**32 - 1))
def test_dual_image_uses_the_trace_dual_basis(case, seed):
    C = _random(case, seed)
    assert fqm_dual(fqm_dual(C)) == C
    dual_basis_ok, _ = image_duality(C)
    assert dual_basis_ok


def test_same_basis_duality_fails_in_general():
    mismatches = sum(not image_duality(_random(((3, 2), (2, 1)), s))[1] for s in range(10))
    assert mismatches > 0
    assert image_duality(lrs_code(3, 2, (2, 2), 2)) == (True, False)


@given(st.sampled_from(CASES), st.integers(0, 2**32 - 1))
def test_distance_three_ways(case, seed):
    C = _random(case, seed)
    L = C.to_linear_code()
    assert L.dim == C.k * C.tower.m
    d = minimum_distance(L)
    assert projective_minimum_distance(C) == d == fqm_minimum_distance(C)


@given(st.sampled_from(CASES), st.integers(0, 2**32 - 1))
def test_fqm_wei_duality(case, seed):
    C = _random(case, seed)
    w = dprime_generalized_weights(C)
    assert len(w) == C.k and w == sorted(set(w))
    assert fqm_wei_duality_check(C, weights=w)


@given(st.sampled_from(CASES), st.integers(0, 2**32 - 1))
def test_isometries_preserve_weights(case, seed):
    C = _random(case, seed)
    rng = np.random.default_rng(seed ^ 0xABC)
    phi = random_fqm_isometry(C.tower, C.partition, rng)
    D = fqm_isometry_apply(phi, C)
    assert dprime_generalized_weights(D) == dprime_generalized_weights(C)
    words_c = batch_srk(C.tower.mid, C.shape, C.to_linear_code().codewords())
    words_d = batch_srk(D.tower.mid, D.shape, D.to_linear_code().codewords())
    assert sorted(words_c.tolist()) == sorted(words_d.tolist())


def test_isometry_validation():
    T = tower_for(2, 2)
    bad = FqmIsometry((0, 1), (1, 0), (np.eye(2, dtype=np.int64), np.eye(1, dtype=np.int64)))
    with pytest.raises(ValueError):
        bad.validate(T, (2, 1))
    assert fqm_isometry_apply(FqmIsometry.identity((2, 1)), lrs_code(3, 2, (2, 1), 1)) == lrs_code(3, 2, (2, 1), 1)


def test_lrs_example_characterizations():
    C = lrs_code(3, 2, (2, 2), 2)
    L = C.to_linear_code()
    assert dprime_generalized_weights(C) == [3, 4]
    assert generalized_weights(L) == [3, 3, 4, 4]
    assert fqm_minimum_distance(fqm_dual(C)) == 3
    assert minimum_distance(dual_code(L)) == 3
    assert msrd_minor_test(C) and msrd_minor_test(C, use="parity")
    split = default_split(C)
    assert systematic_msrd_test(C, split)


def test_minor_and_systematic_tests_reject_non_msrd():
    T = tower_for(2, 2)
    C = FqmCode(T, (1, 1, 1), [[1, 1, 0], [0, 0, 1]])
    assert minimum_distance(C.to_linear_code()) == 1
    w = msrd_minor_witness(C)
    assert w is not None
    assert not msrd_minor_test(C)
    assert not systematic_msrd_test(C, default_split(C))


def test_one_by_y_is_msrd():
    T = tower_for(2, 2)
    C = FqmCode(T, (1, 1), [[1, 2]])
    assert dprime_generalized_weights(C) == [2]
    assert msrd_minor_test(C) and systematic_msrd_test(C, default_split(C))


@given(st.sampled_from([((2, 2), (2, 1)), ((3, 2), (1, 1)), ((2, 2), (1, 1, 1))]), st.integers(0, 2**32 - 1))
def test_minor_test_matches_distance(case, seed):
    C = _random(case, seed)
    is_msrd = minimum_distance(C.to_linear_code()) == C.n - C.k + 1
    assert msrd_minor_test(C) == is_msrd
    try:
        split = default_split(C)
    except ValueError:
        assert not is_msrd
        return
    assert systematic_msrd_test(C, split) == is_msrd


def test_general_linear_group_sizes():
    T = tower_for(2, 2)
    assert gl_count(2, 2) == 6 == len(general_linear(T, 2))
    assert gl_count(3, 2) == 168


def test_systematic_form_requires_independent_columns():
    T = tower_for(2, 2)
    C = FqmCode(T, (2, 1), [[1, 1, 0], [0, 0, 1]])
    with pytest.raises(ValueError):
        systematic_form(C, (2, 0))


def test_partition_validation():
    T = tower_for(2, 2)
    with pytest.raises(ValueError):
        FqmCode(T, (2, 0), [[1, 1]])
    with pytest.raises(ValueError):
        FqmCode(T, (2, 2), [[1, 1, 1]])
