from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sumrank.anticode import generalized_weights
from sumrank.bounds import (
    is_msrd,
    is_r_msrd,
    is_trivial,
    msrd_duality_report,
    msrd_ell_bound,
    msrd_equivalent_conditions,
    msrd_weight_formula,
    profile_from_dim,
    profile_from_distance,
    r_table,
    singleton_bound,
)
from sumrank.catalog import SIX_BLOCK_SHAPE, duality_pair, six_block_code
from sumrank.code import LinearCode, canonicalize, dual_code, minimum_distance, random_code_exact
from sumrank.construct import lrs_code
from sumrank.gf import tower_for
from sumrank.matspace import AmbientShape

SHAPES = [((2, 1), (2, 1)), ((3, 2, 1), (1, 2, 1)), ((2, 2), (2, 1)), ((3, 3), (2, 1)), ((2, 2, 2), (1, 1, 1))]


def lrs_example():
    return lrs_code(3, 2, (2, 2), 2).to_linear_code()


def extended_rs(q: int) -> LinearCode:
    """The doubly-extended Reed-Solomon [q+1, q-1, 3] code as 1x1 blocks."""
    F = tower_for(q).mid
    k = q - 1
    rows = []
    for i in range(k):
        row = [F.pow(x, i) if x else int(i == 0) for x in range(q)]
        rows.append(row + [int(i == k - 1)])
    return canonicalize(F, AmbientShape((1,) * (q + 1), (1,) * (q + 1)), np.array(rows, dtype=np.int64))


def test_r_table_is_cumulative_row_count():
    s = SIX_BLOCK_SHAPE
    cumulative = list(itertools.accumulate([0] + [m for m, n in zip(s.m_list, s.n_list) for _ in range(n)]))
    assert r_table(s) == cumulative == [0, 3, 6, 9, 11, 13, 15, 16, 17]


def test_profiles():
    s = AmbientShape((2, 2), (2, 2))
    p = profile_from_distance(s, 3)
    assert (p.j, p.delta) == (2, 0) and p.dim_target(s) == 4
    assert profile_from_dim(s, 5) is None


def test_lrs_example_is_msrd():
    C = lrs_example()
    ok, prof = is_msrd(C)
    assert ok and (prof.j, prof.delta) == (2, 0)
    rep = msrd_equivalent_conditions(C)
    assert rep.definition and rep.anticode_sum and rep.anticode_meet and rep.columns
    assert msrd_weight_formula(C) == generalized_weights(C) == [3, 3, 4, 4]
    dr = msrd_duality_report(C)
    assert dr.ok and dr.dual_msrd and dr.d + dr.d_dual == dr.n + 2


def test_mds_codes_have_classical_weights():
    C = extended_rs(3)
    assert is_msrd(C)[0]
    assert generalized_weights(C) == msrd_weight_formula(C) == [3, 4]


@given(st.sampled_from([2, 3]), st.sampled_from(SHAPES), st.integers(0, 2**32 - 1))
def test_msrd_characterizations_agree(q, mn, seed):
    F = tower_for(q).mid
    s = AmbientShape(*mn)
    rng = np.random.default_rng(seed)
    C = random_code_exact(F, s, int(rng.integers(1, s.dim)), rng)
    rep = msrd_equivalent_conditions(C)
    assert rep.agree
    assert rep.definition == is_msrd(C)[0]


@given(st.sampled_from([2, 3]), st.sampled_from(SHAPES), st.integers(0, 2**32 - 1))
def test_singleton_bounds_on_every_weight(q, mn, seed):
    F = tower_for(q).mid
    s = AmbientShape(*mn)
    rng = np.random.default_rng(seed)
    C = random_code_exact(F, s, int(rng.integers(1, min(s.dim, 6) + 1)), rng)
    w = generalized_weights(C)
    for r in range(1, C.dim + 1):
        assert C.dim <= singleton_bound(C, r, w)


def test_weight_upper_bounds_from_dimension(rng):
    F = tower_for(2).mid
    for mn in SHAPES:
        s = AmbientShape(*mn)
        for _ in range(10):
            C = random_code_exact(F, s, int(rng.integers(1, s.dim + 1)), rng)
            w = generalized_weights(C)
            for j in range(1, s.ell + 1):
                for delta in range(s.n_list[j - 1]):
                    tail = sum(m * n for m, n in zip(s.m_list[j - 1 :], s.n_list[j - 1 :]))
                    for r in range(1, C.dim + 1):
                        if C.dim >= tail - s.m_list[j - 1] * delta + r:
                            assert w[r - 1] <= sum(s.n_list[: j - 1]) + delta


def test_r_msrd_propagates():
    codes = [lrs_example(), extended_rs(4)]
    F = tower_for(2).mid
    rng = np.random.default_rng(5)
    s = AmbientShape((2, 2), (2, 1))
    for _ in range(30):
        dim = int(rng.integers(1, s.dim))
        if profile_from_dim(s, dim) is not None:
            codes.append(random_code_exact(F, s, dim, rng))
    seen = 0
    for C in codes:
        w = generalized_weights(C)
        p = profile_from_dim(C.shape, C.dim)
        for h in range(p.d_target(C.shape), C.shape.n):
            try:
                here = is_r_msrd(C, h, w)
                nxt = is_r_msrd(C, h + 1, w)
            except ValueError:
                continue
            if here:
                seen += 1
                assert nxt
    assert seen > 0


def test_trivial_codes():
    F = tower_for(2).mid
    s = AmbientShape((2,), (2,))
    assert is_trivial(LinearCode.ambient(F, s)) and is_trivial(LinearCode.zero(F, s))
    with pytest.raises(ValueError):
        msrd_duality_report(LinearCode.ambient(F, s))


def test_duality_report_on_non_msrd_codes():
    for C in (*duality_pair(), six_block_code()):
        rep = msrd_duality_report(C)
        assert rep.ok and not rep.code_msrd
    assert not msrd_equivalent_conditions(dual_code(six_block_code())).definition


# ------------------------------------------------------------- ell bound


@pytest.mark.parametrize("q", [2, 3, 4, 5])
@pytest.mark.parametrize("d", range(3, 9))
def test_hamming_case_gives_q_plus_d_minus_2(q, d):
    b = msrd_ell_bound(1, 1, q, d)
    assert b.cases["general"] == q + d - 2
    assert b.bound <= q + d - 2


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_square_small_distance_gives_q(q):
    for nu in (1, 2):
        for d in range(3, nu + 3):
            b = msrd_ell_bound(nu, nu, q, d)
            assert b.bound <= q
            assert b.cases["small_distance_square"] <= q + 1


def test_distance_three_example():
    b = msrd_ell_bound(1, 2, 2, 3)
    assert b.bound == 3 and b.cases["distance_three"] == 3
    assert b.mds_comparison == 5


def test_square_two_binary_distance_three():
    b = msrd_ell_bound(2, 2, 2, 3)
    assert b.cases["small_distance_square"] == 2 and b.bound == 1


@pytest.mark.parametrize("q", [3, 4])
def test_extended_rs_code_exceeds_the_d3_and_square_specializations(q):
    # an MDS code of length q+1 and distance 3 is an MSRD code with nu = m = 1 and ell = q+1;
    # the general bound admits it, the d=3 and nu=m<=2 specializations do not
    C = extended_rs(q)
    assert C.dim == q - 1 and minimum_distance(C) == 3 and is_msrd(C)[0]
    b = msrd_ell_bound(1, 1, q, 3)
    assert b.cases["general"] == q + 1 == C.shape.ell
    assert b.cases["distance_three"] == q - 1 < C.shape.ell
    assert b.bound < C.shape.ell


def test_ell_bound_rejects_bad_input():
    with pytest.raises(ValueError):
        msrd_ell_bound(1, 1, 2, 2)
    with pytest.raises(ValueError):
        msrd_ell_bound(3, 2, 2, 3)
