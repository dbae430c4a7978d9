from __future__ import annotations

import numpy as np
import pytest

from sumrank.bounds import is_msrd
from sumrank.code import minimum_distance
from sumrank.construct import (
    GeneralMsrdParams,
    LrsParams,
    TwistParams,
    admissible_etas,
    default_a_list,
    eta_admissible,
    field_size_footprint,
    general_msrd_generator,
    lrs_admissible_partitions,
    lrs_code,
    lrs_evaluations,
    lrs_generator,
    lrs_moore_matrix,
    normalize_code,
    puncture_msrd,
    puncturing_choices,
    shorten_msrd,
    shortening_choices,
    twisted_lrs_code,
)
from sumrank.fqm import image_vectors
from sumrank.gf import tower_for
from sumrank.matspace import AmbientShape


def example():
    return lrs_generator(LrsParams(tower_for(3, 2), (2, 2), 2, a_list=(1, 4), betas=(1, 3)))


def test_lrs_example():
    C = example()
    L = C.to_linear_code()
    assert L.dim == 4 and L.size == 81
    assert minimum_distance(L) == 3
    assert default_a_list(tower_for(3, 2), 2) == (1, 4)
    assert lrs_code(3, 2, (2, 2), 2) == C


def test_norms_of_default_parameters_are_distinct():
    for q, m, ell in [(3, 2, 2), (4, 2, 3), (5, 3, 4), (7, 1, 6)]:
        T = tower_for(q, m)
        a = default_a_list(T, ell)
        assert len({T.norm(x) for x in a}) == ell
    with pytest.raises(ValueError):
        default_a_list(tower_for(3, 2), 3)


def test_encoding_is_skew_evaluation(rng):
    p = LrsParams(tower_for(4, 2), (2, 1, 2), 2)
    C = lrs_generator(p)
    M = lrs_moore_matrix(p)
    for _ in range(10):
        f = [int(x) for x in rng.integers(0, 16, 2)]
        word = lrs_evaluations(p, f)
        top = p.tower.top
        direct = np.array([top.sum(top.mul(np.array(f), M[:, j])) for j in range(M.shape[1])])
        assert np.array_equal(word, direct)
        assert C.to_linear_code().contains(image_vectors(p.tower, p.partition, word))


def test_classical_specializations():
    # m = 1: generalized Reed-Solomon, MDS
    L = lrs_code(5, 1, (1, 1, 1, 1), 2).to_linear_code()
    assert minimum_distance(L) == 3
    # ell = 1: Gabidulin, MRD
    L = lrs_code(2, 3, (3,), 2).to_linear_code()
    assert minimum_distance(L) == 2 and is_msrd(L)[0]


def test_parameter_validation():
    T = tower_for(3, 2)
    with pytest.raises(ValueError):
        LrsParams(T, (3,), 1)
    with pytest.raises(ValueError):
        LrsParams(T, (2, 2), 5)
    with pytest.raises(ValueError):
        LrsParams(T, (2, 2), 2, a_list=(1, 1))
    with pytest.raises(ValueError):
        LrsParams(T, (2,), 1, betas=(1, 2))


def test_twisted_codes():
    T = tower_for(3, 2)
    assert admissible_etas(T, (1,), 1, 2) == [4, 5, 7, 8]
    assert eta_admissible(T, (1,), 1, 2, 0)
    assert not eta_admissible(T, (1,), 1, 2, 1)
    p = LrsParams(T, (2,), 1, a_list=(1,))
    L = twisted_lrs_code(TwistParams(p, 4, 0))
    assert L.dim == 2 and minimum_distance(L) == 2 and is_msrd(L)[0]
    assert twisted_lrs_code(TwistParams(p, 0, 0)) == lrs_generator(p).to_linear_code()
    for m in (2, 3):
        for k in range(1, m):
            assert admissible_etas(tower_for(2, m), (1,), k, m) == []
    with pytest.raises(ValueError):
        TwistParams(p, 1, 0)
    with pytest.raises(ValueError):
        TwistParams(LrsParams(T, (1,), 1, a_list=(1,)), 4, 0)


def test_general_family():
    T = tower_for(2, 2)
    C, rep = general_msrd_generator(GeneralMsrdParams(T, (1,), 2, 1, (1, 2), 1))
    assert rep.ok and C.G.tolist() == [[1, 2]]
    assert minimum_distance(C.to_linear_code()) == 2
    # mu = 1 gives the linearized Reed-Solomon code
    T9 = tower_for(3, 2)
    G1, rep1 = general_msrd_generator(GeneralMsrdParams(T9, (1, 4), 1, 2, (1, 3), 2))
    assert rep1.ok and G1 == example()


def test_general_family_condition_failure():
    T = tower_for(3, 2)
    C, rep = general_msrd_generator(GeneralMsrdParams(T, (1,), 1, 2, (1, 1), 1))
    assert not rep.condition1 and rep.dims == [1]
    L = C.to_linear_code()
    assert not is_msrd(L)[0]
    # H_1 = H_2 breaks the independence condition; f = 1 + x then vanishes on both copies
    C2, rep2 = general_msrd_generator(GeneralMsrdParams(tower_for(2, 2), (1,), 3, 1, (1, 1, 2), 2))
    assert rep2.condition1 and not rep2.condition2 and rep2.failure == (0, (1,))
    assert minimum_distance(C2.to_linear_code()) == 1


def test_shortening_example():
    L = example().to_linear_code()
    S = shorten_msrd(L, "col", 2, d=3)
    assert S.shape == AmbientShape((2, 2), (2, 1)) and S.dim == 2
    assert minimum_distance(S) == 3 and is_msrd(S)[0]


def test_puncturing_example():
    L = example().to_linear_code()
    P = puncture_msrd(L, 1, d=3)
    assert P.dim == 4 and minimum_distance(P) == 2 and is_msrd(P)[0]
    with pytest.raises(ValueError):
        puncture_msrd(L, 2, d=3)
    # with equal m every block index is allowed on request
    P2 = puncture_msrd(L, 2, d=3, any_index=True)
    assert minimum_distance(P2) == 2


def test_shortening_guards():
    L = example().to_linear_code()
    with pytest.raises(ValueError):
        shorten_msrd(L, "col", 1, d=3)
    with pytest.raises(ValueError):
        shorten_msrd(L, "row", 2, d=3)
    with pytest.raises(ValueError):
        shorten_msrd(L, "diag", 2, d=3)
    with pytest.raises(ValueError):
        shorten_msrd(L, "col", 2, d=2)


def test_repeated_shortening_keeps_msrd():
    L = lrs_code(4, 3, (3, 3), 2).to_linear_code()
    d = 5
    steps = 0
    while True:
        ok, prof = is_msrd(L, d)
        assert ok
        cols = [c for c in shortening_choices(L, prof) if c[0] == "col"]
        if not cols:
            break
        nxt = shorten_msrd(L, *cols[-1], d=d)
        if nxt.dim == 0:
            break
        L = nxt
        assert minimum_distance(L) == d
        steps += 1
    assert steps >= 1


def test_puncture_then_shorten_matches_shorten_then_puncture():
    L = lrs_code(4, 2, (2, 2, 2), 3).to_linear_code()
    d = 4

    def params(C):
        return sorted(zip(C.shape.m_list, C.shape.n_list)), C.dim, minimum_distance(C)

    P = puncture_msrd(L, puncturing_choices(L, is_msrd(L, d)[1])[0], d=d)
    PS = shorten_msrd(P, "col", P.shape.ell, d=d - 1)
    S = shorten_msrd(L, "col", L.shape.ell, d=d)
    SP = puncture_msrd(S, puncturing_choices(S, is_msrd(S, d)[1])[0], d=d)
    assert params(PS) == params(SP)


def test_normalize_sorts_and_transposes():
    from sumrank.code import canonicalize

    F = tower_for(2).mid
    s = AmbientShape((1, 3), (2, 2), strict=False)
    C = canonicalize(F, s, np.eye(s.dim, dtype=np.int64)[:3])
    N = normalize_code(C)
    assert N.shape.m_list == (3, 2) and N.shape.n_list == (2, 1)
    assert N.dim == 3
    # the 1x2 block becomes the 2x1 block and keeps its entries
    assert N.basis[:, 6:].tolist() == [[0, 0], [1, 0], [0, 1]]
    assert N.basis[0, :6].tolist() == [1, 0, 0, 0, 0, 0]


def test_footprint_and_partitions():
    assert field_size_footprint(3, 2, (2, 2)) == (9, 9, True)
    assert field_size_footprint(5, 3, (3, 2)) == (125, 27, False)
    parts = lrs_admissible_partitions(3, 2, 4)
    assert parts == [(1,), (1, 1), (2,), (2, 1), (2, 2)]
    for q in (3, 4, 5):
        for m in (1, 2, 3):
            for part in lrs_admissible_partitions(q, m, 6):
                lhs, rhs, _ = field_size_footprint(q, m, part)
                assert lhs >= rhs
