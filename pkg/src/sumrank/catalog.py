"""Small hand-written codes used as reference points in tests and the CLI."""

from __future__ import annotations

import numpy as np

from sumrank.code import LinearCode, canonicalize
from sumrank.gf import Field
from sumrank.matspace import AmbientShape, Codeword


def _vec(blocks) -> np.ndarray:
    return np.concatenate([np.asarray(b, dtype=np.int64).ravel() for b in blocks])


SIX_BLOCK_SHAPE = AmbientShape((3, 3, 2, 2, 1, 1), (2, 1, 2, 1, 1, 1))


def six_block_word(a1: int, a2: int, a3: int, a4: int) -> np.ndarray:
    return _vec(
        [
            [[a1, 0], [0, (a1 + a2) % 2], [a1, 0]],
            [[a3], [0], [0]],
            [[a2, 0], [0, a2]],
            [[a4], [0]],
            [a3],
            [a4],
        ]
    )


def six_block_code() -> LinearCode:
    """A 4-dimensional binary code in F_2^{3x2} x F_2^{3x1} x F_2^{2x2} x F_2^{2x1} x F_2 x F_2.

    d = 2, maxsrk = 7, covering radius 6.
    """
    return canonicalize(Field(2), SIX_BLOCK_SHAPE, [six_block_word(*e) for e in np.eye(4, dtype=int)])


def six_block_far_word() -> Codeword:
    """A word at distance 6 from :func:`six_block_code`."""
    v = _vec([[[0, 1], [1, 1], [0, 0]], [[0], [1], [0]], [[1, 1], [1, 0]], [[0], [1]], [1], [1]])
    return Codeword.from_vector(SIX_BLOCK_SHAPE, v)


THREE_BLOCK_SHAPE = AmbientShape((3, 2, 1), (1, 2, 1))


def three_block_code(q: int = 2) -> LinearCode:
    """{((a1,a2,a3)^t, a4 I_2, a3)} in F_q^{3x1} x F_q^{2x2} x F_q; weights (1, 1, 2, 4)."""
    from sumrank.gf import tower_for

    F = tower_for(q).mid
    gens = [
        _vec([[1, 0, 0], [0, 0, 0, 0], [0]]),
        _vec([[0, 1, 0], [0, 0, 0, 0], [0]]),
        _vec([[0, 0, 1], [0, 0, 0, 0], [1]]),
        _vec([[0, 0, 0], [1, 0, 0, 1], [0]]),
    ]
    return canonicalize(F, THREE_BLOCK_SHAPE, gens)


PAIR_SHAPE = AmbientShape((2, 1), (2, 1))


def duality_pair() -> tuple[LinearCode, LinearCode]:
    """C_1 = {(0, a)} and C_2 = {(a E_11, 0)} in F_2^{2x2} x F_2.

    Same weights and sum-rank distribution, different dual invariants.
    """
    F = Field(2)
    return (
        canonicalize(F, PAIR_SHAPE, [[0, 0, 0, 0, 1]]),
        canonicalize(F, PAIR_SHAPE, [[1, 0, 0, 0, 0]]),
    )
