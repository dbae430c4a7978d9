"""Skew polynomials F_{q^m}[x; sigma] with x a = sigma(a) x, evaluation by truncated norms, Moore matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from sumrank import linalg
from sumrank.gf import FieldTower


@dataclass(frozen=True)
class SkewPoly:
    """f = f_0 + f_1 x + ... + f_d x^d with coefficients on the left (GF(q^m) codes)."""

    tower: FieldTower
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(int(x) for x in self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        """Degree, or -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: SkewPoly) -> SkewPoly:
        F = self.tower.top
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return SkewPoly(self.tower, tuple(F.add(x, y) for x, y in zip(a, b)))

    def __mul__(self, other: SkewPoly) -> SkewPoly:
        return skew_mul(self, other)

    def __call__(self, a: int, beta: int) -> int:
        return skew_eval(self, a, beta)


def monomial(tower: FieldTower, i: int, c: int = 1) -> SkewPoly:
    return SkewPoly(tower, (0,) * i + (c,))


def skew_mul(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """(sum f_i x^i)(sum g_j x^j) = sum f_i sigma^i(g_j) x^{i+j}."""
    T = f.tower
    F = T.top
    if f.is_zero() or g.is_zero():
        return SkewPoly(T, ())
    out = [0] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, fi in enumerate(f.coeffs):
        if not fi:
            continue
        for j, gj in enumerate(g.coeffs):
            out[i + j] = F.add(out[i + j], F.mul(fi, T.frobenius(gj, i)))
    return SkewPoly(T, tuple(out))


def norm_ladder(tower: FieldTower, a: int, k: int) -> list[int]:
    """Truncated norms N_0(a), ..., N_{k-1}(a) via N_{i+1}(a) = sigma(N_i(a)) a."""
    F = tower.top
    out = [1]
    for _ in range(1, k):
        out.append(F.mul(tower.frobenius(out[-1], 1), a))
    return out[:k]


def skew_eval(f: SkewPoly, a: int, beta) -> int | np.ndarray:
    """f_a(beta) = sum_i f_i beta^{q^i} N_i(a); beta may be an array."""
    T = f.tower
    F = T.top
    beta = np.asarray(beta, dtype=np.int64)
    acc = np.zeros_like(beta)
    for i, (fi, Ni) in enumerate(zip(f.coeffs, norm_ladder(T, a, len(f.coeffs)))):
        if fi:
            acc = F.add(acc, F.mul(F.mul(fi, Ni), T.frobenius(beta, i)))
    acc = np.asarray(acc, dtype=np.int64)
    return int(acc) if acc.ndim == 0 else acc


def moore_matrix(tower: FieldTower, k: int, a: int, betas) -> np.ndarray:
    """k x r matrix with row i equal to (beta_j^{q^i} N_i(a))_j."""
    if k < 1:
        raise ValueError("k must be positive")
    F = tower.top
    b = np.asarray(betas, dtype=np.int64)
    rows = []
    for i, Ni in enumerate(norm_ladder(tower, a, k)):
        rows.append(F.mul(Ni, tower.frobenius(b, i)))
    return np.array(rows, dtype=np.int64).reshape(k, b.size)


def check_distinct_norms(tower: FieldTower, a_list) -> None:
    norms = [tower.norm(int(a)) for a in a_list]
    if any(int(a) == 0 for a in a_list):
        raise ValueError("evaluation parameters must be nonzero")
    if len(set(norms)) != len(norms):
        raise ValueError(f"norms {norms} of the evaluation parameters are not pairwise distinct")


def evaluation_matrix(f: SkewPoly, a: int) -> np.ndarray:
    """The m x m GF(q)-matrix of beta -> f_a(beta) in the basis alpha (columns are images)."""
    T = f.tower
    images = skew_eval(f, a, np.array(T.alpha, dtype=np.int64))
    return T.coords(images).T


def kernel_dims(f: SkewPoly, a_list) -> list[int]:
    """dim over GF(q) of ker(f_{a_i}) for each a_i; their sum is at most deg f."""
    if f.is_zero():
        raise ValueError("kernel dimensions are only bounded for nonzero f")
    T = f.tower
    check_distinct_norms(T, a_list)
    dims = [T.m - linalg.rank(T.mid, evaluation_matrix(f, int(a))) for a in a_list]
    assert sum(dims) <= f.degree, "root bound violated"
    return dims
