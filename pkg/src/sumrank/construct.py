"""Linearized Reed-Solomon codes and relatives, plus shortening and puncturing of MSRD codes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from sumrank import linalg
from sumrank.bounds import MsrdProfile, is_msrd
from sumrank.code import LinearCode, canonicalize, restrict_columns
from sumrank.fqm import FqmCode, image_vectors
from sumrank.gf import FieldTower
from sumrank.matspace import AmbientShape
from sumrank.skew import check_distinct_norms, moore_matrix


def norm_generator(tower: FieldTower) -> int:
    """The fixed generator g of GF(q)* used for default evaluation parameters."""
    return tower.mid.primitive_element if tower.q > 2 else 1


def element_with_norm(tower: FieldTower, target: int) -> int:
    """Smallest element code a of GF(q^m)* with N(a) = target."""
    for a in range(1, tower.top.order):
        if tower.norm(a) == target:
            return a
    raise ValueError(f"{target} is not a norm")  # pragma: no cover - the norm is onto GF(q)*


def default_a_list(tower: FieldTower, ell: int) -> tuple[int, ...]:
    """Representatives with norms 1, g, g^2, ... for the fixed generator g of GF(q)*."""
    if not 1 <= ell <= tower.q - 1:
        raise ValueError(f"at most q - 1 = {tower.q - 1} blocks have pairwise distinct norms, asked for {ell}")
    g = norm_generator(tower)
    out, x = [], 1
    for _ in range(ell):
        out.append(element_with_norm(tower, x))
        x = tower.mid.mul(x, g)
    return tuple(out)


def check_independent(tower: FieldTower, betas) -> None:
    if len(betas) and linalg.rank(tower.mid, tower.coords(np.asarray(betas, dtype=np.int64))) != len(betas):
        raise ValueError(f"beta values {tuple(betas)} are dependent over GF({tower.q})")


@dataclass(frozen=True)
class LrsParams:
    """Linearized Reed-Solomon parameters; block i uses the first n_i entries of ``betas``."""

    tower: FieldTower
    partition: tuple[int, ...]
    k: int
    a_list: tuple[int, ...] | None = None
    betas: tuple[int, ...] | None = None

    def __post_init__(self):
        T = self.tower
        part = tuple(int(x) for x in self.partition)
        object.__setattr__(self, "partition", part)
        if not part or any(not 1 <= x <= T.m for x in part):
            raise ValueError(f"partition entries must lie in [1, m={T.m}], got {part}")
        if not 1 <= self.k <= sum(part):
            raise ValueError(f"k must lie in [1, n={sum(part)}]")
        a = default_a_list(T, len(part)) if self.a_list is None else tuple(int(x) for x in self.a_list)
        if len(a) != len(part):
            raise ValueError("need one evaluation parameter per block")
        check_distinct_norms(T, a)
        b = T.alpha if self.betas is None else tuple(int(x) for x in self.betas)
        if len(b) < max(part):
            raise ValueError(f"need at least {max(part)} beta values")
        check_independent(T, b[: max(part)])
        object.__setattr__(self, "a_list", a)
        object.__setattr__(self, "betas", b)

    @property
    def n(self) -> int:
        return sum(self.partition)


def lrs_moore_matrix(p: LrsParams, rows: int | None = None) -> np.ndarray:
    """(M_k(a_1, beta_1..n_1) | ... | M_k(a_ell, beta_1..n_ell)), unreduced; ``rows`` overrides k."""
    k = p.k if rows is None else rows
    return np.hstack([moore_matrix(p.tower, k, a, p.betas[:ni]) for a, ni in zip(p.a_list, p.partition)])


def lrs_generator(p: LrsParams) -> FqmCode:
    return FqmCode(p.tower, p.partition, lrs_moore_matrix(p))


def lrs_code(q: int, m: int, partition, k: int, **kw) -> FqmCode:
    from sumrank.gf import tower_for

    return lrs_generator(LrsParams(tower_for(q, m), tuple(partition), k, **kw))


def field_size_footprint(q: int, m: int, partition) -> tuple[int, int, bool]:
    """(q^m, (ell + 1)^{max n_i}, equality); q^m >= (ell + 1)^{max n_i} whenever ell <= q - 1 and n_i <= m."""
    ell = len(partition)
    lhs, rhs = q**m, (ell + 1) ** max(partition)
    return lhs, rhs, lhs == rhs


# --------------------------------------------------------------- twisted


def norm_subgroup(tower: FieldTower, a_list) -> set[int]:
    """The subgroup of GF(q)* generated by the norms N(a_i)."""
    F = tower.mid
    group = {1}
    frontier = [1]
    gens = [tower.norm(int(a)) for a in a_list]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = F.mul(x, g)
            if y not in group:
                group.add(y)
                frontier.append(y)
    return group


def eta_admissible(tower: FieldTower, a_list, k: int, n: int, eta: int) -> bool:
    """(-1)^{kn} N(eta) lies outside the group generated by the N(a_i); eta = 0 always qualifies."""
    if eta == 0:
        return True
    v = tower.norm(eta)
    if (k * n) % 2:
        v = tower.mid.neg(v)
    return v not in norm_subgroup(tower, a_list)


def admissible_etas(tower: FieldTower, a_list, k: int, n: int) -> list[int]:
    """Every nonzero eta giving a twisted code."""
    return [e for e in range(1, tower.top.order) if eta_admissible(tower, a_list, k, n, e)]


@dataclass(frozen=True)
class TwistParams:
    lrs: LrsParams
    eta: int
    h: int = 0

    def __post_init__(self):
        p = self.lrs
        T = p.tower
        if any(ni != T.m for ni in p.partition):
            raise ValueError("twisted codes need n_i = m for every block")
        object.__setattr__(self, "h", int(self.h) % T.m)
        if not eta_admissible(T, p.a_list, p.k, p.n, int(self.eta)):
            raise ValueError(f"eta={self.eta} is not admissible: (-1)^(kn) N(eta) lies in the norm group of a")


def twisted_tail_row(p: LrsParams) -> np.ndarray:
    """Row k of the Moore matrices: (beta_j^{q^k} N_k(a_i))."""
    return lrs_moore_matrix(p, rows=p.k + 1)[-1]


def twisted_codewords(tp: TwistParams, msgs) -> np.ndarray:
    """f M_k + eta f_0^{q^h} (tail row) for message rows f over GF(q^m)."""
    p = tp.lrs
    T = p.tower
    F = T.top
    msgs = linalg.as_matrix(msgs, p.k)
    words = linalg.matmul(F, msgs, lrs_moore_matrix(p))
    if tp.eta:
        coef = F.mul(int(tp.eta), T.frobenius(msgs[:, 0], tp.h))
        words = F.add(words, F.mul(coef[:, None], twisted_tail_row(p)[None, :]))
    return words


def twisted_lrs_code(tp: TwistParams) -> LinearCode:
    """The F_q-linear image in M of the twisted code: images of alpha_j e_s span it."""
    p = tp.lrs
    T = p.tower
    msgs = np.zeros((p.k * T.m, p.k), dtype=np.int64)
    for s in range(p.k):
        for j, a in enumerate(T.alpha):
            msgs[s * T.m + j, s] = a
    words = twisted_codewords(tp, msgs)
    shape = AmbientShape.uniform(T.m, p.partition)
    C = canonicalize(T.mid, shape, image_vectors(T, p.partition, words))
    assert C.dim == p.k * T.m, "twisted encoding is not injective"
    return C


# ----------------------------------------------------- general family


@dataclass(frozen=True)
class GeneralMsrdParams:
    """t evaluation parameters, mu groups of r beta values; ell = t mu blocks of length r."""

    tower: FieldTower
    a_list: tuple[int, ...]
    mu: int
    r: int
    betas: tuple[int, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "a_list", tuple(int(x) for x in self.a_list))
        object.__setattr__(self, "betas", tuple(int(x) for x in self.betas))
        if self.mu < 1 or self.r < 1:
            raise ValueError("mu and r must be positive")
        if len(self.betas) != self.mu * self.r:
            raise ValueError(f"need mu r = {self.mu * self.r} beta values")
        check_distinct_norms(self.tower, self.a_list)
        if self.r > self.tower.m:
            raise ValueError("block length r exceeds m")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"k must lie in [1, {self.n}]")

    @property
    def t(self) -> int:
        return len(self.a_list)

    @property
    def ell(self) -> int:
        return self.t * self.mu

    @property
    def n(self) -> int:
        return self.ell * self.r

    @property
    def partition(self) -> tuple[int, ...]:
        return (self.r,) * self.ell

    def subspace(self, i: int) -> np.ndarray:
        """Coordinates (in alpha) spanning H_i, i in [0, mu)."""
        chunk = self.betas[i * self.r : (i + 1) * self.r]
        return self.tower.coords(np.asarray(chunk, dtype=np.int64))


@dataclass
class ConditionsReport:
    condition1: bool
    condition2: bool
    dims: list[int] = field(default_factory=list)
    failure: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.condition1 and self.condition2


def general_msrd_conditions(p: GeneralMsrdParams) -> ConditionsReport:
    """dim H_i = r, and H_i ∩ sum_{j in Gamma} H_j = 0 for i not in Gamma, |Gamma| <= min(k, mu) - 1."""
    T = p.tower
    F = T.mid
    spans = [p.subspace(i) for i in range(p.mu)]
    dims = [linalg.rank(F, S) for S in spans]
    c1 = all(d == p.r for d in dims)
    failure = None
    c2 = True
    top = min(p.k, p.mu) - 1
    for i in range(p.mu):
        others = [j for j in range(p.mu) if j != i]
        for size in range(1, top + 1):
            for gamma in itertools.combinations(others, size):
                S = np.vstack([spans[j] for j in gamma])
                if linalg.intersection(F, spans[i], S, T.m).shape[0]:
                    c2 = False
                    failure = failure or (i, gamma)
    return ConditionsReport(c1, c2, dims, failure)


def general_msrd_generator(p: GeneralMsrdParams) -> tuple[FqmCode, ConditionsReport]:
    G = np.hstack([moore_matrix(p.tower, p.k, a, p.betas) for a in p.a_list])
    return FqmCode(p.tower, p.partition, G), general_msrd_conditions(p)


# ------------------------------------------- shortening and puncturing


def normalize_code(C: LinearCode) -> LinearCode:
    """Transpose blocks with n_i > m_i and sort blocks by non-increasing m (stable)."""
    s = C.shape
    blocks, m_new, n_new = [], [], []
    for i in range(s.ell):
        X = s.blocks_of(C.basis, i)
        if s.n_list[i] > s.m_list[i]:
            X = np.swapaxes(X, 1, 2)
        blocks.append(X.reshape(C.dim, X.shape[1] * X.shape[2]))
        m_new.append(X.shape[1])
        n_new.append(X.shape[2])
    shape, perm = AmbientShape.normalized(m_new, n_new)
    if C.dim == 0:
        return LinearCode.zero(C.field, shape)
    vecs = np.hstack([blocks[i] for i in perm]) if blocks else np.zeros((C.dim, 0), np.int64)
    return canonicalize(C.field, shape, vecs)


def _msrd_profile(C: LinearCode, d: int | None, workers: int | None) -> MsrdProfile:
    ok, prof = is_msrd(C, d, workers)
    if not ok:
        raise ValueError("input code is not MSRD")
    return prof


def _vanishing_subcode(C: LinearCode, positions: list[int]) -> LinearCode:
    F = C.field
    msgs = linalg.nullspace(F, C.basis[:, positions].T) if positions else np.eye(C.dim, dtype=np.int64)
    if msgs.shape[0] == 0:
        return LinearCode.zero(F, C.shape)
    return canonicalize(F, C.shape, linalg.matmul(F, msgs, C.basis))


def shorten_msrd(C: LinearCode, mode: str, s: int, d: int | None = None, any_index: bool = False,
                 workers: int | None = None) -> LinearCode:
    """Keep the codewords vanishing on the last column (mode "col") or row (mode "row") of block s, then delete it.

    ``s`` is 1-based. Columns need s >= j, rows s >= j + 1 for the profile (j, delta);
    with equal m_i, ``any_index`` lifts the column guard. The result is normalized.
    """
    prof = _msrd_profile(C, d, workers)
    sh = C.shape
    if not 1 <= s <= sh.ell:
        raise ValueError(f"block index {s} outside [1, {sh.ell}]")
    i = s - 1
    m, n = sh.m_list[i], sh.n_list[i]
    off = sh.offsets[i]
    if mode == "col":
        if s < prof.j and not (any_index and sh.equal_m):
            raise ValueError(f"column shortening needs s >= j = {prof.j}")
        positions = [off + r * n + (n - 1) for r in range(m)]
        keep = [list(range(x)) for x in sh.n_list]
        keep[i] = list(range(n - 1))
        sub = _vanishing_subcode(C, positions)
        return normalize_code(restrict_columns(sub, keep))
    if mode == "row":
        if s < prof.j + 1:
            raise ValueError(f"row shortening needs s >= j + 1 = {prof.j + 1}")
        if m == 1:
            raise ValueError("cannot delete the only row of a block")
        positions = [off + (m - 1) * n + c for c in range(n)]
        keep = [list(range(x)) for x in sh.n_list]
        rows = [list(range(x)) for x in sh.m_list]
        rows[i] = list(range(m - 1))
        sub = _vanishing_subcode(C, positions)
        return normalize_code(restrict_columns(sub, keep, rows))
    raise ValueError(f"mode must be 'col' or 'row', not {mode!r}")


def puncture_msrd(C: LinearCode, s: int, d: int | None = None, any_index: bool = False,
                  workers: int | None = None) -> LinearCode:
    """Delete the last column of block s (1-based); s in [j] if delta > 0, else s in [j - 1]."""
    prof = _msrd_profile(C, d, workers)
    sh = C.shape
    top = prof.j if prof.delta > 0 else prof.j - 1
    if not 1 <= s <= sh.ell:
        raise ValueError(f"block index {s} outside [1, {sh.ell}]")
    if s > top and not (any_index and sh.equal_m):
        raise ValueError(f"puncturing needs s in [1, {top}] for profile (j={prof.j}, delta={prof.delta})")
    if sh.n == 1:
        raise ValueError("nothing left to puncture")
    keep = [list(range(x)) for x in sh.n_list]
    keep[s - 1] = list(range(sh.n_list[s - 1] - 1))
    return normalize_code(restrict_columns(C, keep))


def shortening_choices(C: LinearCode, prof: MsrdProfile) -> list[tuple[str, int]]:
    """Every admissible (mode, s) for the profile."""
    sh = C.shape
    out = [("col", s) for s in range(prof.j, sh.ell + 1)]
    out += [("row", s) for s in range(prof.j + 1, sh.ell + 1) if sh.m_list[s - 1] > 1]
    return out


def puncturing_choices(C: LinearCode, prof: MsrdProfile) -> list[int]:
    top = prof.j if prof.delta > 0 else prof.j - 1
    return list(range(1, top + 1)) if C.shape.n > 1 else []


# ------------------------------------------------------------ helpers


def lrs_evaluations(p: LrsParams, f_coeffs) -> np.ndarray:
    """(f_{a_1}(beta_1..n_1), ..., f_{a_ell}(beta_1..n_ell)) straight from the skew evaluation."""
    from sumrank.skew import SkewPoly, skew_eval

    f = SkewPoly(p.tower, tuple(f_coeffs))
    return np.concatenate([np.atleast_1d(skew_eval(f, a, np.array(p.betas[:ni]))) for a, ni in zip(p.a_list, p.partition)])


def lrs_admissible_partitions(q: int, m: int, n_max: int) -> list[tuple[int, ...]]:
    """Non-increasing partitions with parts <= m, at most q - 1 parts and total <= n_max."""
    out = []

    def rec(prefix, cap, total):
        if prefix:
            out.append(tuple(prefix))
        if len(prefix) == q - 1:
            return
        for x in range(min(cap, n_max - total), 0, -1):
            rec(prefix + [x], x, total + x)

    rec([], m, 0)
    return sorted(out, key=lambda t: (sum(t), t))

