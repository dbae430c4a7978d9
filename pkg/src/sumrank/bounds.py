"""Singleton-type bounds, MSRD and r-MSRD predicates, and the bound on the number of blocks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from sumrank import linalg
from sumrank.anticode import ambient_weight, anticode_choices, generalized_weights, product_table
from sumrank.code import LinearCode, distance_invariants, dual_code, minimum_distance
from sumrank.matspace import AmbientShape


@dataclass(frozen=True)
class MsrdProfile:
    """(j, delta) with 1-based block index j and 0 <= delta < n_j."""

    j: int
    delta: int

    def d_target(self, shape: AmbientShape) -> int:
        return sum(shape.n_list[: self.j - 1]) + self.delta + 1

    def dim_target(self, shape: AmbientShape) -> int:
        return sum(m * n for m, n in zip(shape.m_list[self.j - 1 :], shape.n_list[self.j - 1 :])) - self.delta * shape.m_list[self.j - 1]


def split_columns(shape: AmbientShape, x: int) -> MsrdProfile:
    """The unique (j, delta) with x = n_1 + ... + n_{j-1} + delta, 0 <= delta < n_j (0 <= x < n)."""
    if not 0 <= x < shape.n:
        raise ValueError(f"{x} outside [0, {shape.n})")
    for j, n in enumerate(shape.n_list, start=1):
        if x < n:
            return MsrdProfile(j, x)
        x -= n
    raise AssertionError("unreachable")


def profile_from_distance(shape: AmbientShape, d: int) -> MsrdProfile:
    return split_columns(shape, d - 1)


def profile_from_dim(shape: AmbientShape, dim: int) -> MsrdProfile | None:
    """The profile whose dimension target is ``dim``, if any (targets strictly decrease with (j, delta))."""
    for j in range(1, shape.ell + 1):
        for delta in range(shape.n_list[j - 1]):
            p = MsrdProfile(j, delta)
            if p.dim_target(shape) == dim:
                return p
    return None


def singleton_bound(C: LinearCode, r: int, weights: list[int] | None = None) -> int:
    """sum_{i>=j} m_i n_i - m_j delta + r - 1 with (j, delta) read off d_r(C) - 1."""
    if not 1 <= r <= C.dim:
        raise ValueError(f"r={r} outside [1, {C.dim}]")
    w = generalized_weights(C) if weights is None else weights
    p = split_columns(C.shape, w[r - 1] - 1)
    bound = p.dim_target(C.shape) + r - 1
    assert C.dim <= bound, "Singleton bound violated"
    return bound


def is_trivial(C: LinearCode) -> bool:
    return C.dim == 0 or C.dim == C.shape.dim


def is_msrd(C: LinearCode, d: int | None = None, workers: int | None = None) -> tuple[bool, MsrdProfile | None]:
    """MSRD test; the profile comes from the dimension, so most codes are rejected without a sweep."""
    if C.dim == 0:
        return False, None
    p = profile_from_dim(C.shape, C.dim)
    if p is None:
        return False, None
    d = minimum_distance(C, workers) if d is None else d
    return d == p.d_target(C.shape), p


def columns_space_dim(C: LinearCode, cols: set[int]) -> int:
    """dim(C ∩ F_q[S]) with S a set of 0-based global column indices."""
    s, F = C.shape, C.field
    outside = []
    for i in range(s.ell):
        off = s.offsets[i]
        for r in range(s.m_list[i]):
            for c in range(s.n_list[i]):
                if s.col_offsets[i] + c not in cols:
                    outside.append(off + r * s.n_list[i] + c)
    if C.dim == 0:
        return 0
    if not outside:
        return C.dim
    return C.dim - linalg.rank(F, C.basis[:, outside])


def block_of_column(shape: AmbientShape, h: int) -> int:
    """k = max{nu : n_1 + ... + n_{nu-1} < h}, 1-based, for a 1-based column h."""
    return shape.column_block(h - 1)[0] + 1


@dataclass
class MsrdReport:
    definition: bool
    anticode_sum: bool
    anticode_meet: bool
    columns: bool
    profile: MsrdProfile | None = None
    distance: int | None = None

    @property
    def agree(self) -> bool:
        return len({self.definition, self.anticode_sum, self.anticode_meet, self.columns}) == 1

    def as_dict(self) -> dict:
        return {
            "definition": self.definition,
            "anticode_sum": self.anticode_sum,
            "anticode_meet": self.anticode_meet,
            "columns": self.columns,
            "agree": self.agree,
            "profile": None if self.profile is None else [self.profile.j, self.profile.delta],
            "distance": self.distance,
        }


def msrd_equivalent_conditions(C: LinearCode, d: int | None = None, workers: int | None = None) -> MsrdReport:
    """Evaluate the four equivalent characterizations of MSRD codes independently.

    * definition: d and dim meet the targets of one profile.
    * anticode_sum: with d - 1 = sum_{i<j} n_i + delta, every optimal anticode A
      with maxsrk(A) = d - 1 and dim(A) = sum_{i<j} m_i n_i + delta m_j has C + A = M.
    * anticode_meet: dim(C) has a profile (j, delta) and C ∩ A = 0 for every
      optimal anticode with maxsrk(A) <= sum_{i<j} n_i + delta.
    * columns: dim(C ∩ F_q[S_h]) = m_k for d <= h <= n, S_h = [d-1] ∪ {h}.
    """
    s = C.shape
    if C.dim == 0:
        return MsrdReport(False, False, False, False)
    d = minimum_distance(C, workers) if d is None else d
    ok_def, prof = is_msrd(C, d)

    pm = profile_from_dim(s, C.dim)
    cap = d - 1 if pm is None else max(d - 1, pm.d_target(s) - 1)
    table = product_table(C.field, C.dim, anticode_choices(C), workers, t_max=cap)
    st, sd, inter = table[:, -3], table[:, -2], table[:, -1]

    pd = profile_from_distance(s, d)
    target_dim = sum(m * n for m, n in zip(s.m_list[: pd.j - 1], s.n_list[: pd.j - 1])) + pd.delta * s.m_list[pd.j - 1]
    sel = (st == d - 1) & (sd == target_dim)
    # C + A = M  <=>  dim C + dim A - dim(C ∩ A) = dim M
    anticode_sum = bool(sel.any()) and bool(np.all(C.dim + sd[sel] - inter[sel] == s.dim))

    if pm is None:
        anticode_meet = False
    else:
        limit = pm.d_target(s) - 1
        anticode_meet = bool(np.all(inter[st <= limit] == 0))

    cols_ok = True
    first = set(range(d - 1))
    for h in range(d, s.n + 1):
        k = block_of_column(s, h)
        if columns_space_dim(C, first | {h - 1}) != s.m_list[k - 1]:
            cols_ok = False
            break
    return MsrdReport(ok_def, anticode_sum, anticode_meet, cols_ok, prof, d)


def r_table(shape: AmbientShape) -> list[int]:
    """r_0 = 0 and r_h = sum_{i<t} m_i n_i + (delta + 1) m_t for h = sum_{i<t} n_i + delta + 1."""
    out = [0]
    for h in range(1, shape.n + 1):
        p = split_columns(shape, h - 1)
        t = p.j
        out.append(sum(m * n for m, n in zip(shape.m_list[: t - 1], shape.n_list[: t - 1])) + (p.delta + 1) * shape.m_list[t - 1])
    return out


def r_msrd_index(shape: AmbientShape, dim: int, h: int) -> tuple[int, int]:
    """(r, m_k) for the r-MSRD condition at h."""
    p = profile_from_dim(shape, dim)
    if p is None:
        raise ValueError(f"dimension {dim} is not of the form sum_(i>=j) m_i n_i - delta m_j")
    dmax = p.d_target(shape)
    if not dmax <= h <= shape.n:
        raise ValueError(f"h={h} outside [{dmax}, {shape.n}]")
    rt = r_table(shape)
    k = block_of_column(shape, h)
    mk = shape.m_list[k - 1]
    return rt[h] - rt[dmax - 1] - mk + 1, mk


def is_r_msrd(C: LinearCode, h: int, weights: list[int] | None = None) -> bool:
    r, _ = r_msrd_index(C.shape, C.dim, h)
    if not 1 <= r <= C.dim:
        raise ValueError(f"index r={r} outside [1, {C.dim}]")
    w = generalized_weights(C) if weights is None else weights
    return w[r - 1] == h


def msrd_weight_formula(C: LinearCode, d: int | None = None) -> list[int]:
    """d_r(C) = d_{sum_{i<j} m_i n_i + m_j delta + r}(M) for an MSRD code."""
    ok, p = is_msrd(C, d)
    if not ok:
        raise ValueError("code is not MSRD")
    s = C.shape
    offset = s.dim - p.dim_target(s)
    return [ambient_weight(s, offset + r) for r in range(1, C.dim + 1)]


@dataclass
class DualityReport:
    equal_m: bool
    code_msrd: bool
    dual_msrd: bool
    d: int
    d_dual: int
    n: int

    @property
    def sum_is_n_plus_2(self) -> bool:
        return self.d + self.d_dual == self.n + 2

    @property
    def ok(self) -> bool:
        both = self.code_msrd and self.dual_msrd
        if both != self.sum_is_n_plus_2:
            return False
        if self.equal_m and self.code_msrd and not self.dual_msrd:
            return False
        if both and not self.equal_m:
            return False
        return True


def msrd_duality_report(C: LinearCode, d_dual: int | None = None, d: int | None = None,
                        workers: int | None = None) -> DualityReport:
    """Both MSRD duality facts for a non-trivial code; ``d_dual`` may be supplied when the dual is too large to sweep."""
    if is_trivial(C):
        raise ValueError("duality statements need a non-trivial code")
    D = dual_code(C)
    d = minimum_distance(C, workers) if d is None else d
    d_dual = minimum_distance(D, workers) if d_dual is None else d_dual
    return DualityReport(C.shape.equal_m, is_msrd(C, d)[0], is_msrd(D, d_dual)[0], d, d_dual, C.shape.n)


def msrd_duality_check(C: LinearCode, d_dual: int | None = None, workers: int | None = None) -> bool:
    return msrd_duality_report(C, d_dual, workers=workers).ok


# -------------------------------------------------------------- ell bound


@dataclass
class EllBound:
    bound: int
    cases: dict[str, int] = field(default_factory=dict)
    mds_comparison: Fraction | None = None


def msrd_ell_bound(nu: int, m: int, q: int, d: int) -> EllBound:
    """Upper bounds on the number of blocks ell of an MSRD code with all n_i = nu, m_i = m, distance d >= 3.

    Every displayed expression that applies is evaluated; ``bound`` is the smallest.
    """
    if d < 3:
        raise ValueError("the bound needs d >= 3")
    if not 1 <= nu <= m:
        raise ValueError("need 1 <= nu <= m")
    qn = q**nu - 1
    a = (d - 3) // nu
    cases: dict[str, int] = {}
    cases["general"] = a + (q**nu - q ** (nu * a + nu - d + 3) + (q - 1) * (q**m + 1)) // qn
    cases["general_relaxed"] = a + 1 + (q**m * (q - 1)) // qn
    if (d - 3) % nu == 0:
        cases["nu_divides_d_minus_3"] = (d - 3) // nu + ((q - 1) * (q**m + 1)) // qn
    if d <= nu + 2:
        cases["small_distance"] = (q**nu - q ** (nu - d + 3) + (q - 1) * (q**m + 1)) // qn
        cases["small_distance_relaxed"] = 1 + (q**m * (q - 1)) // qn
        if nu == m:
            cases["small_distance_square"] = (q ** (nu + 1) - 1) // qn
            cases["small_distance_square_relaxed"] = q + 1
    if d == 3 and m % nu == 0:
        cases["distance_three"] = (q - 1) * (q**m - 1) // qn
    return EllBound(min(cases.values()), cases, Fraction(q**m + 1, nu))


def ell_bound_for_code(C: LinearCode, d: int | None = None) -> EllBound:
    s = C.shape
    if not s.equal_m or len(set(s.n_list)) != 1:
        raise ValueError("the bound needs equal m_i and equal n_i")
    d = distance_invariants(C)[0] if d is None else d
    return msrd_ell_bound(s.n_list[0], s.m_list[0], C.field.order, d)
