"""Verification suites: each checks one family of claims end to end and reports pass/fail lines.

Every suite takes ``workers`` and a ``scale`` ("full" or "quick"); quick runs
a reduced instance set with the same checks. Results carry the computed
values so runs with different worker counts can be compared.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from sumrank import config
from sumrank.anticode import (
    anticode_bound_value,
    enumerate_optimal_anticodes,
    generalized_weights,
    generalized_weights_bruteforce,
    wei_duality_check,
)
from sumrank.bounds import (
    is_msrd,
    msrd_ell_bound,
    msrd_equivalent_conditions,
    msrd_weight_formula,
)
from sumrank.catalog import PAIR_SHAPE, duality_pair, six_block_code, three_block_code
from sumrank.code import (
    LinearCode,
    canonicalize,
    covering_radius,
    distance_invariants,
    dual_code,
    minimum_distance,
    random_code_exact,
)
from sumrank.construct import (
    GeneralMsrdParams,
    LrsParams,
    TwistParams,
    admissible_etas,
    field_size_footprint,
    general_msrd_generator,
    lrs_admissible_partitions,
    lrs_generator,
    puncture_msrd,
    puncturing_choices,
    shorten_msrd,
    shortening_choices,
)
from sumrank.distr import (
    binomial_moments_check,
    distributions,
    macwilliams_rank_list,
    macwilliams_support,
    no_macwilliams_witness,
)
from sumrank.fqm import dprime_generalized_weights, fqm_dual, fqm_minimum_distance, fqm_wei_duality_check
from sumrank.gf import Field, tower_for
from sumrank.matspace import AmbientShape, subspaces


@dataclass
class Check:
    name: str
    ok: bool
    value: object = None

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + ("" if self.value is None else f": {self.value}")


@dataclass
class SuiteResult:
    name: str
    checks: list[Check] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def add(self, name: str, ok: bool, value=None) -> bool:
        self.checks.append(Check(name, bool(ok), value))
        return bool(ok)

    def fingerprint(self) -> list[tuple[str, bool, str]]:
        """Everything but timing, for comparing runs."""
        return [(c.name, c.ok, repr(c.value)) for c in self.checks]

    def summary(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name} ({len(self.checks) - len(self.failures)}/{len(self.checks)} checks, {self.elapsed:.1f}s)"


def _timed(name: str):
    def wrap(fn):
        def run(*args, **kw) -> SuiteResult:
            res = SuiteResult(name)
            t0 = time.perf_counter()
            fn(res, *args, **kw)
            res.elapsed = time.perf_counter() - t0
            return res

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return wrap


# ------------------------------------------------------------ 1. examples

EXPECTED_RANK_LISTS = {
    "C1": {(0, 0): 1, (0, 1): 1},
    "C1_dual": {(0, 0): 1, (1, 0): 9, (2, 0): 6},
    "C2": {(0, 0): 1, (1, 0): 1},
    "C2_dual": {(0, 0): 1, (1, 0): 5, (0, 1): 1, (2, 0): 2, (1, 1): 5, (2, 1): 2},
}


@_timed("examples")
def suite_examples(res: SuiteResult, workers: int | None = None, scale: str = "full") -> None:
    """Worked examples: distance, maxsrk, covering radius, weights, rank lists."""
    C = six_block_code()
    d, mx = distance_invariants(C, workers)
    rho = covering_radius(C, workers)
    res.add("six-block code d=2, maxsrk=7, rho=6", (d, mx, rho) == (2, 7, 6), (d, mx, rho))
    w = generalized_weights(three_block_code(2), workers)
    res.add("three-block code weights (1,1,2,4)", w == [1, 1, 2, 4], w)
    C1, C2 = duality_pair()
    w1 = generalized_weights(dual_code(C1), workers)
    w2 = generalized_weights(dual_code(C2), workers)
    res.add("duality pair d_1(C1) = d_1(C2) = 1", minimum_distance(C1) == minimum_distance(C2) == 1)
    res.add("d_4(C1^perp)=2, d_4(C2^perp)=3", (w1[3], w2[3]) == (2, 3), (w1[3], w2[3]))
    codes = {"C1": C1, "C1_dual": dual_code(C1), "C2": C2, "C2_dual": dual_code(C2)}
    for name, X in codes.items():
        rl = distributions(X, workers).rank_list
        res.add(f"rank list of {name}", rl == EXPECTED_RANK_LISTS[name], rl)


# --------------------------------------------------------- 2. MacWilliams


def macwilliams_shapes() -> list[AmbientShape]:
    """Shapes with ell <= 3, n_i <= 2, m_i <= 3 exercising every block type."""
    return [
        PAIR_SHAPE,
        AmbientShape([3, 2, 1], [1, 2, 1]),
        AmbientShape([2, 2], [2, 1]),
        AmbientShape([3, 3], [2, 1]),
        AmbientShape([3, 2, 2], [2, 2, 1]),
        AmbientShape([2, 2, 2], [1, 1, 1]),
    ]


def _balanced_dim(rng: np.random.Generator, q: int, N: int, cap: int) -> int:
    """A dimension k with both q^k and q^(N-k) at most cap (when possible)."""
    lo = max(0, N - cap)
    hi = min(N, cap)
    if lo > hi:
        lo = hi = N // 2
    return int(rng.integers(lo, hi + 1))


def macwilliams_case(C: LinearCode, workers: int | None = None) -> tuple[bool, bool, bool]:
    """(rank-list transform exact, support transform exact, binomial moments) for one code."""
    F, s, k = C.field, C.shape, C.dim
    D = dual_code(C)
    dC, dD = distributions(C, workers), distributions(D, workers)
    rl = macwilliams_rank_list(dC.rank_list, s, k, F.order) == dD.rank_list
    sup = macwilliams_support(dC.support, s, k, F) == dD.support
    bm = binomial_moments_check(C, workers, dC.rank_list, dD.rank_list)
    return rl, sup, bm


@_timed("macwilliams")
def suite_macwilliams(res: SuiteResult, workers: int | None = None, scale: str = "full", seed: int = 2024) -> None:
    """Rank-list and support transforms against brute-force dual tallies; binomial moments."""
    per_shape = 50 if scale == "full" else 4
    rng = np.random.default_rng(seed)
    for q in (2, 3):
        F = tower_for(q).mid
        cap = 9 if q == 3 else 12
        for s in macwilliams_shapes():
            bad = [0, 0, 0]
            for _ in range(per_shape):
                k = _balanced_dim(rng, q, s.dim, cap)
                C = random_code_exact(F, s, k, rng)
                for j, ok in enumerate(macwilliams_case(C, workers)):
                    bad[j] += not ok
            res.add(f"q={q} {s}: {per_shape} codes, rank-list transform exact", bad[0] == 0, bad[0])
            res.add(f"q={q} {s}: {per_shape} codes, support transform exact", bad[1] == 0, bad[1])
            res.add(f"q={q} {s}: {per_shape} codes, binomial moments", bad[2] == 0, bad[2])


# ---------------------------------------------------- 3. no MacWilliams


@_timed("no-macwilliams")
def suite_no_macwilliams(res: SuiteResult, workers: int | None = None, scale: str = "full") -> None:
    w = no_macwilliams_witness()
    res.add("equal sum-rank distributions", w.sum_rank[0] == w.sum_rank[1], w.sum_rank)
    res.add("dual W_1 values 9 and 6", (w.dual_sum_rank[0][1], w.dual_sum_rank[1][1]) == (9, 6),
            (w.dual_sum_rank[0][1], w.dual_sum_rank[1][1]))


# ----------------------------------------------------------- 4. anticodes


@_timed("anticodes")
def suite_anticodes(res: SuiteResult, workers: int | None = None, scale: str = "full") -> None:
    """Every subspace of F_2^{2x2} x F_2: Anticode Bound, and equality exactly on the classified anticodes."""
    F = Field(2)
    shapes = [AmbientShape([2, 1], [2, 1])]
    if scale == "full":
        shapes.append(AmbientShape([1, 1, 1], [1, 1, 1]))
    for s in shapes:
        classified = set(enumerate_optimal_anticodes(F, s))
        n_sub = bound_bad = cls_bad = 0
        for B in subspaces(F, s.dim):
            C = canonicalize(F, s, B) if B.shape[0] else LinearCode.zero(F, s)
            n_sub += 1
            v = anticode_bound_value(C, workers)
            bound_bad += C.dim > v
            cls_bad += (C.dim == v) != (C in classified)
        res.add(f"{s}: anticode bound on all {n_sub} subspaces", bound_bad == 0, bound_bad)
        res.add(f"{s}: optimal iff classified ({len(classified)} anticodes)", cls_bad == 0, cls_bad)


# ------------------------------------------------------- 5. LRS is MSRD


def lrs_instances(scale: str = "full") -> list[tuple[int, int, tuple[int, ...], int]]:
    """(q, m, partition, k) with q in {3,4,5}, m <= 3, n <= 6, 1 <= k <= min(3, n - 1)."""
    out = []
    qs = (3, 4, 5) if scale == "full" else (3, 4)
    ms = (1, 2, 3) if scale == "full" else (1, 2)
    for q in qs:
        for m in ms:
            for part in lrs_admissible_partitions(q, m, 6 if scale == "full" else 4):
                n = sum(part)
                for k in range(1, min(3, n - 1) + 1):
                    out.append((q, m, part, k))
    return out


def dual_distance(C, workers: int | None = None) -> int:
    """Exhaustive sweep of the dual image when affordable, else d'_1 from the support lattice."""
    D = fqm_dual(C)
    DL = D.to_linear_code()
    q = C.tower.q
    if (q**DL.dim - 1) // (q - 1) <= config.LIMITS.sweep // 4:
        return minimum_distance(DL, workers)
    return fqm_minimum_distance(D, workers)


@dataclass
class LrsOutcome:
    key: tuple
    d: int
    conditions: dict
    dual_d: int
    weights_ok: bool
    footprint: tuple[int, int, bool]


def lrs_outcome(q: int, m: int, part: tuple[int, ...], k: int, workers: int | None = None) -> LrsOutcome:
    T = tower_for(q, m)
    C = lrs_generator(LrsParams(T, part, k))
    L = C.to_linear_code()
    d = minimum_distance(L, workers)
    rep = msrd_equivalent_conditions(L, d, workers)
    dd = dual_distance(C, workers)
    w_ok = rep.definition and generalized_weights(L, workers) == msrd_weight_formula(L, d)
    return LrsOutcome((q, m, part, k), d, rep.as_dict(), dd, w_ok, field_size_footprint(q, m, part))


@_timed("lrs-msrd")
def suite_lrs(res: SuiteResult, workers: int | None = None, scale: str = "full") -> None:
    """Exhaustive distance, four MSRD conditions, MSRD dual, weight formula, field-size footprint."""
    for q, m, part, k in lrs_instances(scale):
        o = lrs_outcome(q, m, part, k, workers)
        n = sum(part)
        c = o.conditions
        four = c["definition"] and c["anticode_sum"] and c["anticode_meet"] and c["columns"]
        lhs, rhs, eq = o.footprint
        foot = lhs >= rhs and (eq or not (len(part) == q - 1 and max(part) == m))
        ok = o.d == n - k + 1 and four and o.dual_d == k + 1 and o.weights_ok and foot
        res.add(f"LRS q={q} m={m} partition={part} k={k}", ok,
                {"d": o.d, "four": four, "dual_d": o.dual_d, "weights": o.weights_ok, "footprint": foot})
    for p in general_instances():
        C, cond = general_msrd_generator(p)
        L = C.to_linear_code()
        d = minimum_distance(L, workers)
        rep = msrd_equivalent_conditions(L, d, workers)
        res.add(f"general q={p.tower.q} m={p.tower.m} mu={p.mu} r={p.r} k={p.k}",
                cond.ok and d == p.n - p.k + 1 and rep.definition and rep.agree, {"d": d, "conditions": cond.ok})


# -------------------------------------------------------------- 6. twisted


@_timed("twisted")
def suite_twisted(res: SuiteResult, workers: int | None = None, scale: str = "full") -> None:
    from sumrank.construct import twisted_lrs_code

    T = tower_for(3, 2)
    etas = admissible_etas(T, (1,), 1, 2)
    res.add("q=3 m=2: admissible eta exist", bool(etas), etas)
    for eta in etas:
        for h in range(T.m):
            L = twisted_lrs_code(TwistParams(LrsParams(T, (2,), 1, a_list=(1,)), eta, h))
            d = minimum_distance(L, workers)
            res.add(f"twisted q=3 m=2 eta={eta} h={h} k=1: MSRD", d == 2 and is_msrd(L, d)[0], d)
    none = True
    for m in (2, 3):
        T2 = tower_for(2, m)
        for k in range(1, m):
            none &= admissible_etas(T2, (1,), k, m) == []
    res.add("q=2: no admissible nonzero eta", none)


# -------------------------------------------------- 7. shorten / puncture


@_timed("shorten-puncture")
def suite_shorten_puncture(res: SuiteResult, workers: int | None = None, scale: str = "full") -> None:
    for q, m, part, k in lrs_instances(scale):
        L = lrs_generator(LrsParams(tower_for(q, m), part, k)).to_linear_code()
        d = sum(part) - k + 1
        ok_msrd, prof = is_msrd(L, d)
        bad, done = [], 0
        for mode, s in shortening_choices(L, prof):
            S = shorten_msrd(L, mode, s, d=d)
            if S.dim == 0:
                continue
            dS = minimum_distance(S, workers)
            done += 1
            if not (dS == d and is_msrd(S, dS)[0]):
                bad.append((mode, s, dS))
        for s in puncturing_choices(L, prof):
            P = puncture_msrd(L, s, d=d)
            dP = minimum_distance(P, workers)
            done += 1
            if not (dP == d - 1 and is_msrd(P, dP)[0]):
                bad.append(("puncture", s, dP))
        res.add(f"q={q} m={m} partition={part} k={k}: {done} shortened/punctured codes MSRD", ok_msrd and not bad, bad)


# ---------------------------------------------------------------- 8. Wei


def general_instances() -> list:
    """Members of the general family with mu > 1 (mu = 1 is the LRS family)."""
    out = []
    T = tower_for(2, 2)
    out.append(GeneralMsrdParams(T, (1,), 2, 1, T.alpha, 1))
    T = tower_for(3, 2)
    for k in (1, 2, 3):
        out.append(GeneralMsrdParams(T, (1, 4), 2, 1, T.alpha, k))
    T = tower_for(2, 4)
    out.append(GeneralMsrdParams(T, (1,), 2, 2, T.alpha, 2))
    return out


def wei_shapes() -> list[AmbientShape]:
    return [
        AmbientShape([2, 2], [2, 1]),
        AmbientShape([2, 2], [1, 1]),
        AmbientShape([3, 3], [2, 1]),
        AmbientShape([2, 2, 2], [1, 1, 1]),
        AmbientShape([1, 1, 1], [1, 1, 1]),
    ]


@_timed("wei")
def suite_wei(res: SuiteResult, workers: int | None = None, scale: str = "full", seed: int = 7) -> None:
    per_shape = 20 if scale == "full" else 3
    rng = np.random.default_rng(seed)
    F = Field(2)
    for s in wei_shapes():
        bad = 0
        for _ in range(per_shape):
            k = int(rng.integers(1, s.dim))
            C = random_code_exact(F, s, k, rng)
            bad += not wei_duality_check(C, workers)
        res.add(f"{s}: Wei duality on {per_shape} random codes", bad == 0, bad)
    if scale == "full":
        s = AmbientShape([2, 2], [2, 1])
        agree = 0
        for _ in range(5):
            C = random_code_exact(F, s, int(rng.integers(1, 5)), rng)
            agree += generalized_weights(C, workers) == generalized_weights_bruteforce(C)
        res.add("weights by lattice equal weights by subcode enumeration", agree == 5, agree)
    fqm_codes = [(f"LRS q={q} m={m} partition={part} k={k}", lrs_generator(LrsParams(tower_for(q, m), part, k)))
                 for q, m, part, k in lrs_instances(scale)]
    fqm_codes += [(f"general q={p.tower.q} m={p.tower.m} mu={p.mu} r={p.r} k={p.k}", general_msrd_generator(p)[0])
                  for p in general_instances()]
    for label, C in fqm_codes:
        w = dprime_generalized_weights(C, workers)
        expected = list(range(C.n - C.k + 1, C.n + 1))
        res.add(f"F_q^m Wei duality for {label}", fqm_wei_duality_check(C, workers, weights=w) and w == expected, w)
    C1, C2 = duality_pair()
    outside = []
    for C in (C1, C2):
        try:
            wei_duality_check(C, workers)
            outside.append("accepted")
        except ValueError:
            outside.append("rejected")
    res.add("duality pair lies outside the equal-m hypothesis", outside == ["rejected", "rejected"], outside)
    w1 = generalized_weights(dual_code(C1), workers)
    w2 = generalized_weights(dual_code(C2), workers)
    res.add("equal weights for C1, C2 but different dual weights", generalized_weights(C1) == generalized_weights(C2) and w1 != w2,
            (w1, w2))


# ------------------------------------------------------------ 9. ell bound


PRIME_POWERS = (2, 3, 4, 5)


def ell_bound_specializations(q_max: int = 5, m_max: int = 4, d_max: int = 12) -> dict[str, list]:
    """Counterexamples (empty lists on success) to each stated specialization of the ell bound."""
    out: dict[str, list] = {"hamming": [], "square": [], "chain": []}
    for q in (x for x in PRIME_POWERS if x <= q_max):
        for d in range(3, d_max):
            b = msrd_ell_bound(1, 1, q, d)
            if b.cases["general"] != q + d - 2 or b.bound > q + d - 2:
                out["hamming"].append((q, d, b.cases["general"], b.bound))
        for nu in (1, 2):
            for d in range(3, nu + 3):
                b = msrd_ell_bound(nu, nu, q, d)
                if b.bound > q:
                    out["square"].append((q, nu, d, b.bound))
        for m in range(1, m_max + 1):
            for nu in range(1, m + 1):
                for d in range(3, d_max):
                    c = msrd_ell_bound(nu, m, q, d).cases
                    pairs = [("general", "general_relaxed"), ("small_distance", "small_distance_relaxed"),
                             ("small_distance_square", "small_distance_square_relaxed")]
                    for lo, hi in pairs:
                        if lo in c and c[lo] > c[hi]:
                            out["chain"].append((q, nu, m, d, lo))
                    if c.get("small_distance_square_relaxed", q + 1) != q + 1:
                        out["chain"].append((q, nu, m, d, "square"))
    return out


@_timed("ell-bound")
def suite_ell_bound(res: SuiteResult, workers: int | None = None, scale: str = "full") -> None:
    bad = ell_bound_specializations()
    res.add("nu=m=1 gives ell <= q+d-2", not bad["hamming"], bad["hamming"])
    res.add("nu=m<=2, d<=nu+2 gives ell <= q", not bad["square"], bad["square"])
    res.add("each displayed bound is below its relaxation", not bad["chain"], bad["chain"])
    b = msrd_ell_bound(1, 2, 2, 3).bound
    res.add("d=3, nu=1, m=2, q=2 gives ell <= 3", b == 3, b)
    viol = []
    for q, m, part, k in lrs_instances(scale):
        d = sum(part) - k + 1
        if len(set(part)) == 1 and d >= 3:
            b = msrd_ell_bound(part[0], m, q, d).bound
            if len(part) > b:
                viol.append((q, m, part, k, b))
    for p in general_instances():
        d = p.n - p.k + 1
        if d >= 3:
            b = msrd_ell_bound(p.r, p.tower.m, p.tower.q, d).bound
            if p.ell > b:
                viol.append(("general", p.tower.q, p.tower.m, p.partition, p.k, b))
    res.add("no constructed MSRD instance exceeds the bound", not viol, viol)


# ------------------------------------------------------- 10. determinism


def run_all(workers: int | None = None, scale: str = "full") -> list[SuiteResult]:
    return [fn(workers=workers, scale=scale) for fn in SUITES.values()]


@_timed("determinism")
def suite_determinism(res: SuiteResult, workers: int | None = None, scale: str = "quick") -> None:
    """Quick runs of every other suite with one worker and with several agree exactly."""
    many = max(2, workers or 2)
    for name, fn in SUITES.items():
        a = fn(workers=1, scale="quick").fingerprint()
        b = fn(workers=many, scale="quick").fingerprint()
        res.add(f"{name}: 1 worker vs {many} workers", a == b)


SUITES = {
    "examples": suite_examples,
    "macwilliams": suite_macwilliams,
    "no-macwilliams": suite_no_macwilliams,
    "anticodes": suite_anticodes,
    "lrs-msrd": suite_lrs,
    "twisted": suite_twisted,
    "shorten-puncture": suite_shorten_puncture,
    "wei": suite_wei,
    "ell-bound": suite_ell_bound,
}

GROUPS = {
    "examples": ["examples", "no-macwilliams"],
    "identities": ["macwilliams", "anticodes", "wei"],
    "msrd-zoo": ["lrs-msrd", "twisted", "shorten-puncture", "ell-bound"],
}
