"""Command-line front end: ``sumrank construct|analyze|verify``.

Reports are ``key: value`` lines in a fixed order (``--json`` for a
structured variant). Exit codes: 0 all checks pass, 1 a mathematical
violation, 2 usage errors and exceeded enumeration ceilings.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from sumrank import config

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class Report:
    """Ordered key/value pairs plus an overall verdict."""

    def __init__(self) -> None:
        self.items: list[tuple[str, object]] = []
        self.violations: list[str] = []

    def put(self, key: str, value) -> None:
        self.items.append((key, value))

    def check(self, key: str, ok: bool) -> None:
        self.put(key, "pass" if ok else "FAIL")
        if not ok:
            self.violations.append(key)

    def render(self, as_json: bool) -> str:
        if as_json:
            return json.dumps({k: _jsonable(v) for k, v in self.items}, indent=2) + "\n"
        return "".join(f"{k}: {_text(v)}\n" for k, v in self.items)


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if hasattr(v, "item"):
        return v.item()
    return v


def _text(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple)):
        return " ".join(_text(x) for x in v)
    if isinstance(v, dict):
        return "; ".join(f"{k}={_text(x)}" for k, x in v.items())
    return str(v)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


# --------------------------------------------------------------- construct


def _audit_lrs(rep: Report, p) -> None:
    T = p.tower
    ell = len(p.partition)
    rep.put("q", T.q)
    rep.put("m", T.m)
    rep.put("partition", list(p.partition))
    rep.put("ell", ell)
    rep.put("n", p.n)
    rep.put("k", p.k)
    rep.check("ell <= q-1", ell <= T.q - 1)
    for i, a in enumerate(p.a_list, 1):
        rep.put(f"norm a_{i}", f"N({a}) = {T.norm(a)}")
    rep.put("betas", list(p.betas[: max(p.partition)]))


def _write(rep: Report, args, C) -> None:
    from sumrank.io import file_hash, write_code

    write_code(args.out, C)
    rep.put("file", str(args.out))
    rep.put("sha256", file_hash(args.out))


def cmd_construct(args) -> Report:
    from sumrank.construct import (
        GeneralMsrdParams,
        LrsParams,
        TwistParams,
        admissible_etas,
        general_msrd_generator,
        lrs_generator,
        twisted_lrs_code,
    )
    from sumrank.gf import tower_for

    rep = Report()
    T = tower_for(args.q, args.m)
    rep.put("construction", args.family)
    if args.family == "lrs":
        p = LrsParams(T, args.partition, args.k, a_list=args.a, betas=args.betas)
        _audit_lrs(rep, p)
        rep.put("d_target", p.n - p.k + 1)
        rep.put("dim_fq", p.k * T.m)
        _write(rep, args, lrs_generator(p))
    elif args.family == "twisted":
        partition = args.partition or (T.m,)
        p = LrsParams(T, partition, args.k, a_list=args.a, betas=args.betas)
        etas = admissible_etas(T, p.a_list, p.k, p.n)
        if not etas:
            raise ValueError(f"no admissible eta for q={T.q}, m={T.m}, k={p.k}, n={p.n}")
        eta = etas[0] if args.eta is None else args.eta
        tp = TwistParams(p, eta, args.h)
        _audit_lrs(rep, p)
        rep.put("admissible etas", etas)
        rep.put("eta", eta)
        rep.put("h", tp.h)
        rep.put("d_target", p.n - p.k + 1)
        rep.put("dim_fq", p.k * T.m)
        _write(rep, args, twisted_lrs_code(tp))
    else:
        betas = args.betas if args.betas is not None else T.alpha[: args.mu * args.r]
        t = args.t if args.a is None else len(args.a)
        a_list = args.a
        if a_list is None:
            from sumrank.construct import default_a_list

            a_list = default_a_list(T, t)
        p = GeneralMsrdParams(T, a_list, args.mu, args.r, betas, args.k)
        C, cond = general_msrd_generator(p)
        rep.put("q", T.q)
        rep.put("m", T.m)
        rep.put("mu", p.mu)
        rep.put("r", p.r)
        rep.put("ell", p.ell)
        rep.put("n", p.n)
        rep.put("k", p.k)
        for i, a in enumerate(p.a_list, 1):
            rep.put(f"norm a_{i}", f"N({a}) = {T.norm(a)}")
        rep.put("subspace dims", cond.dims)
        rep.check("condition 1 (dim H_i = r)", cond.condition1)
        rep.check("condition 2 (independent subspaces)", cond.condition2)
        rep.put("d_target", p.n - p.k + 1)
        _write(rep, args, C)
    return rep


# ----------------------------------------------------------------- analyze


def cmd_analyze(args) -> Report:
    from sumrank.bounds import is_msrd, msrd_equivalent_conditions
    from sumrank.code import covering_radius, distance_invariants
    from sumrank.distr import distributions
    from sumrank.fqm import FqmCode, dprime_generalized_weights
    from sumrank.io import file_hash, read_code

    rep = Report()
    t0 = time.perf_counter()
    obj = read_code(args.file)
    rep.put("file", str(args.file))
    rep.put("sha256", file_hash(args.file))
    fqm = obj if isinstance(obj, FqmCode) else None
    C = fqm.to_linear_code() if fqm else obj
    rep.put("kind", "fqm" if fqm else "fq")
    rep.put("q", C.field.order)
    rep.put("shape", " x ".join(f"{m}x{n}" for m, n in zip(C.shape.m_list, C.shape.n_list)))
    rep.put("dim", C.dim)
    everything = args.all
    d = None
    if C.dim and (everything or args.distance or args.msrd or args.verify_identities):
        d, mx = distance_invariants(C, args.workers)
        rep.put("d", d)
        rep.put("maxsrk", mx)
    if everything or args.covering_radius:
        rep.put("covering_radius", covering_radius(C, args.workers))
    w = None
    if C.dim and (everything or args.genweights or args.verify_identities):
        from sumrank.anticode import generalized_weights

        w = generalized_weights(C, args.workers)
        rep.put("generalized_weights", w)
        if fqm is not None:
            rep.put("fqm_generalized_weights", dprime_generalized_weights(fqm, args.workers))
    if everything or args.distributions:
        dist = distributions(C, args.workers)
        rep.put("sum_rank_distribution", dist.sum_rank)
        rep.put("rank_list_distribution", {",".join(map(str, k)): v for k, v in sorted(dist.rank_list.items())})
    if C.dim and (everything or args.msrd):
        ok, prof = is_msrd(C, d)
        rep.put("msrd", ok)
        rep.put("msrd_profile", None if prof is None else [prof.j, prof.delta])
        mr = msrd_equivalent_conditions(C, d, args.workers)
        rep.put("msrd_conditions", {k: v for k, v in mr.as_dict().items() if k in
                                    ("definition", "anticode_sum", "anticode_meet", "columns")})
        rep.check("msrd conditions agree", mr.agree)
    if args.verify_identities:
        _verify_identities(rep, C, fqm, d, w, args.workers)
    rep.put("elapsed_s", round(time.perf_counter() - t0, 3))
    return rep


def _verify_identities(rep: Report, C, fqm, d, w, workers) -> None:
    from sumrank.anticode import wei_duality_check
    from sumrank.bounds import is_trivial, msrd_duality_report, singleton_bound
    from sumrank.fqm import fqm_wei_duality_check
    from sumrank.suites import macwilliams_case

    rl, sup, bm = macwilliams_case(C, workers)
    rep.check("macwilliams rank-list transform", rl)
    rep.check("macwilliams support transform", sup)
    rep.check("binomial moments", bm)
    if C.shape.equal_m:
        rep.check("wei duality", wei_duality_check(C, workers, weights=w))
    else:
        rep.put("wei duality", "skipped (unequal m)")
    if fqm is not None:
        rep.check("fqm wei duality", fqm_wei_duality_check(fqm, workers))
    if w:
        ok = True
        for r in range(1, C.dim + 1):
            try:
                singleton_bound(C, r, w)
            except AssertionError:
                ok = False
        rep.check("singleton bound", ok)
    if not is_trivial(C):
        dr = msrd_duality_report(C, d=d, workers=workers)
        rep.put("dual_d", dr.d_dual)
        rep.check("msrd duality", dr.ok)


# ------------------------------------------------------------------ verify


def cmd_verify(args) -> tuple[Report, list]:
    from sumrank.suites import GROUPS, SUITES, suite_determinism

    names = [n for g in (GROUPS if args.suite == "all" else [args.suite]) for n in GROUPS[g]]
    results = [SUITES[n](workers=args.workers, scale=args.scale) for n in names]
    if args.determinism:
        results.append(suite_determinism(workers=args.workers))
    rep = Report()
    for r in results:
        rep.check(r.name, r.ok)
    return rep, results


# -------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=None, help="worker processes (default 1 or SUMRANK_WORKERS)")
    common.add_argument("--ceiling", type=int, default=None, help="largest exhaustive sweep (default 2^22 or SUMRANK_CEILING)")
    common.add_argument("--json", action="store_true", help="structured output")

    ap = argparse.ArgumentParser(prog="sumrank", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    con = sub.add_parser("construct", parents=[common], help="build a code and write a canonical code file")
    con.add_argument("family", choices=["lrs", "twisted", "general-msrd"])
    con.add_argument("--q", type=int, required=True)
    con.add_argument("--m", type=int, required=True)
    con.add_argument("--partition", type=_int_list, default=None, help="block lengths, e.g. 2,2")
    con.add_argument("--k", type=int, required=True, help="dimension over GF(q^m)")
    con.add_argument("--a", type=_int_list, default=None, help="evaluation parameters a_i (field element codes)")
    con.add_argument("--betas", type=_int_list, default=None, help="evaluation points (default: the basis alpha)")
    con.add_argument("--eta", type=int, default=None, help="twist coefficient (default: first admissible)")
    con.add_argument("--h", type=int, default=0, help="twist exponent")
    con.add_argument("--mu", type=int, default=1)
    con.add_argument("--r", type=int, default=None, help="block length for general-msrd (default m)")
    con.add_argument("--t", type=int, default=1, help="number of evaluation parameters for general-msrd")
    con.add_argument("--out", type=Path, required=True)

    ana = sub.add_parser("analyze", parents=[common], help="compute invariants of a code file")
    ana.add_argument("file", type=Path)
    ana.add_argument("--all", action="store_true")
    ana.add_argument("--distance", action="store_true", help="minimum distance and maxsrk")
    ana.add_argument("--covering-radius", action="store_true")
    ana.add_argument("--genweights", action="store_true")
    ana.add_argument("--distributions", action="store_true")
    ana.add_argument("--msrd", action="store_true")
    ana.add_argument("--verify-identities", action="store_true",
                     help="MacWilliams, Wei and bound cross-checks; exit 1 on a violation")

    ver = sub.add_parser("verify", parents=[common], help="run verification suites")
    ver.add_argument("suite", choices=["examples", "identities", "msrd-zoo", "all"])
    ver.add_argument("--scale", choices=["full", "quick"], default="full")
    ver.add_argument("--determinism", action="store_true", help="also compare 1 worker against several")
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    saved = config.set_limits(sweep=args.ceiling) if args.ceiling is not None else None
    try:
        return _dispatch(ap, args)
    finally:
        if saved is not None:
            config.set_limits(**saved.__dict__)


def _dispatch(ap: argparse.ArgumentParser, args) -> int:
    if args.command == "construct" and args.family == "general-msrd" and args.r is None:
        args.r = args.m
    try:
        if args.command == "construct":
            if args.family == "lrs" and args.partition is None:
                ap.print_usage(sys.stderr)
                print("error: construct lrs needs --partition", file=sys.stderr)
                return EXIT_USAGE
            rep = cmd_construct(args)
            out = rep.render(args.json)
        elif args.command == "analyze":
            rep = cmd_analyze(args)
            out = rep.render(args.json)
        else:
            rep, results = cmd_verify(args)
            if args.json:
                out = json.dumps([{"suite": r.name, "ok": r.ok, "elapsed_s": round(r.elapsed, 3),
                                   "checks": [{"name": c.name, "ok": c.ok, "value": repr(c.value)} for c in r.checks]}
                                  for r in results], indent=2) + "\n"
            else:
                out = "".join(c.line() + "\n" for r in results for c in r.checks)
                out += "".join(r.summary() + "\n" for r in results)
    except config.CeilingExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(out)
    return EXIT_VIOLATION if rep.violations else EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
