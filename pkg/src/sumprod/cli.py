"""Command-line front end.

Exit status: 0 when every exact check passes, 1 on an exact-check
violation, 2 on bad input or configuration, 3 when a required step exceeds
a brute-force cap.  Soft ratios never affect the exit status.
"""
from __future__ import annotations

import argparse
import sys
import time

from . import __version__
from .config import HarnessConfig, load_config
from .core_sets import FiniteSet, format_set, inverse_set, read_set_file
from .decompose import decompose, revalidate
from .energy import energy, rep_histogram
from .errors import (EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_OK, ConfigError, InputError,
                     SumProdError)
from .families import KINDS, FamilySpec, generate
from .harness import compute_quantities, sweep, verify_suite
from .incidence import dstar_config, elekes_config, random_config
from .report import Report, emit_report, eq_check
from .structure_stats import product_witness, validate_D_witness

_OPS = ("sum", "diff", "prod", "quot")


def _common(p: argparse.ArgumentParser, needs_set=True):
    if needs_set:
        p.add_argument("--set", dest="set_file", required=True, help="set file, one rational per line")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--seed", type=int, help="unsigned 64-bit seed")
    p.add_argument("--workers", type=int)
    p.add_argument("--cap-sigma", type=int)
    p.add_argument("--cap-sols", type=int)
    p.add_argument("--cap-incidence", type=int)
    p.add_argument("--config", help="JSON config file; flags override it "
                   "(incidence: elekes, dstar or random selects the configuration)")


def _family_args(p):
    p.add_argument("--family", choices=KINDS)
    p.add_argument("--n", type=int)
    p.add_argument("--start")
    p.add_argument("--step")
    p.add_argument("--ratio")
    p.add_argument("--S", type=int)
    p.add_argument("--P", type=int)
    p.add_argument("--N", type=int)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sumprod", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a family member as a set file")
    _common(p, needs_set=False)
    _family_args(p)

    p = sub.add_parser("stats", help="set sizes, energies and expander quantities")
    _common(p)

    p = sub.add_parser("energy", help="representation histogram and one energy moment")
    _common(p)
    p.add_argument("--op", choices=_OPS, default="diff")
    p.add_argument("--moment", type=int, choices=(1, 2, 3, 4), default=2)
    p.add_argument("--with", dest="with_set", help="second set file (default: the same set)")

    p = sub.add_parser("decompose", help="dyadic decompositions with certificates")
    _common(p)
    p.add_argument("--mode", choices=("main", "partition", "fourth"), default="main")

    p = sub.add_parser("verify", help="run every exact check")
    _common(p)

    p = sub.add_parser("incidence", help="incidence configurations and the Szemeredi-Trotter bound")
    _common(p, needs_set=False)
    p.add_argument("--set", dest="set_file")
    p.add_argument("--tau", type=int, default=1)
    p.add_argument("--points", type=int, default=100)
    p.add_argument("--lines", type=int, default=100)

    p = sub.add_parser("sweep", help="quantities and soft ratios over a family")
    _common(p, needs_set=False)
    _family_args(p)
    p.add_argument("--sizes", help="comma-separated sizes, e.g. 8,16,32")
    return ap


INCIDENCE_KINDS = ("elekes", "dstar", "random")


def _config(args) -> HarnessConfig:
    if args.command == "incidence":
        # --config names the configuration kind here; anything else is a config file
        args.kind = "elekes"
        if args.config in INCIDENCE_KINDS:
            args.kind, args.config = args.config, None
    cfg = load_config(args.config) if args.config else HarnessConfig()
    return cfg.updated(seed=args.seed, workers=args.workers, cap_sigma=args.cap_sigma,
                       cap_sols=args.cap_sols, cap_incidence=args.cap_incidence)


def _family(args, cfg: HarnessConfig) -> FamilySpec:
    if args.family is None:
        if cfg.family is None:
            raise ConfigError("no family given (use --family or a config 'family' entry)")
        return cfg.family
    d = {"kind": args.family}
    for k in ("n", "start", "step", "ratio", "S", "P", "N"):
        v = getattr(args, k)
        if v is not None:
            d[k] = v
    if args.seed is not None:
        d["seed"] = args.seed
    return FamilySpec(**d)


def _meta(cfg, t0):
    return {"version": __version__, "seed": cfg.seed, "timings": {"total": round(time.perf_counter() - t0, 6)}}


def _write(text: str, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(args) -> Report | str:
    cfg = _config(args)
    if args.command == "gen":
        return format_set(generate(_family(args, cfg)))
    if args.command == "sweep":
        fam = _family(args, cfg)
        if args.sizes:
            try:
                sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
            except ValueError:
                raise ConfigError(f"bad --sizes {args.sizes!r}") from None
        else:
            sizes = list(cfg.sizes)
        return sweep(fam, sizes, cfg)

    t0 = time.perf_counter()
    A = read_set_file(args.set_file) if args.set_file else None
    if args.command != "incidence" and not A:
        raise InputError("the set file holds no elements")
    rep = Report(input={"set_file": args.set_file, "size": len(A) if A else 0})
    if args.command == "stats":
        rep.merge(compute_quantities(A, cfg))
    elif args.command == "energy":
        B = read_set_file(args.with_set) if args.with_set else A
        if args.op in ("sum", "prod"):
            # r_{A+B} is r_{A-(-B)}, r_{AB} is r_{A/B^{-1}}
            B2, op = (-B, "diff") if args.op == "sum" else (inverse_set(B), "quot")
            if args.op == "prod" and (A.has_zero or B.has_zero):
                raise InputError("product energy needs 0 outside both sets")
        else:
            B2, op = B, args.op
        hist = rep_histogram(A, B2, op)
        rep.quantities["op"] = args.op
        rep.quantities["moment"] = args.moment
        rep.quantities["energy"] = energy(A, B2, op, args.moment).value
        rep.quantities["support"] = len(hist.counts)
        rep.quantities["max_count"] = hist.max()
        rep.quantities["histogram"] = {str(k) if k.denominator > 1 else str(k.numerator): v
                                       for k, v in sorted(hist.counts.items())}
        rep.exact_checks.append(eq_check("mass", hist.total(), len(A) * len(B)))
    elif args.command == "decompose":
        extra = {"count_solutions": True, "sols_cap": cfg.cap_sols} if args.mode == "fourth" else {}
        cert = decompose(A, args.mode, cfg.pool, **extra)
        revalidate(cert)
        rep.certificates.append(cert)
        rep.exact_checks += cert.all_checks()
        rep.soft_checks += cert.soft_checks
        rep.quantities.update({f"{args.mode}_{k}": v for k, v in cert.bounds.items()})
        rep.quantities["pieces"] = cert.K
    elif args.command == "verify":
        res = verify_suite(A, cfg)
        rep.merge(res)
        rep.meta.update(res.meta)
    elif args.command == "incidence":
        if args.kind == "random":
            cfg_ = random_config(args.points, args.lines, cfg.seed, cap=cfg.cap_incidence)
        elif A is None:
            raise InputError(f"--set is required for the {args.kind} configuration")
        elif args.kind == "elekes":
            cfg_ = elekes_config(A, cfg.cap_incidence)
        else:
            B = FiniteSet([A.elements[0]]) if not A.has_zero else FiniteSet([1])
            w = product_witness(A, B, "D_times")
            validate_D_witness(A, w)
            cfg_ = dstar_config(w.Q, w.R, A, A, args.tau, w.t, cfg.cap_incidence)
        rep.quantities.update({k: v for k, v in cfg_.to_dict().items() if k != "checks"})
        rep.exact_checks += cfg_.checks
    rep.meta = {**rep.meta, **_meta(cfg, t0)}
    return rep


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        result = run(args)
    except SumProdError as exc:
        print(f"sumprod: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"sumprod: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if isinstance(result, str):
        _write(result, args.out)
        return EXIT_OK
    _write(emit_report(result, args.format), args.out)
    if not result.passed:
        for c in result.failures():
            print(f"sumprod: exact check failed: {c.name}: {c.lhs} {c.relation} {c.rhs}",
                  file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
