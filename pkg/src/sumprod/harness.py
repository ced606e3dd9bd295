"""Quantity tables, the exact-check suite and family sweeps."""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__, _kernels
from .config import HarnessConfig
from .core_sets import FiniteSet, combine, read_set_file
from .decompose import SOLS_CAP, decompose, revalidate, union_triangle_check
from .energy import (count_linear_solutions, katz_koester_all, popular_spectrum,
                     rep_multiplicities, sigma_sup)
from .errors import DomainError, ResourceLimitError
from .families import FamilySpec, generate
from .incidence import dstar_config, elekes_config, random_config
from .report import (THIRD_MOMENT_BOUNDS, ExactCheck, Report, SoftCheck, eq_check, le_check,
                     soft)
from .structure_stats import (chebyshev_tail, d_lower, key_inequality_probe, product_witness,
                              sigma_bound_check, validate_D_witness, witness_monotonicity)

parse_set_file = read_set_file

VERIFY_SIGMA_GRID = 8**3


def _size(A, B, op):
    return len(_kernels.distinct_values(A, B, op))


def _expander_size(A, S, cap):
    if len(A) * len(S) > cap:
        raise ResourceLimitError(f"expander product needs {len(A) * len(S)} pairs; cap {cap}")
    return _size(A, S, "prod")


def compute_quantities(A: FiniteSet, config: HarnessConfig = HarnessConfig()) -> Report:
    """Exact set sizes, energies and expander sizes, with soft ratios against the reference table."""
    if not A:
        raise DomainError("quantities of the empty set")
    if A.has_zero:
        raise DomainError("0 in A: multiplicative quantities (A/A, Ex) are undefined")
    n = len(A)
    rep = Report()
    q = rep.quantities
    q["size"] = n
    q["sum_set"] = _size(A, A, "sum")
    q["difference_set"] = _size(A, A, "diff")
    q["product_set"] = _size(A, A, "prod")
    q["quotient_set"] = _size(A, A, "quot")
    q["additive_energy"] = _kernels.moment(rep_multiplicities(A, A, "diff"), 2)
    q["multiplicative_energy"] = _kernels.moment(rep_multiplicities(A, A, "quot"), 2)

    skipped = {}
    try:
        q["product_of_sum_set"] = _expander_size(A, combine(A, A, "sum"), config.cap_expander)
        q["product_of_difference_set"] = _expander_size(A, combine(A, A, "diff"),
                                                        config.cap_expander)
    except ResourceLimitError as exc:
        skipped["expanders"] = str(exc)
    if n * n <= config.cap_expander:
        best_plus, best_b = -1, None
        best_minus = -1
        for a in A:
            s = _size(A, FiniteSet._trusted(tuple(x + a for x in A)), "prod")
            if s > best_plus:
                best_plus, best_b = s, a
            best_minus = max(best_minus, _size(A, FiniteSet._trusted(tuple(x - a for x in A)),
                                               "prod"))
        q["max_shift_product_plus"] = best_plus
        q["max_shift_product_minus"] = best_minus
        q["max_shift_argmax"] = best_b
        q["single_shift_ratio"] = Fraction(n**6, best_plus**2 * q["multiplicative_energy"])
    else:
        skipped["shifts"] = f"n^2 = {n * n} exceeds cap {config.cap_expander}"
    if skipped:
        rep.meta["skipped"] = skipped

    ss, ds, ps, qs = q["sum_set"], q["difference_set"], q["product_set"], q["quotient_set"]
    rep.soft_checks += [
        soft("sum_plus_product", ss + ps, n, "sum_product"),
        soft("four_sets", ss + ds + ps + qs, n, "four_set_sum_product"),
        soft("difference_plus_quotient", ds + qs, n, "difference_quotient"),
        soft("difference_plus_product", ds + ps, n, "difference_product"),
        soft("difference_times_quotient", ds * qs, n, "difference_times_quotient"),
        soft("difference_product_powers", ds**35 * ps**37, n, "difference_product_powers"),
        soft("sum_times_product", ss * ps, n, "elekes"),
    ]
    if "product_of_difference_set" in q:
        rep.soft_checks += [
            soft("expander_difference", q["product_of_difference_set"], n,
                 "expander_times_difference"),
            soft("expander_sum", q["product_of_sum_set"], n, "expander_times_sum"),
        ]
    if "max_shift_product_plus" in q:
        rep.soft_checks += [
            soft("expander_single_shift",
                 max(q["max_shift_product_plus"], q["max_shift_product_minus"]), n,
                 "expander_single_shift"),
            soft("single_shift_energy", q["single_shift_ratio"], n, "single_shift_energy"),
        ]
    return rep


def third_moment_soft_checks(A: FiniteSet, quantities: dict, d_plus_lower: Fraction) -> list:
    """Ratios for the sumset/difference/energy bounds in terms of the d+ pool bound.

    Each bound ``X <~ n^e d^f`` (or ``>~``) with ``e = u/k``, ``f = v/k`` is
    reported as ``X^k d^(-v)`` against ``n^u`` to keep the quantity rational.
    """
    out = []
    n = len(A)
    for key, value in (("sumset", quantities["sum_set"]),
                       ("difference_set", quantities["difference_set"]),
                       ("energy", quantities["additive_energy"])):
        e, f = THIRD_MOMENT_BOUNDS[key]
        k = e.denominator
        qty = Fraction(value) ** k * d_plus_lower ** (-f * k)
        out.append(SoftCheck(f"third_moment_{key}", qty, n,
                             f"{key}^{k} * d+^{-f * k} vs n^{e * k}", e * k))
    return out


# -- exact-check suite --------------------------------------------------------

def _halves(A):
    el = A.elements
    return FiniteSet._trusted(el[: max(1, len(el) // 2)]), FiniteSet._trusted(el[1::2] or el)


def _parts(A, k):
    el = A.elements
    return [FiniteSet._trusted(el[i::k]) for i in range(k) if el[i::k]]


def verify_suite(A: FiniteSet, config: HarnessConfig = HarnessConfig()) -> Report:
    """Run every registered exact check on ``A``.

    Multiplicative checks run on ``A`` with 0 removed.  Checks whose inputs
    exceed a cap are listed under ``meta.skipped``.
    """
    if not A:
        raise DomainError("verify needs a nonempty set")
    rep = Report()
    chk = rep.exact_checks
    skipped = {}
    n = len(A)
    M = A.without_zero()
    H1, H2 = _halves(A)

    # mass, Cauchy-Schwarz and moment chains
    r = rep_multiplicities(A, A, "diff")
    e2, e3 = _kernels.moment(r, 2), _kernels.moment(r, 3)
    ss = _size(A, A, "sum")
    chk += [
        eq_check("mass_diff", sum(r), n * n),
        le_check("cauchy_schwarz_sumset", n**4, ss * e2),
        le_check("cauchy_schwarz_third_moment", e2 * e2, e3 * n * n),
    ]
    for B in (A, H1):
        chk += witness_monotonicity(A, B, "diff")
        for tau in range(1, max(rep_multiplicities(A, B, "diff")) + 1):
            tail, bound = chebyshev_tail(A, B, "diff", tau)
            chk.append(le_check(f"chebyshev_tail_diff[{tau}]", tail, bound))
    if M:
        m1, m2 = _halves(M)
        em = _kernels.moment(rep_multiplicities(M, M, "quot"), 2)
        chk.append(eq_check("mass_quot", sum(rep_multiplicities(M, M, "quot")), len(M) ** 2))
        for B in (m1, m2):
            cross = _kernels.moment(rep_multiplicities(M, B, "quot"), 2)
            eb = _kernels.moment(rep_multiplicities(B, B, "quot"), 2)
            chk.append(le_check("cross_energy_cauchy_schwarz", cross * cross, em * eb))
            chk += witness_monotonicity(M, B, "quot")
        for tau in range(1, max(rep_multiplicities(M, M, "quot")) + 1):
            tail, bound = chebyshev_tail(M, M, "quot", tau)
            chk.append(le_check(f"chebyshev_tail_quot[{tau}]", tail, bound))

    # union inequalities
    for k in (2, 3, 4):
        parts = _parts(A, k)
        if len(parts) < 2:
            continue
        chk.append(union_triangle_check(parts, A, "l3_diff").to_check())
        if M and len(M) >= 2:
            mparts = _parts(M, k)
            chk.append(union_triangle_check(mparts, M, "l3_quot").to_check())
            chk.append(union_triangle_check(mparts, None, "l4_mult_energy").to_check())

    # d statistics and covering witnesses
    for kind in ("d_plus", "d4_plus"):
        lb = d_lower(A, kind, config.pool)
        chk.append(ExactCheck(f"{kind}_range", 1 <= lb.value <= n, lb.value, n, "in [1, n]"))
        chk.append(eq_check(f"{kind}_recompute", lb.recompute(), lb.value))
    if M:
        lb = d_lower(M, "d_times", config.pool)
        chk.append(ExactCheck("d_times_range", 1 <= lb.value <= len(M), lb.value, len(M),
                              "in [1, n]"))
        for B in (FiniteSet([1]), M):
            w = product_witness(M, B, "D_times")
            v = validate_D_witness(M, w)
            chk.append(eq_check("D_times_product_witness", v * len(M) * w.t**3,
                                len(w.Q) ** 2 * len(w.R) ** 2))
        rep.merge(key_inequality_probe(M, config.pool), prefix="probe_")
        spec = popular_spectrum(M)
        chk.append(ExactCheck("popular_spectrum_pigeonhole", spec.guarantee_holds,
                              spec.best_mass, spec.energy, ">= E / (4 #levels)"))
        if len(M) <= config.cap_katz_koester:
            bad = katz_koester_all(M)
            chk.append(eq_check("katz_koester_all_lambda", len(bad), 0))
        else:
            skipped["katz_koester"] = f"|A| = {len(M)} > {config.cap_katz_koester}"

    # sigma on a truncation with at most min(cap, 8^3) grid points
    k = 1
    while (k + 1) ** 3 <= min(config.cap_sigma, VERIFY_SIGMA_GRID) and k < n:
        k += 1
    T = FiniteSet._trusted(A.elements[:k])
    sw = sigma_sup(T, T, T, config.cap_sigma)
    chk.append(le_check("sigma_trivial_bound", sw.count, len(T) ** 2))
    chk.append(eq_check("sigma_recount",
                        count_linear_solutions(T, T, T, sw.sigma1, sw.sigma2, sw.sigma3),
                        sw.count))
    hb = sigma_bound_check(T, T, T, sw.sigma2, sw.sigma3, config.cap_sigma)
    chk.append(le_check("sigma_hoelder", hb.lhs, hb.rhs))

    # incidences
    try:
        if M:
            chk += elekes_config(M, config.cap_incidence).checks
            b = M.elements[0]
            Bs = FiniteSet([b])
            chk += dstar_config(combine(M, Bs, "prod"), Bs, A, M, 1, 1,
                                config.cap_incidence).checks
        chk += random_config(min(n, 200), min(n, 200), config.seed, cap=config.cap_incidence).checks
    except ResourceLimitError as exc:
        skipped["incidence"] = str(exc)

    # decompositions with full revalidation
    if M:
        for mode in ("main", "partition", "fourth"):
            cert = decompose(M, mode, config.pool, diagnostics=False)
            revalidate(cert)
            chk += cert.all_checks()
            rep.certificates.append(cert)

    rep.input = {"size": n}
    if skipped:
        rep.meta["skipped"] = skipped
    return rep


# -- sweeps ------------------------------------------------------------------

def _sweep_point(args):
    spec, config = args
    label = f"{spec.kind}-{spec.n if spec.n is not None else spec.S * spec.P}"
    t0 = time.perf_counter()
    out = {"label": label, "quantities": {}, "soft": [], "skipped": None}
    try:
        A = generate(spec).without_zero()
        rep = compute_quantities(A, config)
        lb = d_lower(A, "d_plus", config.pool)
        rep.quantities["d_plus_lower"] = lb.value
        rep.soft_checks += third_moment_soft_checks(A, rep.quantities, lb.value)
        for mode in ("main", "partition", "fourth"):
            cert = decompose(A, mode, config.pool)
            rep.quantities[f"{mode}_pieces"] = cert.K
            for key, val in cert.bounds.items():
                if not isinstance(val, list):
                    rep.quantities[f"{mode}_{key}"] = val
            rep.soft_checks += cert.soft_checks
        out["quantities"] = rep.quantities
        out["soft"] = rep.soft_checks
        out["skipped_items"] = rep.meta.get("skipped")
    except ResourceLimitError as exc:
        out["skipped"] = str(exc)
    out["seconds"] = time.perf_counter() - t0
    return out


def sweep(family: FamilySpec, sizes, config: HarnessConfig = HarnessConfig()) -> Report:
    """Quantities, decompositions and soft ratios for ``family`` at each size, in size order."""
    sizes = sorted(set(int(n) for n in sizes))
    if not sizes:
        raise DomainError("sweep needs at least one size")
    if family.kind == "random_subset":
        family = FamilySpec(**{**family.__dict__, "seed": config.seed})
    specs = [family.with_size(n) for n in sizes]
    for s in specs:
        generate(s)  # parameter validation before any work
    jobs = [(s, config) for s in specs]
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as ex:
            results = list(ex.map(_sweep_point, jobs))
    else:
        results = [_sweep_point(j) for j in jobs]
    rep = Report()
    rep.input = {"family": family.to_dict(), "sizes": sizes, "seed": config.seed}
    timings = {}
    for res in results:
        label = res["label"]
        timings[label] = round(res["seconds"], 6)
        if res["skipped"]:
            rep.quantities[f"{label}/skipped"] = res["skipped"]
            continue
        for k, v in res["quantities"].items():
            rep.quantities[f"{label}/{k}"] = v
        if res.get("skipped_items"):
            rep.quantities[f"{label}/skipped_items"] = res["skipped_items"]
        for sc in res["soft"]:
            sc.name = f"{label}/{sc.name}"
            rep.soft_checks.append(sc)
    rep.meta = {"version": __version__, "seed": config.seed, "pool": config.pool.to_dict(),
                "timings": timings}
    return rep
