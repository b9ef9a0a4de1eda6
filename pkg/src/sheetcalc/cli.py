"""Command-line front end: build algebras, run per-theorem verification suites.

Exit codes: 0 all requested checks pass, 1 a verified statement failed,
2 usage/configuration errors.  Reports stream as human-readable lines or,
with --json, as one canonical JSON document (sorted keys, compact
separators) that re-serializes byte-identically after parsing.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from . import borelideals, chevalley, exterior, gammamap, identities, invariants
from .errors import BudgetError, ConfigurationError
from .polyring import PolyRing, is_harmonic
from .rootdata import DEFAULT_MAX_RANK, build_root_system, parse_cartan_type

THEOREMS = ("al1", "al2", "al3", "sheets", "gamma", "minors", "harmonic",
            "ideals", "casimir-wedge", "all")

#: identity degrees above this are skipped inside `verify all` (k! blow-up)
AUTO_DEGREE_LIMIT = 8


@dataclass
class VerificationReport:
    version: str
    cartan_type: str
    theorem: str
    status: str  # pass | fail | skipped
    counts: dict
    seconds: float
    seed: int
    detail: str = ""

    def to_json(self):
        return {
            "version": self.version,
            "type": self.cartan_type,
            "theorem": self.theorem,
            "status": self.status,
            "counts": self.counts,
            "seconds": round(self.seconds, 3),
            "seed": self.seed,
            "detail": self.detail,
        }

    def line(self) -> str:
        tag = {"pass": "PASS", "fail": "FAIL", "skipped": "SKIP"}[self.status]
        parts = ["[%s] %s %s" % (tag, self.theorem, self.cartan_type)]
        if self.detail:
            parts.append(self.detail)
        summary = ", ".join("%s=%s" % (k, v) for k, v in sorted(self.counts.items()))
        if summary:
            parts.append("(%s)" % summary)
        parts.append("%.2fs" % self.seconds)
        return " ".join(parts)


class _Context:
    """Built objects for one Cartan type, shared across suites in a run."""

    def __init__(self, type_str: str, max_rank: int, low_rank_d: bool):
        self.type_str = type_str
        t = parse_cartan_type(type_str)
        self.rootsys = build_root_system(t, allow_low_rank_d=low_rank_d,
                                         max_rank=max_rank)
        self.algebra = chevalley.build_lie_algebra(self.rootsys)

    @property
    def name(self) -> str:
        return str(self.rootsys.cartan_type)


def _report(ctx, theorem, seed, started, status, counts, detail=""):
    clean = {}
    for k, v in counts.items():
        if isinstance(v, Fraction):
            v = str(v)
        clean[k] = v
    return VerificationReport(version=__version__, cartan_type=ctx.name,
                              theorem=theorem, status=status, counts=clean,
                              seconds=time.perf_counter() - started, seed=seed,
                              detail=detail)


def _defining_dimension(ctx) -> int:
    fam = ctx.rootsys.cartan_type.family
    l = ctx.rootsys.rank
    return {"A": l + 1, "B": 2 * l + 1, "C": 2 * l, "D": 2 * l}[fam]


# ---------------------------------------------------------------------------
# theorem suites


def run_al1(ctx, trials, seed, lenient=False):
    """Degree-2N standard identity on the full matrix algebra M(N)."""
    started = time.perf_counter()
    n = _defining_dimension(ctx)
    if lenient and 2 * n > AUTO_DEGREE_LIMIT:
        return _report(ctx, "al1", seed, started, "skipped", {"degree": 2 * n},
                       "degree %d identity exceeds the auto budget" % (2 * n,))
    case = identities.check_full_matrix_identity(n, trials, seed)
    status = "pass" if case.passed else "fail"
    return _report(ctx, "al1", seed, started, status, {
        "matrix_size": n, "degree": case.degree, "trials": case.trials,
        "exhaustive_unit_tuples": case.exhaustive_tuples,
        "failures": case.failures,
        "lower_degree_witness_found": case.lower_degree_nonzero,
    })


def run_al2(ctx, trials, seed, lenient=False):
    """Degree-(2N-2) identity on skew-symmetric matrices (so(N), N even)."""
    started = time.perf_counter()
    fam = ctx.rootsys.cartan_type.family
    if fam != "D":
        return _report(ctx, "al2", seed, started, "skipped", {},
                       "the skew identity concerns so(2l); pick a D type")
    n = 2 * ctx.rootsys.rank
    if lenient and 2 * n - 2 > AUTO_DEGREE_LIMIT:
        return _report(ctx, "al2", seed, started, "skipped", {"degree": 2 * n - 2},
                       "degree %d identity exceeds the auto budget" % (2 * n - 2,))
    case = identities.check_skew_identity(n, trials, seed)
    status = "pass" if case.passed else "fail"
    return _report(ctx, "al2", seed, started, status, {
        "matrix_size": n, "degree": case.degree, "trials": case.trials,
        "failures": case.failures,
    })


def run_al3(ctx, trials, seed, lenient=False):
    """Degree-2*epsilon identity on defining-representation images."""
    started = time.perf_counter()
    rep = invariants.defining_rep(ctx.algebra)
    eps = identities.epsilon(rep)
    if lenient and 2 * eps > AUTO_DEGREE_LIMIT:
        return _report(ctx, "al3", seed, started, "skipped",
                       {"epsilon": eps, "degree": 2 * eps},
                       "degree %d identity exceeds the auto budget" % (2 * eps,))
    case = identities.check_rep_identity(ctx.algebra, rep, trials, seed)
    status = "pass" if case.passed else "fail"
    return _report(ctx, "al3", seed, started, status, {
        "epsilon": eps, "degree": case.degree, "trials": case.trials,
        "failures": case.failures,
        "lower_degree_witness_found": case.lower_degree_nonzero,
    })


def _stratified_samples(g, per_stratum, seed):
    samples = []
    unreachable = []
    partial = []
    for two_j in range(0, 2 * g.r + 1, 2):
        batch = chevalley.sample_elements(g, two_j, per_stratum, seed)
        samples.extend(batch.elements)
        if not batch.elements:
            unreachable.append(two_j)
        elif not batch.complete:
            partial.append(two_j)
    return samples, unreachable, partial


def run_sheets(ctx, trials, seed, lenient=False):
    """Vanishing locus of every R^k plus coboundary-power profiles on samples."""
    started = time.perf_counter()
    g = ctx.algebra
    per_stratum = max(trials, 20)
    samples, unreachable, partial = _stratified_samples(g, per_stratum, seed)
    profile_failures = 0
    for x in samples:
        prof = exterior.dx_power_profile(x)
        if not (prof.matches_orbit and prof.witness_spans_bracket_image):
            profile_failures += 1
    violations = 0
    for k in range(1, g.r + 1):
        report = gammamap.variety_check(g, k, samples)
        violations += len(report.violations)
    status = "pass" if not (violations or profile_failures) else "fail"
    return _report(ctx, "sheets", seed, started, status, {
        "samples": len(samples), "per_stratum": per_stratum,
        "unreachable_strata": unreachable, "partial_strata": partial,
        "k_range": g.r, "variety_violations": violations,
        "profile_failures": profile_failures,
    })


def run_gamma(ctx, trials, seed, lenient=False):
    """Matching combinatorics, transpose duality, and the coboundary identity."""
    started = time.perf_counter()
    g = ctx.algebra
    ring = PolyRing.for_algebra(g)
    rng = random.Random("gamma:%s:%d" % (ctx.name, seed))
    counts = {}
    failures = []

    limit = 8
    for k in range(limit + 1):
        expected = math.prod(range(2 * k - 1, 0, -2)) if k else 1
        got = (len(gammamap.enumerate_matchings(k)) if k <= 6
               else sum(1 for _ in gammamap.iter_matchings(k)))
        if got != expected:
            failures.append("matching count k=%d" % k)
    counts["matching_k_max"] = limit

    # transpose duality on random monomial/wedge pairs
    pairs = 0
    kmax = min(g.r, 3)
    for _ in range(trials * 4):
        k = rng.randint(1, kmax)
        if 2 * k > g.n:
            continue
        mono = [0] * g.n
        for _ in range(k):
            mono[rng.randrange(g.n)] += 1
        p = ring.monomial(mono, 1)
        combo = sorted(rng.sample(range(g.n), 2 * k))
        u = exterior.basis_wedge(g, combo)
        lhs = exterior.ext_pairing(exterior.gamma_hom(g, p), u)
        rhs = ring.pairing(p, gammamap.gamma_map_basis(g, combo))
        pairs += 1
        if lhs != rhs:
            failures.append("duality pair #%d" % pairs)
    counts["duality_pairs"] = pairs

    # gamma on powers of linear forms lands on powers of coboundaries
    power_checks = 0
    for i in range(trials):
        support = rng.sample(range(g.n), min(g.n, rng.randint(2, 4)))
        coords = [0] * g.n
        for s in support:
            coords[s] = rng.randint(-4, 4)
        x = g.element(coords)
        fx = ring.linear_form(x)
        dx = exterior.coboundary(x)
        for k in range(1, min(g.r, 4) + 1):
            power_checks += 1
            if exterior.gamma_hom(g, fx ** k) != ((-1) * dx).wedge_power(k):
                failures.append("power identity trial %d k=%d" % (i, k))
    counts["power_checks"] = power_checks

    # the homomorphism kills the invariant generators
    gens = invariants.chevalley_generators(g)
    kills = sum(1 for p in gens.polys if exterior.gamma_hom(g, p).is_zero())
    counts["generators_killed"] = kills
    if kills != len(gens.polys):
        failures.append("gamma(generator) != 0")

    status = "pass" if not failures else "fail"
    return _report(ctx, "gamma", seed, started, status, counts,
                   "; ".join(failures[:3]))


def run_minors(ctx, trials, seed, lenient=False):
    """The two constructions of the top harmonic space agree exactly."""
    started = time.perf_counter()
    g = ctx.algebra
    gens = invariants.chevalley_generators(g)
    q = invariants.q_matrix(g, gens)
    minors = invariants.minors_space(q)
    rk = gammamap.rk_space(g, g.r)
    equal = minors == rk
    # rank face: Q drops rank exactly on singular elements
    rank_ok = True
    samples, _, _ = _stratified_samples(g, max(trials // 4, 5), seed)
    from . import linalg
    for x in samples:
        numeric = q.evaluate(x.coords)
        full = chevalley.orbit_dim(x) == 2 * g.r
        if (linalg.rank(numeric) == g.rank) != full:
            rank_ok = False
    status = "pass" if (equal and rank_ok) else "fail"
    return _report(ctx, "minors", seed, started, status, {
        "minor_count": math.comb(g.n, g.rank),
        "minors_dim": minors.dim, "rk_dim": rk.dim,
        "spans_equal": equal, "rank_face_ok": rank_ok,
        "samples": len(samples),
    })


def run_harmonic(ctx, trials, seed, lenient=False):
    """Every computed harmonic-space basis element is annihilated exactly."""
    started = time.perf_counter()
    g = ctx.algebra
    gens = invariants.chevalley_generators(g)
    q = invariants.q_matrix(g, gens)
    bad = 0
    checked = 0
    for k in range(1, g.r + 1):
        for p in gammamap.rk_space(g, k).basis:
            checked += 1
            if not is_harmonic(p, gens.polys):
                bad += 1
    entry_checked = 0
    for row in q.entries:
        for p in row:
            if p.is_zero():
                continue
            entry_checked += 1
            if not is_harmonic(p, gens.polys):
                bad += 1
    status = "pass" if not bad else "fail"
    return _report(ctx, "harmonic", seed, started, status, {
        "rk_basis_polys": checked, "q_entries": entry_checked, "failures": bad,
    })


def run_ideals(ctx, trials, seed, lenient=False):
    """Abelian ideals, weights, Casimir values, and the type-A partition count."""
    started = time.perf_counter()
    rs, g = ctx.rootsys, ctx.algebra
    rep = borelideals.verify_ideal_theorems(rs, g)
    counts = {
        "ideals": rep.ideal_count,
        "all_abelian": rep.all_abelian,
        "weights_distinct": rep.weights_distinct,
        "weights_dominant": rep.weights_dominant,
        "casimir_values_equal_rank": rep.eigenvalues_equal_rank,
    }
    if rep.partition_number is not None:
        counts["partition_number"] = rep.partition_number
        counts["partition_match"] = rep.partition_match
    ok = rep.passed
    if math.comb(rs.r, rs.rank) <= 100000:
        oracle = borelideals.enumerate_ideals_brute_force(rs, rs.rank)
        counts["oracle_match"] = oracle == borelideals.enumerate_ideals(rs, rs.rank)
        ok = ok and counts["oracle_match"]
    if g.r <= 4:
        bridge = borelideals.rk_dimension_bridge(g)
        counts["rk_dim"] = bridge["rk_dim"]
        counts["weyl_total"] = bridge["weyl_total"]
        counts["dimension_bridge"] = bridge["match"]
        ok = ok and bridge["match"]
    return _report(ctx, "ideals", seed, started, "pass" if ok else "fail", counts)


def run_casimir_wedge(ctx, trials, seed, lenient=False, k_values=None):
    """Exact top-eigenspace structure of the Casimir on wedge powers."""
    started = time.perf_counter()
    rs, g = ctx.rootsys, ctx.algebra
    if k_values is None:
        k_values = list(range(1, rs.rank + 2))
    counts = {"k_values": list(k_values)}
    failures = []
    skipped = []
    for k in k_values:
        if k > g.n:
            continue
        try:
            _, rep = borelideals.casimir_on_wedge(g, k)
        except BudgetError:
            skipped.append(k)
            continue
        expected = 0
        if k <= rs.r:
            for ideal in borelideals.enumerate_ideals(rs, k):
                if ideal.abelian:
                    expected += borelideals.weyl_dim(rs, ideal.weight)
        counts["k%d_dim" % k] = rep.dim
        counts["k%d_multiplicity" % k] = rep.eigenvalue_multiplicity
        counts["k%d_expected" % k] = expected
        if rep.eigenvalue_multiplicity != expected:
            failures.append("k=%d multiplicity" % k)
        if not rep.ideal_vectors_in_eigenspace:
            failures.append("k=%d ideal vectors" % k)
        if not rep.float_bound_ok:
            failures.append("k=%d float bound" % k)
    if skipped:
        counts["budget_skipped_k"] = skipped
    status = "pass" if not failures else "fail"
    return _report(ctx, "casimir-wedge", seed, started, status, counts,
                   "; ".join(failures[:3]))


def run_structure(ctx, trials, seed, lenient=False):
    """Exhaustive Jacobi / invariance / homomorphism checks for the built algebra."""
    started = time.perf_counter()
    g = ctx.algebra
    rep = chevalley.verify_structure(g)
    counts = dict(rep.checks)
    hom_pairs = invariants.defining_rep(g).verify_homomorphism()
    counts["defining_rep_pairs"] = hom_pairs
    status = "pass" if rep.passed else "fail"
    return _report(ctx, "structure", seed, started, status, counts,
                   "; ".join(rep.failures[:3]))


_SUITES = {
    "al1": run_al1,
    "al2": run_al2,
    "al3": run_al3,
    "sheets": run_sheets,
    "gamma": run_gamma,
    "minors": run_minors,
    "harmonic": run_harmonic,
    "ideals": run_ideals,
    "casimir-wedge": run_casimir_wedge,
    "structure": run_structure,
}

_ALL_ORDER = ("structure", "al1", "al2", "al3", "gamma", "sheets",
              "minors", "harmonic", "ideals", "casimir-wedge")


# ---------------------------------------------------------------------------
# wiring


def _emit(reports, as_json: bool, stream=None):
    stream = stream or sys.stdout
    if as_json:
        doc = [r.to_json() for r in reports]
        stream.write(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        for r in reports:
            stream.write(r.line() + "\n")


def _max_rank_from_env() -> int:
    raw = os.environ.get("SHEETCALC_MAX_RANK")
    if raw is None:
        return DEFAULT_MAX_RANK
    try:
        return int(raw)
    except ValueError:
        raise ConfigurationError("SHEETCALC_MAX_RANK must be an integer, got %r" % raw)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sheetcalc",
        description="Exact verification of standard identities, sheet equations, "
                    "and Casimir spectra for classical simple Lie algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_info = sub.add_parser("info", help="dimensions, exponents, root counts")
    p_info.add_argument("type")
    p_info.add_argument("--json", action="store_true")
    p_info.add_argument("--low-rank-d", action="store_true",
                        help="allow the D2/D3 aliases")

    p_verify = sub.add_parser("verify", help="run a theorem verification suite")
    p_verify.add_argument("theorem", choices=THEOREMS)
    p_verify.add_argument("--type", required=True)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--trials", type=int, default=50)
    p_verify.add_argument("--k", type=int, default=None,
                          help="wedge degree for casimir-wedge")
    p_verify.add_argument("--json", action="store_true")
    p_verify.add_argument("--low-rank-d", action="store_true")

    p_rk = sub.add_parser("rk", help="dimension (and optional basis) of R^k")
    p_rk.add_argument("--type", required=True)
    p_rk.add_argument("--k", type=int, required=True)
    p_rk.add_argument("--dump", action="store_true")
    p_rk.add_argument("--json", action="store_true")
    p_rk.add_argument("--low-rank-d", action="store_true")

    p_ideals = sub.add_parser("ideals", help="list upward-closed root subsets")
    p_ideals.add_argument("--type", required=True)
    p_ideals.add_argument("--size", type=int, required=True)
    p_ideals.add_argument("--json", action="store_true")
    p_ideals.add_argument("--low-rank-d", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        max_rank = _max_rank_from_env()
        if args.command == "info":
            ctx = _Context(args.type, max_rank, args.low_rank_d)
            payload = ctx.rootsys.describe()
            payload["killing_rank"] = ctx.algebra.n
            payload["basis"] = ctx.algebra.labels
            if args.json:
                print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
            else:
                print("type %s: dim %d, rank %d, positive roots %d" % (
                    payload["type"], payload["dimension"], payload["rank"],
                    payload["positive_roots"]))
                print("exponents: %s" % (payload["exponents"],))
            return 0

        if args.command == "verify":
            ctx = _Context(args.type, max_rank, args.low_rank_d)
            reports = []
            if args.theorem == "all":
                for name in _ALL_ORDER:
                    reports.append(_SUITES[name](ctx, args.trials, args.seed,
                                                 lenient=True))
            elif args.theorem == "casimir-wedge":
                ks = [args.k] if args.k is not None else None
                reports.append(run_casimir_wedge(ctx, args.trials, args.seed,
                                                 k_values=ks))
            else:
                reports.append(_SUITES[args.theorem](ctx, args.trials, args.seed))
            _emit(reports, args.json)
            return 1 if any(r.status == "fail" for r in reports) else 0

        if args.command == "rk":
            ctx = _Context(args.type, max_rank, args.low_rank_d)
            space = gammamap.rk_space(ctx.algebra, args.k)
            if args.json:
                payload = {"type": ctx.name, "k": args.k, "dim": space.dim}
                if args.dump:
                    payload["basis"] = [p.to_json() for p in space.basis]
                print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
            else:
                print("dim %d" % space.dim)
                if args.dump:
                    for p in space.basis:
                        print(p.text())
            return 0

        if args.command == "ideals":
            ctx = _Context(args.type, max_rank, args.low_rank_d)
            ideals = borelideals.enumerate_ideals(ctx.rootsys, args.size)
            if args.json:
                payload = {"type": ctx.name, "size": args.size,
                           "count": len(ideals),
                           "ideals": [i.to_json(ctx.rootsys) for i in ideals]}
                print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
            else:
                print("%d ideals of size %d in %s" % (len(ideals), args.size, ctx.name))
                for ideal in ideals:
                    roots = " ".join(str(ctx.rootsys.positive_roots[i])
                                     for i in ideal.root_indices)
                    print("  {%s} weight %s abelian=%s" % (
                        roots, ideal.weight, ideal.abelian))
            return 0
    except (ConfigurationError, BudgetError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    parser.error("unknown command")
    return 2


if __name__ == "__main__":
    sys.exit(main())
