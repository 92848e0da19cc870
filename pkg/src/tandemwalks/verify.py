"""The acceptance suite: one function per criterion, each returning measured values.

Suites group criteria: ``bijection`` (6-8), ``series`` (1-5, 10, 14),
``asymptotics`` (9, 11, 12) and ``sampler`` (13).  ``fast`` shrinks the
randomized parts (random walk count, sample sizes); the acceptance test
always runs the full parameters.
"""

from __future__ import annotations

import math
import time
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy.stats import chi2, chisquare

from . import closed_forms as cf
from . import genfuncs as gf
from .kmsw import phi, phi_inverse, rho_on_walks, sigma_on_walks
from .oracle import all_level_walks, count_halfplane_to_line, count_walks, exhaustive_walks
from .sampler import WindowedSampler, make_rng, sample_excursion_p1, walk_probability
from .steps import SE, Step, TandemWalk, WeightSpec, is_confined, parse_walk, trajectory, walk_stats
from .stochastics import (HarmonicFunction, StepDistribution, check_harmonicity, exit_identity,
                          limit_diagnostics)

# a 10-step walk with levels {1,1,1,2,2,3} and stats (3,2,1,2)
EXAMPLE_WALK = parse_walk(["SE", "SE", (1, 0), (1, 0), (1, 0), (2, 0), (0, 2), "SE", "SE", (1, 2)])

SERIES_SPECS = ((1, (0, 1)), (2, (0, 0, 1)), (2, (1, 1, 1)))
MIXED_P2 = StepDistribution(2, Fraction(5, 12), (Fraction(0), Fraction(1, 6), Fraction(1, 12)))


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    measured: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] criterion {self.number:2d}: {self.title} ({self.seconds:.1f}s)"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "seconds": round(self.seconds, 3), "measured": _jsonable(self.measured)}


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.floating, float)):
        return float(f"{float(v):.15g}")
    if isinstance(v, np.integer):
        return int(v)
    return v


def _spec(p: int, z) -> WeightSpec:
    return WeightSpec(p, tuple(Fraction(v) for v in z))


# ---------------------------------------------------------------------------
# series suite
# ---------------------------------------------------------------------------

def criterion_1(fast: bool = False) -> tuple[bool, dict]:
    dp = [count_walks(WeightSpec(n, (1,) * (n + 1)), (0, 0), (0, 0), n + 1) for n in range(1, 11)]
    formula = [cf.baxter_b(n) for n in range(1, 11)]
    rec = cf.baxter_recurrence(10)
    return dp == formula == rec, {"dp": dp, "formula": formula}


def criterion_2(fast: bool = False) -> tuple[bool, dict]:
    spec = _spec(1, (0, 1))
    dp = [count_walks(spec, (0, 0), (0, 0), 3 * k) for k in range(1, 6)]
    formula = [cf.tutte_a(k) for k in range(1, 6)]
    rec = cf.dangulation_sequence(1, 500)
    rec_ok = all(rec[k] == cf.tutte_a(k) for k in range(501))
    ok = dp == formula and formula[1] == 5 and rec_ok
    return ok, {"dp": dp, "formula": formula, "recurrence_matches_to_k": 500 if rec_ok else None}


def criterion_3(fast: bool = False) -> tuple[bool, dict]:
    bad, checked = [], 0
    for p, z in SERIES_SPECS:
        spec = _spec(p, z)
        for b in range(4):
            s = gf.q0b_x0(p, list(z), b, 10)
            for n in range(11):
                for c in range(n + 1):
                    checked += 1
                    if s[n].coeff({"x": c}) != count_walks(spec, (0, b), (c, 0), n):
                        bad.append((p, z, b, n, c))
    return not bad, {"checked": checked, "mismatches": bad[:10]}


def criterion_4(fast: bool = False) -> tuple[bool, dict]:
    bad, checked = [], 0
    for p, z in SERIES_SPECS:
        for b in range(3):
            s = gf.q0b_x0(p, list(z), b, 10)
            full = gf.q0b_constant_term(p, list(z), b, None, 10)
            for n in range(11):
                checked += 1
                if full[n] != s[n]:
                    bad.append(("x>=", p, z, b, n))
            for c in range(3):
                ct = gf.q0b_constant_term(p, list(z), b, c, 10)
                for n in range(11):
                    checked += 1
                    if ct[n].constant() != s[n].coeff({"x": c}):
                        bad.append(("x^c", p, z, b, c, n))
    tri = gf.tri_series(4)
    quad = gf.quad_series(6)
    a_k = [tri[3 * k] for k in range(5)]
    c_k = [quad[2 * k] for k in range(7)]
    tri_ok = a_k == [cf.tutte_a(k) for k in range(5)] and all(
        tri[m] == 0 for m in range(len(tri)) if m % 3)
    quad_ok = c_k == cf.dangulation_sequence(2, 6) and c_k[:3] == [1, 0, 1] and all(
        quad[m] == 0 for m in range(len(quad)) if m % 2)
    return not bad and tri_ok and quad_ok, {
        "checked": checked, "mismatches": bad[:10], "tri_a": a_k, "quad_c": c_k}


def criterion_5(fast: bool = False) -> tuple[bool, dict]:
    bad, checked = [], 0
    for p, z in SERIES_SPECS:
        spec = _spec(p, z)
        for a in range(4):
            for b in range(4):
                s = gf.a_i_and_q11(p, list(z), a, b, 10).scalars()
                h = gf.halfplane_gf(p, list(z), a, b, 10).scalars()
                for n in range(11):
                    checked += 2
                    if s[n] != count_walks(spec, (a, b), "any", n):
                        bad.append(("Q11", p, z, a, b, n))
                    if h[n] != count_halfplane_to_line(spec, b, a, n):
                        bad.append(("H", p, z, a, b, n))
    motzkin = gf.a_i_and_q11(1, [0, 1], 0, 0, 5).scalars()
    ok = not bad and motzkin == [1, 1, 2, 4, 9, 21]
    return ok, {"checked": checked, "mismatches": bad[:10], "motzkin": motzkin}


def criterion_10(fast: bool = False) -> tuple[bool, dict]:
    out, ok = {}, True
    for name, d in (("p1", StepDistribution.uniform_level(1)), ("p2", StepDistribution.uniform_level(2)),
                    ("p2_mixed", MIXED_P2)):
        res = gf.invariant_identity(d, 10)
        out[name] = len(res.terms)
        ok = ok and res.is_zero()
    return ok, {"nonzero_residual_terms": out}


def criterion_14(fast: bool = False) -> tuple[bool, dict]:
    choices = {
        "motzkin_like": {-1: 1, 1: 1},
        "mixed": {-1: 1, 0: 1, 2: Fraction(1, 2)},
        "tandem_p2_with_x": gf.tandem_1d_weights(2, [1, 1, 1], True),
    }
    out = {k: gf.oneD_identities(w, 12) for k, w in choices.items()}
    return all(r["ok"] for r in out.values()), {k: r["mismatches"][:5] for k, r in out.items()}


# ---------------------------------------------------------------------------
# bijection suite
# ---------------------------------------------------------------------------

def bijection_test_set(fast: bool = False) -> list[TandemWalk]:
    """Origin-quadrant walks of length <= 6 and all walks of length <= 4, levels <= 3."""
    spec = WeightSpec(3, (1, 1, 1, 1))
    seen = set()
    out = []
    for n in range(7):
        for w in exhaustive_walks(spec, n, (0, 0), "quadrant"):
            seen.add(w.steps)
            out.append(w)
    for n in range(5 if not fast else 4):
        for w in exhaustive_walks(spec, n, (0, 0), "none"):
            if w.steps not in seen:
                out.append(w)
    return out


def random_walks(count: int, length: int, max_level: int, seed: int) -> list[TandemWalk]:
    steps = [SE] + [Step(r - j, j) for r in range(max_level + 1) for j in range(r + 1)]
    rng = make_rng(seed)
    idx = rng.integers(0, len(steps), size=(count, length))
    return [TandemWalk(steps[k] for k in row) for row in idx.tolist()]


def dictionary_failures(w: TandemWalk) -> list[str]:
    """Statistic dictionary and round trip of the bijection for one walk."""
    fails = []
    O = phi(w)
    if not O.validate():
        fails.append("validate")
        return fails
    if phi_inverse(O) != w:
        fails.append("round_trip")
    if O.n_plain_edges() != len(w) + 1:
        fails.append("plain_edges")
    if len(O.plain_vertices()) != w.n_se():
        fails.append("plain_vertices")
    census, _ = O.face_census()
    if census != dict(Counter(r + 2 for r in w.levels())):
        fails.append("face_degrees")
    if O.signature().as_tuple() != walk_stats(w).as_tuple():
        fails.append("signature")
    return fails


def criterion_6(fast: bool = False) -> tuple[bool, dict]:
    walks = bijection_test_set(fast)
    rand = random_walks(1000 if fast else 10_000, 30, 3, seed=6)
    failures: Counter = Counter()
    keys = set()
    for w in walks:
        for f in dictionary_failures(w):
            failures[f] += 1
        keys.add(phi(w).canonical_key())
    injective = len(keys) == len(walks)
    for w in rand:
        O = phi(w)
        if phi_inverse(O) != w or O.signature().as_tuple() != walk_stats(w).as_tuple():
            failures["random_round_trip"] += 1
    ok = not failures and injective
    return ok, {"exhaustive_walks": len(walks), "random_walks": len(rand), "failures": dict(failures),
                "injective": injective}


def involution_failures(w: TandemWalk) -> list[str]:
    fails = []
    O = phi(w)
    a, b, c, d = O.signature().as_tuple()
    R, S = O.rho(), O.sigma()
    if R.rho() != O:
        fails.append("rho^2")
    if S.sigma() != O:
        fails.append("sigma^2")
    if R.sigma() != S.rho():
        fails.append("rho_sigma_commute")
    if R.signature().as_tuple() != (d, c, b, a):
        fails.append("rho_signature")
    if S.signature().as_tuple() != (d, b, c, a):
        fails.append("sigma_signature")
    if S.n_plain_edges() != O.n_plain_edges():
        fails.append("sigma_plain_edges")
    if phi(rho_on_walks(w)) != R:
        fails.append("rho_on_walks")
    v = sigma_on_walks(w)
    if walk_stats(v).as_tuple() != (d, b, c, a):
        fails.append("sigma_walk_stats")
    if len(v) != len(w) or v.levels() != w.levels() or v.n_se() != w.n_se():
        fails.append("sigma_walk_weight")
    if sigma_on_walks(v) != w:
        fails.append("sigma_walk_involution")
    return fails


def criterion_7(fast: bool = False) -> tuple[bool, dict]:
    walks = bijection_test_set(fast)
    failures: Counter = Counter()
    for w in walks:
        for f in involution_failures(w):
            failures[f] += 1
    return not failures, {"walks": len(walks), "failures": dict(failures)}


LGV_SIGNATURE_BOUND = 2


def criterion_8(fast: bool = False) -> tuple[bool, dict]:
    B = LGV_SIGNATURE_BOUND
    bad, k0, checked = [], [], 0
    for n in range(1, 7):
        cnt: Counter = Counter()
        for a in range(B + 1):
            for b in range(B + 1):
                for c in range(B + 1):
                    for d in range(B + 1):
                        for w in all_level_walks((a, b), (c, d), n):
                            if walk_stats(w).as_tuple() != (a, b, c, d):
                                continue
                            O = phi(w)
                            census, _ = O.face_census()
                            cnt[(sum(census.values()),) + O.signature().as_tuple()] += 1
        for a in range(B + 1):
            for b in range(B + 1):
                for c in range(B + 1):
                    for d in range(B + 1):
                        for k in range(n + 1):
                            got, want = cf.marked_qnk_tilde(n, k, a, b, c, d), cnt[(k, a, b, c, d)]
                            if k == 0:
                                # the determinant needs k >= 1; record the all-SE walk separately
                                if got != want:
                                    k0.append((n, (a, b, c, d), got, want))
                                continue
                            checked += 1
                            if got != want:
                                bad.append((n, k, (a, b, c, d), got, want))
    sums = {n: sum(cf.lgv_qnk(n, k, 0, 0, 0, 0) for k in range(n + 1)) for n in range(2, 11)}
    sums_ok = all(sums[n] == cf.baxter_b(n - 1) for n in sums)
    return not bad and sums_ok, {"checked": checked, "mismatches": bad[:10], "signature_bound": B,
                                 "k0_all_se_cases": k0, "baxter_sums": sums}


# ---------------------------------------------------------------------------
# asymptotics suite
# ---------------------------------------------------------------------------

def harmonic_oracle_p1(a: int, b: int) -> int:
    return 3 * (a + 1) * (b + 1) * (a + b + 2)


def harmonic_oracle_p2(a: int, b: int) -> Fraction:
    return Fraction(3, 2) * (b + 1) * ((a + 1) * (a + b + 2) + Fraction(a, 2) + Fraction(b, 4)
                                       + Fraction(5, 8) - Fraction(2 * b + 1, 8) * Fraction(-1, 3) ** (a + 1))


def criterion_9(fast: bool = False) -> tuple[bool, dict]:
    h1 = HarmonicFunction(StepDistribution.uniform_level(1))
    h2 = HarmonicFunction(StepDistribution.uniform_level(2))
    bad = [(p, a, b) for a in range(21) for b in range(21)
           for p, h, f in ((1, h1, harmonic_oracle_p1), (2, h2, harmonic_oracle_p2))
           if h.rational_part(a, b) != f(a, b)]
    res = {}
    for name, d in (("p1", StepDistribution.uniform_level(1)), ("p2", StepDistribution.uniform_level(2)),
                    ("p3", StepDistribution.uniform_level(3)), ("p2_mixed", MIXED_P2)):
        res[name] = check_harmonicity(d, 30, 30, 10)
    ok = not bad and all(r["killed_residual"] == 0 and r["free_residual"] == 0 for r in res.values())
    return ok, {"closed_form_mismatches": bad[:10], "residuals": res}


def criterion_11(fast: bool = False) -> tuple[bool, dict]:
    for n, u in cf.baxter_ratio_sequence(5000):
        pass
    rb = u * n ** 4 / (32 / (math.sqrt(3) * math.pi))
    for k, u in cf.dangulation_ratios(1, 400):
        pass
    ra = u * k ** 4 / (math.sqrt(3) / math.pi)
    for k, u in cf.dangulation_ratios(2, 2000):
        pass
    rc = u * k ** 4 / (9 / (4 * math.sqrt(3) * math.pi))
    ok = abs(rb - 1) <= 0.02 and abs(ra - 1) <= 0.05 and abs(rc - 1) <= 0.05
    return ok, {"baxter_ratio_n5000": rb, "tutte_ratio_k400": ra, "quad_ratio_k2000": rc}


DIAGNOSTIC_STARTS = ((0, 0), (1, 0), (0, 1), (1, 1), (2, 1))


def criterion_12(fast: bool = False) -> tuple[bool, dict]:
    d1 = StepDistribution.uniform_level(1)
    ok = True
    surv, loc = {}, {}
    for a, b in DIAGNOSTIC_STARTS:
        L = limit_diagnostics(d1, a, b, 0, 0, 300, checkpoints=[50, 200])
        r50, r200 = L.survival_ratios[50], L.survival_ratios[200]
        surv[f"{a},{b}"] = {"n50": r50, "n200": r200}
        ok = ok and abs(r200 - 1) <= 0.10 and abs(r200 - 1) < abs(r50 - 1)
        loc[f"{a},{b}"] = {"n": L.last_local_n, "ratio": L.last_local}
        ok = ok and L.last_local is not None and abs(L.last_local - 1) <= 0.15
    e2 = exit_identity(StepDistribution.uniform_level(2), 0, 0, 500)
    ok = ok and e2.lhs_exact == Fraction(-2, 3) and abs(e2.rhs_estimate - e2.lhs) <= 0.15 * abs(e2.lhs)
    e1 = exit_identity(d1, 0, 0, 200)
    ok = ok and e1.lhs_exact == 0 and e1.rhs_estimate == 0.0
    return ok, {"survival": surv, "local": loc,
                "exit_p2": {"lhs": e2.lhs_exact, "rhs_estimate": e2.rhs_estimate, "survived_mass": e2.survived_mass},
                "exit_p1": {"lhs": e1.lhs_exact, "rhs_estimate": e1.rhs_estimate}}


# ---------------------------------------------------------------------------
# sampler suite
# ---------------------------------------------------------------------------

ALPHA = 1e-3


def _uniformity(n: int, samples: int, seed: int) -> dict:
    rng = make_rng(seed)
    got = Counter(sample_excursion_p1(n, rng) for _ in range(samples))
    support = list(exhaustive_walks(_spec(1, (0, 1)), n, (0, 0), "quadrant", end=(0, 0)))
    confined = all(is_confined(w, (0, 0)) and trajectory(w)[-1] == (0, 0) for w in got)
    pval = float(chisquare([got[w] for w in support]).pvalue)
    return {"support": len(support), "seen": len(got), "outside_support": len(set(got) - set(support)),
            "p_value": pval, "confined": confined}


def n_twisted_test(dist: StepDistribution, n: int, samples: int, seed: int) -> dict:
    """Aggregate chi-square of the windowed sampler within each (m, midpoint) class."""
    ws = WindowedSampler(dist, seed)
    groups: dict = defaultdict(Counter)
    confined = True
    stats = Counter()
    for _ in range(samples):
        s = ws.sample(n)
        confined = confined and is_confined(s.walk, (0, 0)) and trajectory(s.walk)[-1] == (0, 0)
        confined = confined and 2 * n <= s.m <= 3 * n and trajectory(s.walk)[n] == s.midpoint
        groups[(s.m, s.midpoint)][s.walk] += 1
        stats["retries"] += s.retries
        stats["rejections"] += s.rejections
    spec = WeightSpec(dist.p, dist.zr, dist.z)
    stat, dof, outside = 0.0, 0, 0
    for (m, mid), cnt in groups.items():
        support = [u + v for u in exhaustive_walks(spec, n, (0, 0), "quadrant", end=mid)
                   for v in exhaustive_walks(spec, m - n, mid, "quadrant", end=(0, 0))]
        outside += len(set(cnt) - set(support))
        if len(support) < 2:
            continue
        pr = np.array([float(walk_probability(dist, w)) for w in support])
        total = sum(cnt.values())
        stat += float(chisquare([cnt[w] for w in support], pr / pr.sum() * total).statistic)
        dof += len(support) - 1
    pval = float(chi2.sf(stat, dof)) if dof else 1.0
    return {"groups": len(groups), "dof": dof, "statistic": stat, "p_value": pval, "outside_support": outside,
            "confined": confined, "mean_retries": stats["retries"] / samples,
            "mean_rejections": stats["rejections"] / samples}


def criterion_13(fast: bool = False) -> tuple[bool, dict]:
    samples = 20_000 if fast else 100_000
    u6 = _uniformity(6, samples, seed=13)
    u9 = _uniformity(9, samples, seed=14)
    tw = n_twisted_test(StepDistribution.uniform_level(1), 4, samples, seed=15)
    ok = (u6["support"] == 5 and u9["support"] == cf.tutte_a(3)
          and all(u["seen"] == u["support"] and not u["outside_support"] and u["confined"]
                  and u["p_value"] > ALPHA for u in (u6, u9))
          and tw["p_value"] > ALPHA and not tw["outside_support"] and tw["confined"])
    return ok, {"p1_n6": u6, "p1_n9": u9, "n_twisted_n4": tw}


CRITERIA: dict[int, tuple[str, str, Callable]] = {
    1: ("Baxter identity", "series", criterion_1),
    2: ("Tutte identity", "series", criterion_2),
    3: ("Q^(0,b)(x;t) against the oracle", "series", criterion_3),
    4: ("constant-term form and (tri)/(quad) specializations", "series", criterion_4),
    5: ("Q^(a,b)(1,1) via A_i against the oracle", "series", criterion_5),
    6: ("bijection round trip and statistic dictionary", "bijection", criterion_6),
    7: ("involutions rho and sigma", "bijection", criterion_7),
    8: ("LGV determinant against transported counts", "bijection", criterion_8),
    9: ("harmonic function V", "asymptotics", criterion_9),
    10: ("invariant identity", "series", criterion_10),
    11: ("asymptotic constants", "asymptotics", criterion_11),
    12: ("probabilistic diagnostics", "asymptotics", criterion_12),
    13: ("samplers", "sampler", criterion_13),
    14: ("one-dimensional identities", "series", criterion_14),
}

SUITES = ("bijection", "series", "asymptotics", "sampler", "all")


def run_criterion(number: int, fast: bool = False) -> CriterionResult:
    title, _, fn = CRITERIA[number]
    t0 = time.perf_counter()
    try:
        ok, measured = fn(fast)
    except Exception as exc:  # a crash is a failure, reported with its message
        ok, measured = False, {"error": f"{type(exc).__name__}: {exc}"}
    return CriterionResult(number, title, bool(ok), measured, time.perf_counter() - t0)


def run_suite(suite: str = "all", fast: bool = False) -> list[CriterionResult]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    return [run_criterion(k, fast) for k, (_, s, _) in CRITERIA.items() if suite == "all" or s == suite]
