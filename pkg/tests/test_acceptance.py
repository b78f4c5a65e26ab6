"""Acceptance gate: ten fixed criteria, one test per criterion.

Each test prints one CRITERION line with the measured outcome before
asserting, so a red run still reports the numbers it saw.  All bound
comparisons are exact (integers against Fraction); the statistical
criterion (10) uses the pinned constants in its docstring.
"""

import math
import os
from fractions import Fraction

import nlcx.bounds as B
import nlcx.complexity as cx
import nlcx.stats as stats
from nlcx.finite_field import field_of_order
from nlcx.generators import (Sequence, child_seed, inversive_finite,
                             inversive_periodic, random_sequence,
                             splitmix64_mix)
from nlcx.hermitian import CurvePoint, HermitianCurve, hermitian_sequence

THREADS = min(4, os.cpu_count() or 1)


def report(num: int, ok: bool, label: str, detail: str = "") -> None:
    tag = "PASS" if ok else "FAIL"
    line = f"CRITERION {num:02d} {tag}: {label}"
    if detail:
        line += f" ({detail})"
    print(line)


def test_criterion_01_inversive_per_variable_bound():
    """N^(k) of the full-length inversive sequence >= (n-1)/(k+1)."""
    failures = []
    total = 0
    for q in (5, 7, 8, 9, 11, 13):
        s = inversive_finite(field_of_order(q))
        for k in (1, 2, 3):
            prof = cx.profile(s, k, "nk")
            for n in range(1, q - 1):
                total += 1
                if prof[n - 1] < Fraction(n - 1, k + 1):
                    failures.append((q, k, n, prof[n - 1]))
    report(1, not failures, "inversive per-variable cap bound",
           f"{total} checks, {len(failures)} failures")
    assert not failures


def test_criterion_02_inversive_total_degree_and_linear_bounds():
    """L^(k) >= (n-1)/(k+1) and linear complexity >= (n-1)/2."""
    failures = []
    total = 0
    for q in (5, 7, 8, 9, 11, 13):
        s = inversive_finite(field_of_order(q))
        for k in (1, 2, 3):
            prof = cx.profile(s, k, "lk")
            for n in range(1, q - 1):
                total += 1
                if prof[n - 1] < Fraction(n - 1, k + 1):
                    failures.append(("lk", q, k, n, prof[n - 1]))
        lin = cx.linear_profile(s)
        for n in range(1, q - 1):
            total += 1
            if lin[n - 1] < Fraction(n - 1, 2):
                failures.append(("lin", q, None, n, lin[n - 1]))
    report(2, not failures, "inversive total-degree and linear bounds",
           f"{total} checks, {len(failures)} failures")
    assert not failures


def test_criterion_03_periodic_bounds():
    """Periodic inversive: both caps >= min((n-1)/(k+1), (d-1)/k)."""
    failures = []
    total = 0
    for q in (7, 9, 13):
        f = field_of_order(q)
        for d in B.admissible_periods(q):
            s = inversive_periodic(f, d, 3 * d)
            for k in (1, 2):
                for kind in ("nk", "lk"):
                    prof = cx.profile(s, k, kind)
                    for n in range(1, 3 * d + 1):
                        total += 1
                        bound = min(Fraction(n - 1, k + 1), Fraction(d - 1, k))
                        if prof[n - 1] < bound:
                            failures.append((q, d, k, kind, n, prof[n - 1]))
    report(3, not failures, "periodic inversive bounds",
           f"{total} checks, {len(failures)} failures")
    assert not failures


def test_criterion_04_curve_sequence_per_variable_bound():
    """Curve sequence N^(k) against its block-count bound, every prefix."""
    failures = []
    total = 0
    for ell in (2, 3, 4):
        s = hermitian_sequence(ell)
        for k in (1, 2):
            prof = cx.profile(s, k, "nk")
            for n in range(1, len(s) + 1):
                total += 1
                if prof[n - 1] < B.bound_hermitian_N(n, k, ell):
                    failures.append((ell, k, n, prof[n - 1]))
    report(4, not failures, "curve sequence per-variable cap bound",
           f"{total} checks, {len(failures)} failures")
    assert not failures


def test_criterion_05_curve_sequence_total_degree_bound():
    """Curve sequence L^(k) bound; negative bounds pass trivially."""
    failures = []
    total = 0
    for ell in (2, 3, 4):
        s = hermitian_sequence(ell)
        for k in (1, 2):
            prof = cx.profile(s, k, "lk")
            for n in range(1, len(s) + 1):
                total += 1
                if prof[n - 1] < B.bound_hermitian_L(n, k, ell):
                    failures.append((ell, k, n, prof[n - 1]))
    report(5, not failures, "curve sequence total-degree cap bound",
           f"{total} checks, {len(failures)} failures")
    assert not failures


def test_criterion_06_solver_matches_brute_force():
    """Solver N^(1) equals raw feedback-map enumeration on small spaces."""
    mismatches = []
    total = 0
    for q, nmax in ((2, 6), (3, 4)):
        f = field_of_order(q)
        for n in range(1, nmax + 1):
            for code in range(q ** n):
                vals, c = [], code
                for _ in range(n):
                    vals.append(c % q)
                    c //= q
                s = Sequence(f, vals)
                total += 1
                a = cx.nonlinear_complexity(s, 1, witness=False).value
                b = cx.brute_force_complexity(s, 1)
                if a != b:
                    mismatches.append((q, vals, a, b))
    report(6, not mismatches, "solver vs brute-force oracle",
           f"{total} sequences, {len(mismatches)} mismatches")
    assert not mismatches


def test_criterion_07_exhaustive_counting_bound():
    """T_n^(1)(m) <= 2^(2^m + m) for q=2, n in 3..12, plus the spot value."""
    failures = []
    spot = stats.exhaustive_count(2, 1, 3, 1)
    total = 0
    for n in range(3, 13):
        for m in (1, 2, 3):
            res = stats.exhaustive_count(2, 1, n, m, threads=THREADS)
            total += 1
            if res.count > res.bound or res.bound != 2 ** (2 ** m + m):
                failures.append((n, m, res.count, res.bound))
    ok = not failures and spot.count == 6
    report(7, ok, "exhaustive counting bound",
           f"{total} grid points, {len(failures)} failures, "
           f"T_3(1)={spot.count} (expected 6)")
    assert not failures
    assert spot.count == 6


def test_criterion_08_curve_geometry():
    """Point count, orbit structure, pole order, shift identity, 0/0 rule."""
    problems = []
    for ell in (2, 3, 4, 5):
        curve = HermitianCurve(ell)
        q = ell * ell
        pts = curve.points()
        if len(pts) != ell ** 3 + 1:
            problems.append((ell, "points", len(pts)))
        table = curve.orbits()
        if len(table.orbits) != ell or any(len(o) != q - 1 for o in table.orbits):
            problems.append((ell, "orbits"))
        h = curve.construct_h()
        if h.valuation_at_infinity() != -(2 * curve.genus - 1):
            problems.append((ell, "valuation", h.valuation_at_infinity()))
    from nlcx.hermitian import apply_automorphism_to_h
    for ell in (2, 3):
        curve = HermitianCurve(ell)
        f = curve.field
        h = curve.construct_h()
        q_pt = curve.orbits().q_point
        pts = [P for P in curve.points() if not P.is_infinity and P != q_pt]
        for t in range(f.q - 1):
            ht = apply_automorphism_to_h(h, t)
            for P in pts:
                if ht.eval(curve.phi(P, t)) != h.eval(P):
                    problems.append((ell, "shift-identity", t, P))
        # series oracle for the removable 0/0 value: along x = a + t the
        # curve forces y = y0 + a^ell t (mod t^2), so the limit is the
        # t-coefficient of the numerator at first order
        a_ell = f.pow(h.a, ell)
        for y0 in h.cofactor_roots:
            num_u, num_v = 1, 0  # constant and t parts of the product
            for r in h.cofactor_roots:
                fac_u, fac_v = f.sub(y0, r), a_ell
                num_u, num_v = (f.mul(num_u, fac_u),
                                f.add(f.mul(num_u, fac_v), f.mul(num_v, fac_u)))
            num_v = f.mul(num_v, h.scale)
            if num_u != 0 or h.eval(CurvePoint(h.a, y0)) != num_v:
                problems.append((ell, "series-oracle", y0))
    report(8, not problems, "curve geometry properties",
           f"{len(problems)} problems")
    assert not problems


def _invariant_violations(s: Sequence, mix: int) -> list:
    f = s.field
    q = f.q
    n = len(s)
    out = []
    prof = cx.profile(s, 1, "nk")
    if any(a > b for a, b in zip(prof, prof[1:])):
        out.append(("monotone-n", s.values))
    nk = {k: cx.nonlinear_complexity(s, k, witness=False).value
          for k in (1, 2, q - 1, q) if k >= 1}
    if any(v for v in s.values):
        for v in nk.values():
            if not (1 <= v <= max(n - 1, 1)):
                out.append(("range", s.values, nk))
                break
    if nk[1] < nk[2]:
        out.append(("antitone-k", s.values, nk))
    if q - 1 >= 1 and nk[q - 1] != nk[q]:
        out.append(("stabilization", s.values, nk))
    moc = cx.max_order_complexity(s, witness=False).value
    if nk[q - 1] != moc:
        out.append(("moc", s.values, nk, moc))
    L = cx.linear_complexity(s, witness=False).value
    l1 = cx.total_degree_complexity(s, 1, witness=False).value
    l2 = cx.total_degree_complexity(s, 2, witness=False).value
    n2 = cx.nonlinear_complexity(s, 2, witness=False).value
    if not (L >= l1 >= L - 1):
        out.append(("linear-chain", s.values, L, l1))
    if l1 < nk[1] or l2 < n2:
        out.append(("total-vs-each", s.values))
    c = 1 + splitmix64_mix(mix) % (q - 1)
    t = Sequence(f, [f.mul(c, v) for v in s.values])
    if cx.nonlinear_complexity(t, 1, witness=False).value != nk[1]:
        out.append(("scalar", s.values, c))
    return out


def test_criterion_09_invariant_suite():
    """Structural invariants over 10^3 random sequences per field plus an
    exhaustive pass at q=2, n <= 6."""
    violations = []
    total = 0
    for q, span in ((2, 17), (3, 15), (4, 11), (5, 11)):
        f = field_of_order(q)
        base = 0xACC0 + q
        for i in range(1000):
            seed = child_seed(base, i)
            n = 2 + splitmix64_mix(seed ^ 0x5EED) % span
            s = random_sequence(f, n, seed)
            total += 1
            violations.extend(_invariant_violations(s, seed))
    f2 = field_of_order(2)
    for n in range(2, 7):
        for code in range(2 ** n):
            vals = [(code >> j) & 1 for j in range(n)]
            total += 1
            violations.extend(_invariant_violations(Sequence(f2, vals), code))
    report(9, not violations, "complexity invariant suite",
           f"{total} sequences, {len(violations)} violations")
    assert not violations


def test_criterion_10_random_profile_statistics():
    """Statistical proxy for the growth of N^(1) of random binary sequences.

    Pinned constants: 500 samples, grid {16, 32, 64, 128}, seed 20260816;
    (a) at every n, fewer than 10% of samples have N < log2(n) - 2;
    (b) at every n, |mean(N) - log2(n)| <= 3.
    """
    ps = stats.monte_carlo_profile(2, 1, [16, 32, 64, 128], 500,
                                   seed=20260816, threads=THREADS)
    tail_ok = all(r.below2 < 0.10 for r in ps.rows)
    mean_ok = all(abs(r.mean - math.log2(r.n)) <= 3 for r in ps.rows)
    detail = "; ".join(
        f"n={r.n}: mean={r.mean:.2f} ref={math.log2(r.n):.0f} "
        f"tail={r.below2:.1%}" for r in ps.rows)
    report(10, tail_ok and mean_ok, "random profile statistics", detail)
    assert tail_ok, f"low-complexity tail too heavy: {detail}"
    assert mean_ok, f"mean drifts from log2(n) by more than 3: {detail}"
