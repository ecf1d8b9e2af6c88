"""Acceptance criteria, each at its stated tolerance and time budget.

Every test records a one-line PASS/FAIL summary that pytest prints at the end of the run.
"""

import math
import time
from fractions import Fraction

import numpy as np

from littlewood import optimize as opt
from littlewood import verify
from littlewood.asymptotics import omega_vec
from littlewood.field import gauss_sum_matrix, make_field, prime_power
from littlewood.norms import l2_sq, l4p4, report
from littlewood.polybuild import LimitProfile, MultiplicativePolySpec, build
from littlewood.survey import survey_row


def timed(fn, repeat=1):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


def max_slack(rep):
    return max((c.slack for c in rep.checks if c.slack is not None), default=0.0)


def test_criterion_01_fekete_seven(criterion):
    a = build(MultiplicativePolySpec(make_field(7), 3, (7,)))

    def evaluate():
        return l4p4(a, "oracle"), l4p4(a, "autocorrelation"), l4p4(a, "sampled-dft")

    (o, c, s), secs = timed(evaluate, repeat=20)
    rep = report(a, "oracle")
    ok = (o == c == 50 and abs(s - 50) < 1e-9 and l2_sq(a) == 6
          and Fraction(rep.l2sq**2, rep.l4p4 - rep.l2sq**2) == Fraction(18, 7) and secs < 1e-3)
    assert criterion(1, ok, f"L4^4 = {o}/{c}/{s:.12g}, L2^2 = {l2_sq(a)}, MF = {rep.merit_factor:.6f}, "
                            f"{secs * 1e3:.3f} ms")


def test_criterion_02_gauss_sum_magnitude(criterion):
    def run():
        worst = 0.0
        for q in (5, 7, 8, 9, 11, 13):
            G = gauss_sum_matrix(make_field(*prime_power(q)))
            worst = max(worst, float(np.max(np.abs(np.abs(G[1:, 1:]) - math.sqrt(q)))))
        return worst

    worst, secs = timed(run)
    assert criterion(2, worst < 1e-9 and secs < 1, f"max ||G| - sqrt(q)| = {worst:.2e}, {secs:.2f} s")


def test_criterion_03_gauss_route_cross_validation(criterion):
    rep, secs = timed(verify.gauss_route_checks)
    ok = rep.passed and secs < 120
    assert criterion(3, ok, f"{len(rep.checks)} groups, max rel diff {max_slack(rep):.2e}, {secs:.1f} s")


def test_criterion_04_h_sum_slack(criterion):
    rep, secs = timed(lambda: verify.h_bound_checks((5, 7, 8, 9)))
    parts = ", ".join(f"{c.id.split(':')[0][2:]}@{c.id.split('=')[1]} {c.slack / c.bound:.3f}" for c in rep.checks)
    ok = rep.passed and secs < 60
    assert criterion(4, ok, f"max |H-M| / bound: {parts}; {secs:.1f} s")


def test_criterion_05_finite_terms(criterion):
    rep, secs = timed(verify.finite_terms_check)
    worst_e = max(c.slack for c in rep.checks if c.id.startswith("E-bound"))
    ok = rep.passed and secs < 120
    assert criterion(5, ok, f"closed forms exact, max |E|/bound = {worst_e:.3e}, {secs:.1f} s")


def _err(profile, n):
    return survey_row(profile, n).abs_err


def test_criterion_06_quadratic_convergence(criterion):
    def run():
        fekete = LimitProfile("quadratic", 1, (1,), (0,))
        shifted = LimitProfile("quadratic", 1, (1,), (Fraction(1, 4),))
        return _err(fekete, 97), _err(fekete, 997), _err(shifted, 997)

    (e97, e997, e_shift), secs = timed(run)
    ok = e997 < 0.01 and e997 < e97 and e_shift < 0.02 and secs < 10
    assert criterion(6, ok, f"tau=0: err {e97:.4f} (p=97) -> {e997:.4f} (p=997); "
                            f"tau=1/4: err {e_shift:.4f} (p=997); {secs:.2f} s")


def test_criterion_07_additive_convergence(criterion):
    # largest prime power <= 1024 is 1024 itself
    row, secs = timed(lambda: survey_row(LimitProfile("additive", 1, (1,)), 1024))
    ok = row.abs_err < 0.02 and secs < 5
    assert criterion(7, ok, f"q=1024 ratio4 = {row.ratio4:.5f}, |err| = {row.abs_err:.4f} (tolerance 0.02), "
                            f"{secs:.2f} s")


def test_criterion_08_bivariate_quadratic(criterion):
    row, secs = timed(lambda: survey_row(LimitProfile("quadratic", 2, (1, 1), (0, 0)), 199))
    ok = row.abs_err < 0.1 and secs < 30
    assert criterion(8, ok, f"p=199 ratio4 = {row.ratio4:.5f} vs 19/9, err {row.abs_err:.4f}, {secs:.2f} s")


def test_criterion_09_minimizers(criterion):
    def run():
        A = opt.minimize(1, "nonquadratic")
        B = opt.minimize(1, "quadratic")
        x = np.linspace(1, 1 + 9 / 64, 1_000_000)
        grid = float(np.min(-2 * x / 3 + 2 * omega_vec(1 / x, 0)))
        return A, B, grid

    (A, B, grid), secs = timed(run)
    x = A.x_star
    cubic_res = abs(x**3 - 12 * x + 12)
    polish = abs(opt.record_cubic(B.value4) / opt.record_cubic_derivative(B.value4))
    lo, hi = opt.STATED_BRACKETS[1]
    ok = (1 < x < 1 + 9 / 64 and cubic_res < 1e-10 and abs(A.value4 - 1.29922) < 1e-5
          and abs(grid - A.value4) < 1e-5 and lo < Fraction(B.value4) < hi and polish < 1e-6 and secs < 1)
    assert criterion(9, ok, f"x*={x:.10f} (res {cubic_res:.1e}), A1^4={A.value4:.8f}, grid {grid:.8f}; "
                            f"B1^4={B.value4:.10f} (Newton step {polish:.1e}); {secs:.2f} s")


def test_criterion_10_brackets(criterion):
    def run():
        brs = [opt.certified_bracket(e) for e in range(1, 6)]
        high = [opt.minimize(e, "quadratic").value4 for e in (6, 7)]
        return brs, high

    (brs, high), secs = timed(run)
    ok = all(b.inside_stated for b in brs) and all(1.75 < v < 2 for v in high) and secs < 5
    widths = ", ".join(f"{float(b.upper - b.lower):.1e}" for b in brs)
    assert criterion(10, ok, f"bracket widths e=1..5: {widths}; B6^4={high[0]:.6f}, B7^4={high[1]:.6f}; "
                             f"{secs:.2f} s")


def test_criterion_11_chain(criterion):
    def run():
        B = {e: opt.minimize(e, "quadratic").value4 for e in range(1, 7)}
        A = {e: opt.minimize(e, "nonquadratic").value4 for e in range(1, 7)}
        beats = all(B[e] < A[e] for e in B)
        product = all(B[e1 + e2] < B[e1] * B[e2] for e1 in range(1, 6) for e2 in range(1, 7 - e1))
        power = all(B[e] < B[1] ** e for e in range(2, 7))
        reports = [opt.chain_check(e1, e2) for e1 in range(1, 6) for e2 in range(e1, 7 - e1)]
        return beats, product, power, all(r.passed for r in reports)

    (beats, product, power, reports), secs = timed(run)
    stated = Fraction(75, 56) < Fraction(103, 89) ** 2
    ok = beats and product and power and reports and stated and secs < 5
    assert criterion(11, ok, f"B<A {beats}, B(e1+e2)<B(e1)B(e2) {product}, B(e)<B(1)^e {power}, "
                             f"rational (1,1) {stated}; {secs:.2f} s")


def test_criterion_12_property_suites(criterion):
    def run():
        subs = [verify.omega_symmetry_check(), verify.omega_minimum_check(), verify.liminf_checks(),
                verify.product_rule_check(), verify.identity_check()]
        return subs

    subs, secs = timed(run)
    failed = [c.id for r in subs for c in r.checks if not c.passed]
    ok = not failed and secs < 120
    assert criterion(12, ok, f"{sum(len(r.checks) for r in subs)} checks, failed: {failed or 'none'}; "
                             f"{secs:.1f} s")
