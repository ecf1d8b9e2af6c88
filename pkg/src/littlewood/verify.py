"""Verification suites: every identity and bound checked at desk scale against brute force."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from . import asymptotics as asy
from . import optimize as opt
from .field import (
    additive_char_values,
    gauss_sum_matrix,
    make_field,
    multiplicative_char_values,
    prime_power,
)
from .norms import l2_sq, l4p4, sample_on_grid, exact_ratio4
from .polybuild import (
    AdditivePolySpec,
    LimitProfile,
    MultiplicativePolySpec,
    build,
    family_member,
    kernel_intersection_count,
    unimodularize,
)
from .report import VerificationReport
from .spectral import (
    additive_bound,
    cyclic_l4_direct,
    cyclic_l4_fourier,
    h_all_additive,
    h_all_multiplicative,
    l4_via_gauss_additive,
    l4_via_gauss_multiplicative,
    multiplicative_bound,
    segment_sum_T,
)

BOUND_RTOL = 1e-9


def _field(q: int):
    pe = prime_power(q)
    if pe is None:
        raise ValueError(f"{q} is not a prime power")
    return make_field(*pe)


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(b))


# --- field ---------------------------------------------------------------------------


def field_suite(qs=(5, 7, 8, 9, 11, 13)) -> VerificationReport:
    rep = VerificationReport("field")
    for q in qs:
        F = _field(q)
        G = gauss_sum_matrix(F)
        dev = float(np.max(np.abs(np.abs(G[1:, 1:]) - math.sqrt(q))))
        rep.add(f"gauss-magnitude:q={q}", "gauss-sum-magnitude", dev < 1e-9, dev, 1e-9,
                f"{(q - 1) * (q - 2)} nontrivial pairs")
        dev_triv = max(abs(G[0, 0] - (q - 1)), float(np.max(np.abs(G[0, 1:]))),
                       float(np.max(np.abs(G[1:, 0] + 1))))
        rep.add(f"gauss-trivial-cases:q={q}", "gauss-sum-trivial-characters", dev_triv < 1e-9, dev_triv, 1e-9)

        # sum_a psi(b a) chi(a) = conj(chi(b)) G(psi, chi), summed directly
        a = np.arange(1, q)
        worst = 0.0
        for c in range(1, q):
            psi = additive_char_values(F, c)
            ba = F.mul(a[:, None], a[None, :])  # [b, a]
            for d in range(1, q - 1):
                chi = multiplicative_char_values(F, d)
                lhs = (psi[ba] * chi[a][None, :]).sum(axis=1)
                rhs = np.conj(chi[a]) * G[c, d]
                worst = max(worst, float(np.max(np.abs(lhs - rhs))))
        rep.add(f"twist-identity:q={q}", "gauss-sum-twist", worst < 1e-9, worst, 1e-9)

        add = F.addition_table()
        x = np.arange(q)
        worst = 0.0
        for c in range(q):
            psi = additive_char_values(F, c)
            worst = max(worst, float(np.max(np.abs(psi[add] - np.outer(psi, psi)))))
        mul = F.mul(x[:, None], x[None, :])
        for d in range(1, q - 1):
            chi = multiplicative_char_values(F, d)
            worst = max(worst, float(np.max(np.abs(chi[mul] - np.outer(chi, chi)))))
        rep.add(f"character-homomorphism:q={q}", "characters", worst < 1e-12, worst, 1e-12)

        nz = np.arange(1, q)
        ok = bool(np.array_equal(F.exp[F.dlog[nz]], nz))
        rep.add(f"dlog-roundtrip:q={q}", "discrete-log", ok)
    return rep


# --- norms ---------------------------------------------------------------------------

_RANDOM_SIDES = {1: 40, 2: 12, 3: 6}


def norms_suite(n_arrays: int = 200, seed: int = 0, dims=(1, 2, 3)) -> VerificationReport:
    rep = VerificationReport("norms")
    rng = np.random.default_rng(seed)
    for e in dims:
        exact_bad = 0
        worst_dft = 0.0
        worst_parseval = 0.0
        for _ in range(n_arrays):
            shape = tuple(rng.integers(1, _RANDOM_SIDES[e] + 1, size=e))
            a = rng.choice(np.array([-1, 1]), size=shape)
            o = l4p4(a, "oracle")
            c = l4p4(a, "autocorrelation")
            s = l4p4(a, "sampled-dft")
            exact_bad += o != c
            worst_dft = max(worst_dft, abs(s - c) / c)
            vals = sample_on_grid(a)
            worst_parseval = max(worst_parseval, abs(float(np.mean(np.abs(vals) ** 2)) - l2_sq(a)))
        rep.add(f"oracle=autocorrelation:e={e}", "l4-method-agreement", exact_bad == 0, float(exact_bad), 0.0,
                f"{n_arrays} random +-1 arrays")
        rep.add(f"sampled-dft:e={e}", "l4-method-agreement", worst_dft < 1e-6, worst_dft, 1e-6)
        rep.add(f"parseval:e={e}", "l2-identity", worst_parseval < 1e-9, worst_parseval, 1e-9)
    rep.extend(product_rule_check(seed=seed))
    return rep


def product_rule_check(n: int = 50, seed: int = 0) -> VerificationReport:
    rep = VerificationReport("product-rule")
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(n):
        f = rng.choice(np.array([-1, 1]), size=int(rng.integers(1, 30)))
        g = rng.choice(np.array([-1, 1]), size=int(rng.integers(1, 30)))
        bad += exact_ratio4(np.outer(f, g)) != exact_ratio4(f) * exact_ratio4(g)
    rep.add("product-rule", "norm-multiplicativity", bad == 0, float(bad), 0.0, f"{n} random outer products, exact")
    return rep


# --- spectral ------------------------------------------------------------------------


def gauss_route_checks(qs=(5, 7), boxes_q=(8, 9)) -> VerificationReport:
    rep = VerificationReport("gauss-route-l4")
    for q in qs:
        F = _field(q)
        worst, n = 0.0, 0
        for c in range(1, q):
            for s in range(1, q):
                for t in range(q - 1):
                    spec = AdditivePolySpec(F, c, s, t)
                    worst = max(worst, _rel(l4_via_gauss_additive(spec), l4p4(build(spec), "autocorrelation")))
                    n += 1
        rep.add(f"gauss-l4-additive:q={q}", "fourier-interpolation-additive", worst < 1e-6, worst, 1e-6,
                f"{n} polynomials")
        worst, n = 0.0, 0
        for d in range(1, q - 1):
            for s in range(1, q):
                for t in range(q - 1):
                    spec = MultiplicativePolySpec(F, d, (s,), (t,))
                    worst = max(worst, _rel(l4_via_gauss_multiplicative(spec),
                                            float(l4p4(build(spec), "autocorrelation"))))
                    n += 1
        rep.add(f"gauss-l4-multiplicative:q={q}", "fourier-interpolation-multiplicative", worst < 1e-6,
                worst, 1e-6, f"{n} polynomials")
    for q in boxes_q:
        F = _field(q)
        worst, n = 0.0, 0
        for d in range(1, q - 1):
            for sizes in itertools.product((2, 3), repeat=F.e):
                for t in ((0,) * F.e, (1,) * F.e):
                    spec = MultiplicativePolySpec(F, d, sizes, t)
                    worst = max(worst, _rel(l4_via_gauss_multiplicative(spec),
                                            float(l4p4(build(spec), "autocorrelation"))))
                    n += 1
        rep.add(f"gauss-l4-boxes:q={q}", "fourier-interpolation-multiplicative", worst < 1e-6, worst, 1e-6,
                f"{n} polynomials")
    return rep


def h_bound_checks(qs=(5, 7, 8, 9)) -> VerificationReport:
    rep = VerificationReport("h-sum-bounds")
    for q in qs:
        F = _field(q)
        worst = 0.0
        for c in range(1, q):
            H, M = h_all_additive(F, c)
            worst = max(worst, float(np.max(np.abs(H - M))))
        bound = additive_bound(q)
        rep.add(f"H-additive:q={q}", "H-bound-additive", worst <= bound * (1 + BOUND_RTOL), worst, bound,
                f"all {(q - 1) ** 4} tuples x {q - 1} main characters")
        worst = 0.0
        for d in range(1, q - 1):
            H, M = h_all_multiplicative(F, d)
            worst = max(worst, float(np.max(np.abs(H - M))))
        bound = multiplicative_bound(q)
        rep.add(f"H-multiplicative:q={q}", "H-bound-multiplicative", worst <= bound * (1 + BOUND_RTOL), worst,
                bound, f"all {q ** 4} tuples x {q - 2} main characters")
    return rep


def identity_check(n_draws: int = 20, m: int = 5, seed: int = 0) -> VerificationReport:
    rep = VerificationReport("fourier-identity")
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_draws):
        vals = rng.normal(size=m) + 1j * rng.normal(size=m)
        start, length = int(rng.integers(-5, 6)), int(rng.integers(1, 12))
        worst = max(worst, abs(cyclic_l4_fourier(vals, start, length) - cyclic_l4_direct(vals, start, length)))
    rep.add(f"interpolation-identity:Z/{m}", "fourier-interpolation", worst < 1e-9, worst, 1e-9,
            f"{n_draws} random complex families")
    return rep


def segment_sum_checks() -> VerificationReport:
    rep = VerificationReport("segment-character-sum")
    worst_ratio = 0.0
    for m in range(1, 9):
        for n in range(1, 11):
            T, bound = segment_sum_T(m, range(n))
            worst_ratio = max(worst_ratio, T / bound)
    rep.add("T<=bound", "segment-character-sum-bound", worst_ratio <= 1, worst_ratio, 1.0,
            "m in 1..8, |U| in 1..10; slack reported as max T/bound")
    return rep


def spectral_suite(qs=(5, 7, 8, 9, 11, 13)) -> VerificationReport:
    rep = VerificationReport("spectral")
    rep.extend(gauss_route_checks())
    rep.extend(h_bound_checks(qs))
    rep.extend(identity_check())
    rep.extend(segment_sum_checks())
    return rep


# --- asymptotics ---------------------------------------------------------------------


def omega_symmetry_check(n: int = 10_000, seed: int = 0) -> VerificationReport:
    rep = VerificationReport("omega-symmetry")
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        x = float(rng.uniform(0.05, 4.0)) * (1 if rng.random() < 0.5 else -1)
        y = float(rng.uniform(-5, 5))
        w = asy.omega(x, y)
        worst = max(worst, abs(w - asy.omega(-x, y)), abs(w - asy.omega(x, -y)), abs(w - asy.omega(x, y + x)))
    rep.add("omega-symmetries", "omega", worst < 1e-12, worst, 1e-12, f"{n} random points")
    return rep


def omega_minimum_check(n: int = 100, grid: int = 10_000, seed: int = 0) -> VerificationReport:
    rep = VerificationReport("omega-minimizers")
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        x = float(rng.uniform(0, 4)) or 1.0
        ys = np.linspace(0, x, grid + 1)
        grid_min = float(asy.omega_vec(x, ys).min())
        worst = max(worst, abs(grid_min - float(asy.omega_minimum(x).min_value)))
    rep.add("omega-minimum-vs-grid", "omega-minimizers", worst < 1e-9, worst, 1e-9, f"{n} random x in (0, 4]")
    return rep


def _random_mult_spec(rng, q: int):
    F = _field(q)
    p, e = F.p, F.e
    sizes = tuple(int(v) for v in rng.integers(1, 2 * p + 1, size=e))
    trans = tuple(int(v) for v in rng.integers(0, p, size=e))
    d = int(rng.integers(1, q - 1))
    return MultiplicativePolySpec(F, d, sizes, trans)


def finite_terms_check(qs=(5, 7, 9, 25, 49), n_configs: int = 100, seed: int = 0) -> VerificationReport:
    rep = VerificationReport("finite-terms")
    rng = np.random.default_rng(seed)
    for q in qs:
        bad = 0
        worst_e = 0.0
        for _ in range(n_configs):
            spec = _random_mult_spec(rng, q)
            ft = asy.finite_terms(spec)
            counts = asy.quadruple_counts(spec.sizes, spec.translations, spec.field.p)
            bad += (ft.A != counts["A"]) or (ft.D * q != counts["qD"]) or (ft.C != counts["C"])
            resid = float(l4p4(build(spec), "autocorrelation") - ft.main)
            worst_e = max(worst_e, abs(resid) / ft.E_bound)
        rep.add(f"closed-forms:q={q}", "finite-terms", bad == 0, float(bad), 0.0,
                f"{n_configs} random (sizes, t) configurations")
        rep.add(f"E-bound:q={q}", "error-term-bound", worst_e <= 1, worst_e, 1.0, "max |E| / bound")
    worst_e, bad = 0.0, 0
    for q in (5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49):
        F = _field(q)
        for _ in range(10):
            spec = AdditivePolySpec(F, int(rng.integers(1, q)), int(rng.integers(1, 2 * q)),
                                    int(rng.integers(0, q - 1)))
            ft = asy.finite_terms(spec)
            counts = asy.quadruple_counts((spec.size,), (spec.translation,), q - 1)
            bad += (ft.A != counts["A"]) or (ft.D * (q - 1) != counts["qD"])
            resid = l4p4(build(spec), "autocorrelation") - float(ft.main)
            worst_e = max(worst_e, abs(resid) / ft.E_bound)
    rep.add("closed-forms:additive", "finite-terms", bad == 0, float(bad), 0.0)
    rep.add("E-bound:additive", "error-term-bound", worst_e <= 1, worst_e, 1.0, "max |E| / bound")
    return rep


def liminf_checks(max_q_add: int = 64, max_q_mult: int = 49, seed: int = 0) -> VerificationReport:
    rep = VerificationReport("finite-q-lower-bounds")
    worst = math.inf
    n = 0
    for q in range(3, max_q_add + 1):
        if prime_power(q) is None:
            continue
        F = _field(q)
        for s in range(1, 2 * (q - 1) + 1):
            for t in (0, s % (q - 1)):
                spec = AdditivePolySpec(F, 1, s, t)
                a = build(spec)
                r = l4p4(a, "autocorrelation") / s**2
                worst = min(worst, r - float(asy.liminf_lower_bound(spec)))
                n += 1
    rep.add("additive-lower-bound", "finite-q-liminf-additive", worst >= -1e-9, worst, 0.0,
            f"{n} additive builds, q <= {max_q_add}; slack = min(ratio4 - bound)")
    rng = np.random.default_rng(seed)
    worst = math.inf
    n = 0
    for q in range(3, max_q_mult + 1):
        if prime_power(q) is None:
            continue
        for _ in range(20):
            spec = _random_mult_spec(rng, q)
            a = build(spec)
            if l2_sq(a) == 0:
                continue
            l2 = l2_sq(a)
            r = float(l4p4(a, "autocorrelation")) / l2**2
            worst = min(worst, r - float(asy.liminf_lower_bound(spec)))
            n += 1
    rep.add("multiplicative-lower-bound", "finite-q-liminf-multiplicative", worst >= -1e-9, worst, 0.0,
            f"{n} multiplicative builds, q <= {max_q_mult}")
    return rep


def zero_count_check(primes=(11, 13, 31, 97, 199, 211)) -> VerificationReport:
    rep = VerificationReport("zero-coefficients")
    worst = math.inf
    for e, sig in ((1, (1.0,)), (1, (1.06,)), (2, (1.06, 1.06)), (2, (1.0, 1.0))):
        prof = LimitProfile("quadratic", e, sig, (0.22,) * e)
        for p in primes:
            if e == 2 and p > 97:
                continue
            spec = family_member(prof, p)
            S = math.prod(spec.sizes)
            ratio = l2_sq(build(spec)) / S
            zeros = kernel_intersection_count(spec)
            lo = 1 - 2**e / S
            worst = min(worst, ratio - lo)
            if not (lo <= ratio <= 1) or S - zeros != l2_sq(build(spec)):
                worst = -1.0
    rep.add("l2-over-support", "zero-coefficient-count", worst >= 0, worst, 0.0)
    return rep


def kernel_count_check(max_q: int = 49) -> VerificationReport:
    """Zero coefficients sit exactly on the shifted kernel, over every box with sides <= p + 1."""
    rep = VerificationReport("kernel-count")
    bad, n = 0, 0
    for q in range(3, max_q + 1):
        pe = prime_power(q)
        if pe is None:
            continue
        p, e = pe
        F = make_field(p, e)
        side = 2 * p if e == 1 else p + 1
        for sizes in itertools.product(range(1, side + 1), repeat=e):
            for trans in itertools.product(range(p), repeat=e):
                spec = MultiplicativePolySpec(F, 1, sizes, trans)
                zeros = int(np.count_nonzero(build(spec) == 0))
                bad += zeros != kernel_intersection_count(spec)
                n += 1
    rep.add("zeros=kernel-intersection", "zero-coefficient-count", bad == 0, float(bad), 0.0,
            f"{n} boxes, q <= {max_q}")
    return rep


def convergence_check() -> VerificationReport:
    rep = VerificationReport("convergence")
    profiles = [LimitProfile("quadratic", 1, (1,), (0,)), LimitProfile("quadratic", 1, (1,), (Fraction(1, 4),)),
                LimitProfile("nonquadratic", 1, (1,)), LimitProfile("additive", 1, (1,))]
    for prof in profiles:
        target = float(asy.limit_ratio4(prof))
        errs = []
        for p in (97, 997, 9973):
            a = unimodularize(build(family_member(prof, p)))
            l2 = l2_sq(a)
            errs.append(abs(l4p4(a) / l2**2 - target))
        # additive sizes do not shrink the error monotonically; only the endpoint is tested
        ok = errs[-1] < 0.01 if prof.kind == "additive" else errs[0] > errs[1] > errs[2]
        label = f"{prof.kind}:sigma={prof.sigma[0]}" + (f",tau={prof.tau[0]}" if prof.tau else "")
        rep.add(f"convergence:{label}", "limit-formula", ok, errs[-1], None,
                "abs errors at p=97,997,9973: " + ", ".join(f"{x:.3g}" for x in errs))
    return rep


def asymptotics_suite() -> VerificationReport:
    rep = VerificationReport("asymptotics")
    for sub in (omega_symmetry_check(), omega_minimum_check(), finite_terms_check(), liminf_checks(),
                zero_count_check(), kernel_count_check(), convergence_check()):
        rep.extend(sub)
    return rep


# --- optimization bounds ----------------------------------------------------------------


def bounds_suite() -> VerificationReport:
    rep = VerificationReport("bounds")
    for e in range(1, 6):
        br = opt.certified_bracket(e)
        rep.add(f"bracket:e={e}", "rational-bracket", br.inside_stated,
                float(min(br.lower - br.stated[0], br.stated[1] - br.upper)), None,
                f"({float(br.lower):.6f}, {float(br.upper):.6f}) inside ({br.stated[0]}, {br.stated[1]})")
    B = {e: opt.minimize(e, "quadratic") for e in range(1, opt.E_MAX + 1)}
    A = {e: opt.minimize(e, "nonquadratic") for e in range(1, opt.E_MAX + 1)}
    for e in (6, 7):
        v = B[e].value4
        rep.add(f"B{e}^4-in-(7/4,2)", "rational-bracket", 1.75 < v < 2, min(v - 1.75, 2 - v))
    for e1 in range(1, 6):
        for e2 in range(e1, 7 - e1):
            rep.extend(opt.chain_check(e1, e2))
    for e in range(2, 7):
        margin = B[1].value4**e - B[e].value4
        rep.add(f"B{e}^4<(B1^4)^{e}", "beats-univariate-products", margin > 0, margin)
    rep.extend(opt.record_cubic_crosscheck())

    for e in range(1, opt.E_MAX + 1):
        for kind, res in (("nonquadratic", A[e]), ("quadratic", B[e])):
            lo, hi = res.interval
            rep.add(f"interval:{kind}:e={e}", "minimizer-interval", lo < res.x_star < hi,
                    min(res.x_star - lo, hi - res.x_star))
            rep.add(f"residual:{kind}:e={e}", "stationarity-root", res.residual < 1e-10, res.residual, 1e-10)
    h = 1e-6
    for e in range(1, 6):
        for kind, res in (("nonquadratic", A[e]), ("quadratic", B[e])):
            f = lambda x: float(opt.objective(e, kind, x))  # noqa: E731
            x = res.x_star
            grad = (f(x + h) - f(x - h)) / (2 * h)
            curv = f(x + 1e-4) - 2 * f(x) + f(x - 1e-4)
            rep.add(f"gradient:{kind}:e={e}", "stationarity", abs(grad) < 1e-6 and curv > 0, abs(grad), 1e-6,
                    f"second difference {curv:.3e}")
    root = opt.bisect(lambda x: x**3 - 12 * x + 12, 1.0, 1 + 9 / 64)
    same = max(abs(opt.minimize(1, "additive").x_star - A[1].x_star), abs(root - A[1].x_star))
    rep.add("additive=nonquadratic:e=1", "minimizer-consistency", same < 1e-12, same, 1e-12)
    b1 = B[1]
    link = abs(float(asy.limit_ratio4(LimitProfile("quadratic", 1, (b1.x_star,), (b1.tau_star,)))) - b1.value4)
    rep.add("tau-star-link", "optimal-translation", link < 1e-12, link, 1e-12)
    xs = np.linspace(1, 1.5, 1000)
    aux = 4 * xs**3 - 12 * xs**2 + 12 * xs - 3
    rep.add("auxiliary-cubic>0", "quadratic-beats-nonquadratic", bool(np.all(aux > 0)), float(aux.min()))
    return rep


SUITES = {
    "field": field_suite,
    "norms": norms_suite,
    "spectral": spectral_suite,
    "asymptotics": asymptotics_suite,
    "bounds": bounds_suite,
}


def run(names=None) -> VerificationReport:
    names = list(SUITES) if not names else list(names)
    rep = VerificationReport("+".join(names))
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
        rep.extend(SUITES[name]())
    return rep
