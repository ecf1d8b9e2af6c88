"""Minimization of the limiting norm ratio over the common limiting size.

For non-quadratic families the objective is theta(x) = -(2x/3)^e + 2 phi(x)^e; for
quadratic families T(x) = -2(2x/3)^e + 2 phi(x)^e + psi(x)^e once the limiting
translations sit at their optimum (1 - 2x)/4 mod 1/2. The minimizer is the unique sign
change of an explicit stationarity polynomial on a known bracketing interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .asymptotics import phi, psi
from .report import VerificationReport

E_MAX = 8

BRACKET_TRIPLES = {
    1: (Fraction(55, 52), Fraction(128, 121), Fraction(73, 69)),
    2: (Fraction(18, 17), Fraction(17, 16), Fraction(16, 15)),
    3: (Fraction(21, 20), Fraction(20, 19), Fraction(19, 18)),
    4: (Fraction(26, 25), Fraction(25, 24), Fraction(24, 23)),
    5: (Fraction(36, 35), Fraction(35, 34), Fraction(34, 33)),
}

# rational brackets for B_e^4
STATED_BRACKETS = {
    1: (Fraction(103, 89), Fraction(22, 19)),
    2: (Fraction(86, 65), Fraction(75, 56)),
    3: (Fraction(142, 95), Fraction(116, 77)),
    4: (Fraction(100, 61), Fraction(107, 65)),
    5: (Fraction(7, 4), Fraction(128, 73)),
}


def _kind(kind: str) -> str:
    if kind in ("additive", "nonquadratic"):
        return "nonquadratic"
    if kind == "quadratic":
        return "quadratic"
    raise ValueError(f"unknown kind {kind!r}")


def theta(e: int, x):
    return -((2 * x / 3) ** e) + 2 * phi(x) ** e


def T_quad(e: int, x):
    return -2 * (2 * x / 3) ** e + 2 * phi(x) ** e + psi(x) ** e


def objective(e: int, kind: str, x):
    return T_quad(e, x) if _kind(kind) == "quadratic" else theta(e, x)


def stationarity(e: int, kind: str, x):
    """Polynomial whose root in the bracketing interval is the optimal limiting size."""
    base = x ** (3 * e)
    cubic = (x - 1) * (3 * x * x - 4 * x + 2) ** (e - 1)
    if _kind(kind) == "nonquadratic":
        return base - Fraction(3**e) / Fraction(2) ** (e - 3) * cubic
    return (base - Fraction(3**e) / Fraction(2) ** (e - 2) * cubic
            - Fraction(3**e, 2 ** (2 * e)) * (2 * x - 1) ** (2 * e - 1))


def interval(e: int, kind: str) -> tuple[Fraction, Fraction]:
    if _kind(kind) == "nonquadratic":
        return Fraction(1), 1 + Fraction(3 ** (e + 1), 2 ** (2 * e + 4))
    return Fraction(1), 1 + Fraction(3 ** (e + 1), 2 ** (2 * e + 3))


def bisect(f, lo: float, hi: float, tol: float = 1e-13) -> float:
    flo = f(lo)
    fhi = f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass
class MinimizerResult:
    e: int
    kind: str
    x_star: float
    value4: float
    tau_star: float | None
    interval: tuple[float, float]
    residual: float

    @property
    def ratio(self) -> float:
        """The minimal asymptotic ||f||_4 / ||f||_2 itself (A_e or B_e)."""
        return self.value4 ** 0.25

    def to_dict(self) -> dict:
        return {"e": self.e, "kind": self.kind, "x_star": self.x_star, "value4": self.value4,
                "ratio": self.ratio, "tau_star": self.tau_star, "interval": list(self.interval),
                "residual": self.residual}


def minimize(e: int, kind: str) -> MinimizerResult:
    if not 1 <= e <= E_MAX:
        raise ValueError(f"e must lie in 1..{E_MAX}")
    kind = _kind(kind)
    lo, hi = interval(e, kind)

    def f(x):
        return float(stationarity(e, kind, x))

    if not (f(float(lo)) > 0 > f(float(hi))):
        raise ArithmeticError(f"stationarity polynomial has the wrong endpoint signs for e={e}, {kind}")
    x = bisect(f, float(lo), float(hi))
    value = float(objective(e, kind, x))
    tau = (1 - 2 * x) / 4 if kind == "quadratic" else None
    return MinimizerResult(e, kind, x, value, tau, (float(lo), float(hi)), abs(f(x)))


# --- rational brackets and the inequality chain ----------------------------------------


@dataclass
class Bracket:
    e: int
    lower: Fraction
    upper: Fraction
    triple: tuple[Fraction, Fraction, Fraction]
    stated: tuple[Fraction, Fraction]

    @property
    def inside_stated(self) -> bool:
        return self.stated[0] < self.lower and self.upper < self.stated[1]


def certified_bracket(e: int) -> Bracket:
    """Certified rational bracket on B_e^4 from the three-point convexity argument.

    T is convex on the interval, so T(x2) < T(x1), T(x3) puts the minimizer in (x1, x3);
    the upper bound is T(x2) and the lower bound uses monotonicity of phi and psi.
    """
    if e not in BRACKET_TRIPLES:
        raise ValueError("brackets are tabulated for e = 1..5")
    x1, x2, x3 = BRACKET_TRIPLES[e]
    lo, hi = interval(e, "quadratic")
    if not (lo < x1 < x2 < x3 < hi):
        raise ValueError(f"triple for e={e} does not lie in the minimization interval")
    t1, t2, t3 = T_quad(e, x1), T_quad(e, x2), T_quad(e, x3)
    if not (t2 < t1 and t2 < t3):
        raise ValueError(f"triple for e={e} fails the midpoint condition")
    lower = -Fraction(2 ** (e + 1), 3**e) * x3**e + 2 * phi(x1) ** e + psi(x1) ** e
    br = Bracket(e, lower, t2, (x1, x2, x3), STATED_BRACKETS[e])
    if not br.inside_stated:
        raise AssertionError(f"bracket for e={e} is not inside the stated interval")
    return br


def chain_check(e1: int, e2: int) -> VerificationReport:
    """B_e < A_e for e in {e1, e2, e1+e2}, and B_{e1+e2} < B_{e1} B_{e2}, with margins."""
    if e1 < 1 or e2 < 1 or e1 + e2 > E_MAX:
        raise ValueError(f"need e1, e2 >= 1 and e1 + e2 <= {E_MAX}")
    rep = VerificationReport(f"chain({e1},{e2})")
    es = sorted({e1, e2, e1 + e2})
    B = {e: minimize(e, "quadratic").value4 for e in es}
    A = {e: minimize(e, "nonquadratic").value4 for e in es}
    for e in es:
        rep.add(f"B{e}<A{e}", "quadratic-beats-nonquadratic", B[e] < A[e], A[e] - B[e], A[e])
    prod = B[e1] * B[e2]
    e12 = e1 + e2
    rep.add(f"B{e12}<B{e1}B{e2}", "single-family-beats-product", B[e12] < prod, prod - B[e12], prod)
    if e12 in STATED_BRACKETS and e1 in STATED_BRACKETS and e2 in STATED_BRACKETS:
        lo1, lo2 = certified_bracket(e1).lower, certified_bracket(e2).lower
        up12 = certified_bracket(e12).upper
        rep.add(f"B{e12}<B{e1}B{e2}:interval", "single-family-beats-product", up12 < lo1 * lo2,
                float(lo1 * lo2 - up12), float(lo1 * lo2),
                "certified from computed rational brackets")
        st_lo = STATED_BRACKETS[e1][0] * STATED_BRACKETS[e2][0]
        st_up = STATED_BRACKETS[e12][1]
        rep.add(f"B{e12}<B{e1}B{e2}:stated", "single-family-beats-product", st_up < st_lo,
                float(st_lo - st_up), float(st_lo), f"{st_up} < {st_lo}")
    for e in es:
        if e in STATED_BRACKETS:
            br = certified_bracket(e)
            ok = float(br.lower) < B[e] < float(br.upper)
            rep.add(f"B{e}in-bracket", "rational-bracket", ok, min(B[e] - float(br.lower), float(br.upper) - B[e]))
    return rep


def record_cubic(y):
    return 27 * y**3 - 498 * y**2 + 1164 * y - 722


def record_cubic_derivative(y):
    return 81 * y**2 - 996 * y + 1164


def cubic_real_roots(lo: float = 0.0, hi: float = 20.0, n: int = 20001) -> list[float]:
    """Real roots of the cubic found by sign scanning on a grid, then bisection."""
    ys = np.linspace(lo, hi, n)
    vals = record_cubic(ys)
    roots = []
    for i in np.flatnonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) <= 0):
        if vals[i] == 0:
            roots.append(float(ys[i]))
        elif vals[i + 1] != 0:
            roots.append(bisect(record_cubic, float(ys[i]), float(ys[i + 1]), 1e-14))
    return roots


def record_cubic_crosscheck() -> VerificationReport:
    rep = VerificationReport("univariate-record-polynomial")
    y = minimize(1, "quadratic").value4
    step = abs(record_cubic(y) / record_cubic_derivative(y))
    rep.add("B1^4-is-root", "record-polynomial", step < 1e-6, step, 1e-6,
            f"y={y!r}, Newton step to nearest root")
    roots = cubic_real_roots()
    near = min(roots, key=lambda r: abs(r - y))
    rep.add("B1^4-polished", "record-polynomial", abs(near - y) < 1e-6, abs(near - y), 1e-6,
            "real roots in y = x^4: " + ", ".join(f"{r:.12g}" for r in roots))
    lo, hi = STATED_BRACKETS[1]
    rep.add("B1^4-bracket", "rational-bracket", float(lo) < y < float(hi),
            min(y - float(lo), float(hi) - y))
    return rep
