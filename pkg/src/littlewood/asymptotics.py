"""Limit formulas for the norm ratio of character-polynomial families, and finite-q terms.

All scalar functions accept floats or ``fractions.Fraction``; with Fraction inputs the
arithmetic stays exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .polybuild import (
    AdditivePolySpec,
    LimitProfile,
    MultiplicativePolySpec,
    arrangement_values,
)

__all__ = [
    "LimitProfile", "omega", "phi", "psi", "limit_ratio4", "FiniteTerms", "finite_terms",
    "quadruple_counts", "OmegaMinimum", "omega_minimum", "liminf_lower_bound", "e_bound",
]


def omega(x, y):
    """sum over integers n of max(0, 1 - |x n - y|)^2, for x != 0."""
    if x == 0:
        raise ValueError("omega is undefined at x = 0")
    ax = abs(x)
    lo = math.floor((y - 1) / ax) - 1
    hi = math.ceil((y + 1) / ax) + 1
    total = 0
    for n in range(lo, hi + 1):
        r = 1 - abs(ax * n - y)
        if r > 0:
            total += r * r
    return total


def omega_vec(x, y) -> np.ndarray:
    """Broadcasting float version of omega for grid searches."""
    x = np.abs(np.asarray(x, dtype=float))
    y = np.asarray(y, dtype=float)
    if np.any(x == 0):
        raise ValueError("omega is undefined at x = 0")
    lo = int(np.floor(np.min((y - 1) / x))) - 1
    hi = int(np.ceil(np.max((y + 1) / x))) + 1
    total = np.zeros(np.broadcast(x, y).shape)
    for n in range(lo, hi + 1):
        total += np.maximum(0.0, 1 - np.abs(x * n - y)) ** 2
    return total


def phi(x):
    return omega(1 / Fraction(x) if isinstance(x, (int, Fraction)) else 1 / x, 0)


def psi(x):
    """sum over n of max(0, 1 - |2n+1| / (2x))^2, i.e. omega(1/x, 1/(2x))."""
    inv = 1 / Fraction(x) if isinstance(x, (int, Fraction)) else 1 / x
    return omega(inv, inv / 2)


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def _inv(x):
    return 1 / Fraction(x) if isinstance(x, (int, Fraction)) else 1 / x


def limit_ratio4(profile: LimitProfile):
    """Limiting ||f||_4^4 / ||f||_2^4 of a size- (and translation-) stable family."""
    sig = profile.sigma
    e = profile.e
    phis = _prod(omega(_inv(s), 0) for s in sig)
    if profile.kind == "additive":
        return -Fraction(2, 3) * sig[0] + 2 * phis
    if profile.kind == "nonquadratic":
        return -Fraction(2**e, 3**e) * _prod(sig) + 2 * phis
    tail = _prod(omega(_inv(s), 1 + 2 * t * _inv(s)) for s, t in zip(sig, profile.tau))
    return -Fraction(2 ** (e + 1), 3**e) * _prod(sig) + 2 * phis + tail


# --- finite-q terms ----------------------------------------------------------------


@dataclass
class FiniteTerms:
    A: Fraction
    B: Fraction
    C: Fraction | None
    D: Fraction
    E_bound: float
    quadratic: bool

    @property
    def main(self) -> Fraction:
        """The non-error part: A + B - D, or A + B + C - 2D for quadratic characters."""
        if self.quadratic:
            return self.A + self.B + self.C - 2 * self.D
        return self.A + self.B - self.D


def _lag_square_sum(s: int, period: int) -> int:
    # sum over n of max(0, s - period |n|)^2
    total = s * s
    n = 1
    while period * n < s:
        total += 2 * (s - period * n) ** 2
        n += 1
    return total


def _sum_square_sum(s: int, t: int, p: int) -> int:
    # sum over n of max(0, s - |p n - s - 2t + 1|)^2
    center = s + 2 * t - 1
    lo = math.floor((center - s) / p) - 1
    hi = math.ceil((center + s) / p) + 1
    return sum(max(0, s - abs(p * n - center)) ** 2 for n in range(lo, hi + 1))


def e_bound(spec) -> float:
    if isinstance(spec, AdditivePolySpec):
        q = spec.field.q
        return 64 * q * math.sqrt(q) * max(1, spec.size / (q - 1)) ** 3 * (1 + math.log(q - 1)) ** 3
    p, q, e = spec.field.p, spec.field.q, spec.field.e
    return (3 * 64**e * q * math.sqrt(q) * math.prod(max(1, s / p) ** 3 for s in spec.sizes)
            * (1 + math.log(p)) ** (3 * e))


def finite_terms(spec) -> FiniteTerms:
    """Closed forms of A = B, C, D and the bound on the error term E."""
    if isinstance(spec, AdditivePolySpec):
        per = spec.field.q - 1
        s = spec.size
        A = Fraction(_lag_square_sum(s, per))
        D = Fraction(2 * s**3 + s, 3 * per)
        return FiniteTerms(A, A, None, D, e_bound(spec), False)
    p = spec.field.p
    A = Fraction(math.prod(_lag_square_sum(s, p) for s in spec.sizes))
    D = _prod(Fraction(2 * s**3 + s, 3 * p) for s in spec.sizes)
    C = Fraction(math.prod(_sum_square_sum(s, t, p) for s, t in zip(spec.sizes, spec.translations)))
    return FiniteTerms(A, A, C, D, e_bound(spec), spec.quadratic)


def quadruple_counts(sizes, translations, period: int) -> dict:
    """Brute-force counts over (a, b, c, d) in U^4 with a + b = c + d, U = S + t.

    ``A``: c - a in the kernel (all coordinates divisible by ``period``);
    ``qD``: no further condition; ``C``: a + b in the kernel.
    """
    sizes = tuple(sizes)
    e = len(sizes)
    pts = np.stack(np.meshgrid(*[np.arange(s) + t for s, t in zip(sizes, translations)], indexing="ij"),
                   axis=-1).reshape(-1, e)
    lo = np.array(translations)
    hi = lo + np.array(sizes)
    n = len(pts)
    counts = {"A": 0, "qD": 0, "C": 0}
    chunk = max(1, 2_000_000 // (n * n))
    for start in range(0, n, chunk):
        a = pts[start : start + chunk][:, None, None, :]
        b = pts[None, :, None, :]
        c = pts[None, None, :, :]
        d = a + b - c
        ok = np.all((d >= lo) & (d < hi), axis=-1)
        counts["qD"] += int(np.count_nonzero(ok))
        counts["A"] += int(np.count_nonzero(ok & np.all((c - a) % period == 0, axis=-1)))
        counts["C"] += int(np.count_nonzero(ok & np.all((a + b) % period == 0, axis=-1)))
    return counts


# --- minimizers of omega in its second argument ---------------------------------------


@dataclass
class OmegaMinimum:
    x: float
    min_value: float
    family: str  # "intervals" or "lattice"

    def contains(self, y: float, tol: float = 1e-12) -> bool:
        ax = abs(self.x)
        if self.family == "intervals":
            r = y % ax
            return 1 - tol <= r <= ax - 1 + tol
        r = (y / ax - 0.5) % 1
        return min(r, 1 - r) * ax <= tol

    def describe(self) -> str:
        ax = abs(self.x)
        if self.family == "intervals":
            return f"y in [m*{ax:g}+1, (m+1)*{ax:g}-1] for integer m"
        return f"y = {ax:g}*(m+1/2) for integer m"


def omega_minimum(x) -> OmegaMinimum:
    """Global minimum of y -> omega(x, y) and where it is attained."""
    if x == 0:
        raise ValueError("x must be nonzero")
    if abs(x) >= 2:
        return OmegaMinimum(x, 0.0, "intervals")
    return OmegaMinimum(x, omega(x, x / 2), "lattice")


def liminf_lower_bound(spec) -> Fraction:
    """sum_n |V cap (n*period + V)|^2 / |V|^2 for the support V of nonzero coefficients.

    Additive: V = S, period q - 1. Multiplicative: V = S minus (ker alpha - t), period p
    along each axis.
    """
    if isinstance(spec, AdditivePolySpec):
        s = spec.size
        return Fraction(_lag_square_sum(s, spec.field.q - 1), s * s)
    p = spec.field.p
    V = arrangement_values(spec.field, spec.sizes, spec.translations) != 0
    nv = int(V.sum())
    total = 0
    ranges = [range(-((s - 1) // p), (s - 1) // p + 1) for s in spec.sizes]
    for n in np.array(np.meshgrid(*ranges, indexing="ij")).reshape(len(ranges), -1).T:
        sl_a, sl_b = [], []
        for nk, sk in zip(n * p, spec.sizes):
            sl_a.append(slice(max(nk, 0), sk + min(nk, 0)))
            sl_b.append(slice(max(-nk, 0), sk + min(-nk, 0)))
        ov = int(np.count_nonzero(V[tuple(sl_a)] & V[tuple(sl_b)]))
        total += ov * ov
    return Fraction(total, nv * nv)
