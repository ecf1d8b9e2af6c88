"""Additive and multiplicative character polynomials as coefficient arrays.

A coefficient array is a numpy array whose shape is the support box (s_1, ..., s_e).
Exact arrays use an integer dtype with entries in {-1, 0, 1}; otherwise complex128.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .field import (
    FieldSpec,
    additive_char_values,
    make_field,
    multiplicative_char_values,
    prime_power,
    quadratic_char_values,
)

KINDS = ("additive", "nonquadratic", "quadratic")


@dataclass(frozen=True)
class AdditivePolySpec:
    """f(z) = sum_{j<s} psi_c(g^(j+t)) z^j."""

    field: FieldSpec
    char: int
    size: int
    translation: int = 0

    def __post_init__(self):
        self.field.check(self.char)
        if self.char == 0:
            raise ValueError("additive character polynomial needs a nontrivial character")
        if self.size < 1:
            raise ValueError("support size must be positive")

    @property
    def sizes(self) -> tuple[int, ...]:
        return (self.size,)

    @property
    def period(self) -> int:
        return self.field.q - 1


@dataclass(frozen=True)
class MultiplicativePolySpec:
    """f(z) = sum_{j in box} chi_d(gamma((j + t) mod p)) z^j over F_{p^e}, e = len(sizes)."""

    field: FieldSpec
    char: int
    sizes: tuple[int, ...]
    translations: tuple[int, ...] | None = None

    def __post_init__(self):
        F = self.field
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        t = self.translations if self.translations is not None else (0,) * len(self.sizes)
        object.__setattr__(self, "translations", tuple(int(x) for x in t))
        object.__setattr__(self, "char", int(self.char) % (F.q - 1))
        if self.char == 0:
            raise ValueError("multiplicative character polynomial needs a nontrivial character")
        if len(self.sizes) != F.e or len(self.translations) != F.e:
            raise ValueError(f"F_{F.q} polynomials need {F.e} sizes and translations")
        if any(s < 1 for s in self.sizes):
            raise ValueError("support sizes must be positive")

    @property
    def quadratic(self) -> bool:
        F = self.field
        return F.q % 2 == 1 and self.char == (F.q - 1) // 2


def arrangement_values(F: FieldSpec, sizes: Sequence[int], translations: Sequence[int]) -> np.ndarray:
    """Encoded field element alpha(j + t) at every box index j."""
    p = F.p
    grids = np.meshgrid(*[(np.arange(s) + t) % p for s, t in zip(sizes, translations)], indexing="ij")
    out = np.zeros(tuple(sizes), dtype=np.int64)
    for k, gk in enumerate(grids):
        out += gk * p**k
    return out


def build_additive(spec: AdditivePolySpec) -> np.ndarray:
    F = spec.field
    idx = (np.arange(spec.size) + spec.translation) % (F.q - 1)
    if F.p == 2:
        # characteristic 2: psi_c(x) = (-1)^Tr(cx), kept exact
        return 1 - 2 * F.trace[F.mul(spec.char, F.exp[idx])].astype(np.int64)
    return additive_char_values(F, spec.char)[F.exp[idx]]


def build_multiplicative(spec: MultiplicativePolySpec) -> np.ndarray:
    F = spec.field
    elems = arrangement_values(F, spec.sizes, spec.translations)
    if spec.quadratic:
        return quadratic_char_values(F)[elems]
    return multiplicative_char_values(F, spec.char)[elems]


def build(spec) -> np.ndarray:
    if isinstance(spec, AdditivePolySpec):
        return build_additive(spec)
    return build_multiplicative(spec)


def unimodularize(a: np.ndarray, fill: complex = 1) -> np.ndarray:
    """Replace every zero coefficient with the unit-magnitude value ``fill``."""
    if not math.isclose(abs(fill), 1.0, abs_tol=1e-12):
        raise ValueError(f"fill value {fill} is not of unit magnitude")
    a = np.asarray(a)
    exact_fill = complex(fill).imag == 0 and complex(fill).real in (1.0, -1.0)
    if np.issubdtype(a.dtype, np.integer) and exact_fill:
        return np.where(a == 0, int(complex(fill).real), a).astype(a.dtype)
    out = a.astype(np.complex128)
    out[out == 0] = fill
    return out


def kernel_intersection_count(spec: MultiplicativePolySpec) -> int:
    """|S intersect (ker alpha - t)|: box points whose shifted coordinates are all 0 mod p."""
    p = spec.field.p
    count = 1
    for s, t in zip(spec.sizes, spec.translations):
        r = (-t) % p
        count *= 0 if r >= s else (s - 1 - r) // p + 1
    return count


def kernel_count_bound(spec: MultiplicativePolySpec) -> int:
    return math.prod(s // spec.field.p + 1 for s in spec.sizes)


def round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


@dataclass(frozen=True)
class LimitProfile:
    """Character class, dimension, limiting sizes sigma and (quadratic only) translations tau."""

    kind: str
    e: int
    sigma: tuple
    tau: tuple | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        sigma = tuple(self.sigma)
        if len(sigma) == 1 and self.e > 1:
            sigma = sigma * self.e
        object.__setattr__(self, "sigma", sigma)
        if self.kind == "additive" and self.e != 1:
            raise ValueError("additive profiles are one-dimensional")
        if len(sigma) != self.e or any(s <= 0 for s in sigma):
            raise ValueError("need e positive limiting sizes")
        if self.kind == "quadratic":
            tau = tuple(self.tau) if self.tau is not None else (0,) * self.e
            if len(tau) == 1 and self.e > 1:
                tau = tau * self.e
            if len(tau) != self.e:
                raise ValueError("need e limiting translations")
            object.__setattr__(self, "tau", tau)
        elif self.tau is not None:
            raise ValueError("limiting translations only apply to quadratic profiles")


def family_member(profile: LimitProfile, n: int, char: int | None = None):
    """The spec for one family member: n is the prime p (multiplicative) or q (additive).

    Returns None when the field has no character of the required class (e.g. q = 3 for a
    non-quadratic family, or p = 2 for a quadratic one).
    """
    if profile.kind == "additive":
        pe = prime_power(n)
        if pe is None:
            raise ValueError(f"{n} is not a prime power")
        F = make_field(*pe)
        size = max(1, round_half_up(profile.sigma[0] * (F.q - 1)))
        return AdditivePolySpec(F, 1 if char is None else char, size, 0)
    p = n
    if profile.kind == "quadratic" and p == 2:
        return None
    F = make_field(p, profile.e)
    sizes = tuple(max(1, round_half_up(s * p)) for s in profile.sigma)
    if profile.kind == "quadratic":
        d = (F.q - 1) // 2
        trans = tuple(round_half_up(t * p) for t in profile.tau)
    else:
        d = 1 if char is None else char
        if F.q - 1 <= 2 or (F.q % 2 == 1 and d % (F.q - 1) == (F.q - 1) // 2):
            return None
        trans = (0,) * profile.e
    return MultiplicativePolySpec(F, d, sizes, trans)


def family(profile: LimitProfile, primes: Sequence[int]) -> list:
    """Size- (and translation-) stable family over the given primes (prime powers if additive)."""
    if len(primes) == 0:
        raise ValueError("empty prime list")
    out = []
    for n in primes:
        spec = family_member(profile, int(n))
        if spec is not None:
            out.append(spec)
    return out
