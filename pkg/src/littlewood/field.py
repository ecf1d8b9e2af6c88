"""Finite fields F_{p^e}, their additive and multiplicative characters, and Gauss sums.

Elements are stored as plain integers: the element ``c_0 + c_1 x + ... + c_{e-1} x^{e-1}``
(coordinates in the modulus basis) is encoded as ``c_0 + c_1 p + ... + c_{e-1} p^{e-1}``.
All element-wise tables (exp/dlog/trace) are numpy arrays indexed by that encoding.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

FIELD_CAP = 2**26


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (adequate for n below ~2^40)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    f = 3
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def primes_up_to(n: int) -> np.ndarray:
    """Sieve of Eratosthenes; returns all primes <= n in ascending order."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for k in range(2, math.isqrt(n) + 1):
        if sieve[k]:
            sieve[k * k :: k] = False
    return np.flatnonzero(sieve)


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, e) with q = p**e, or None if q is not a prime power."""
    if q < 2:
        return None
    fs = prime_factors(q)
    if len(fs) != 1:
        return None
    p = fs[0]
    e = round(math.log(q, p))
    for cand in (e - 1, e, e + 1):
        if cand >= 1 and p**cand == q:
            return p, cand
    return None


# --- polynomials over Z/pZ, coefficient lists low-degree first -------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = [x % p for x in a]
    _trim(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * mi) % p
        _trim(a)
    return a


def _pmulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    return _pmod(prod, m, p)


def _ppowmod(a: Sequence[int], n: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, m, p)
    while n:
        if n & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        n >>= 1
    return result


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over Z/pZ (coefficients low-degree first).

    Degree <= 3 is decided by root search; higher degrees use the gcd(f, x^(p^i) - x) test
    for i <= deg/2.
    """
    deg = len(modulus) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    if deg <= 3:
        for a in range(p):
            if sum(c * pow(a, i, p) for i, c in enumerate(modulus)) % p == 0:
                return False
        return True
    h = [0, 1]
    for _ in range(deg // 2):
        h = _ppowmod(h, p, modulus, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(modulus, diff, p)) != 1:
            return False
    return True


# --- the field ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """An immutable finite field F_q, q = p**e, with its discrete-log machinery.

    ``exp[k]`` is g**k (length q-1); ``dlog[x]`` is the exponent of x base g, with
    ``dlog[0] == -1``; ``trace[x]`` is the absolute trace of x as an integer in [0, p).
    """

    p: int
    e: int
    modulus: tuple[int, ...]
    g: int
    exp: np.ndarray = dc_field(repr=False)
    dlog: np.ndarray = dc_field(repr=False)
    trace: np.ndarray = dc_field(repr=False)

    @property
    def q(self) -> int:
        return self.p**self.e

    def coords(self, x: int) -> tuple[int, ...]:
        self.check(x)
        out = []
        for _ in range(self.e):
            x, r = divmod(x, self.p)
            out.append(r)
        return tuple(out)

    def element(self, coords: Sequence[int]) -> int:
        if len(coords) != self.e or any(not 0 <= c < self.p for c in coords):
            raise ValueError(f"coordinates {tuple(coords)} are not reduced mod {self.p}")
        return sum(c * self.p**i for i, c in enumerate(coords))

    def check(self, x: int) -> int:
        if not 0 <= int(x) < self.q:
            raise ValueError(f"{x} is not an element of F_{self.q}")
        return int(x)

    def digits(self, xs) -> np.ndarray:
        """Coordinate matrix (..., e) of an array of encoded elements."""
        xs = np.asarray(xs, dtype=np.int64)
        return (xs[..., None] // (self.p ** np.arange(self.e, dtype=np.int64))) % self.p

    def encode(self, digits: np.ndarray) -> np.ndarray:
        return np.asarray(digits, dtype=np.int64) @ (self.p ** np.arange(self.e, dtype=np.int64))

    def add(self, x, y):
        return self.encode((self.digits(x) + self.digits(y)) % self.p)

    def neg(self, x):
        return self.encode((-self.digits(x)) % self.p)

    def mul(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        k = (self.dlog[x].astype(np.int64) + self.dlog[y]) % (self.q - 1)
        out = self.exp[k].astype(np.int64)
        return np.where((x == 0) | (y == 0), 0, out)

    def power(self, x: int, n: int) -> int:
        x = self.check(x)
        if x == 0:
            return 0 if n > 0 else 1
        return int(self.exp[(int(self.dlog[x]) * n) % (self.q - 1)])

    def addition_table(self) -> np.ndarray:
        """q x q table of x + y; only for small fields."""
        if self.q > 4096:
            raise ValueError("addition table is only built for q <= 4096")
        d = self.digits(np.arange(self.q))
        return self.encode((d[:, None, :] + d[None, :, :]) % self.p)

    def info(self) -> dict:
        return {"p": self.p, "e": self.e, "q": self.q, "modulus": list(self.modulus),
                "modulus_str": poly_str(self.modulus), "g": self.g,
                "g_coords": list(self.coords(self.g))}


def poly_str(coeffs: Sequence[int]) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"


def _mul_by_const_matrix(c: Sequence[int], modulus: Sequence[int], p: int, e: int) -> np.ndarray:
    # row i holds the coordinates of c * x^i
    rows = []
    cur = list(c)
    for _ in range(e):
        r = _pmod(cur, modulus, p)
        rows.append(r + [0] * (e - len(r)))
        cur = [0] + r
    return np.array(rows, dtype=np.int64)


def make_field(p: int, e: int = 1, cap: int = FIELD_CAP) -> FieldSpec:
    """Build F_{p^e} with the smallest irreducible modulus and smallest primitive element.

    Monic moduli are ordered by the integer encoding of their lower coefficients (the
    x^{e-1} coefficient most significant), so F_8 gets x^3+x+1 and F_9 gets x^2+1. For
    e = 1 the modulus is x and elements are the residues themselves.
    """
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise ValueError(f"{p} is not prime")
    if e < 1:
        raise ValueError("extension degree must be positive")
    p, e = int(p), int(e)
    q = p**e
    if q > cap:
        raise ValueError(f"field order {q} exceeds cap {cap}")

    if e == 1:
        modulus: tuple[int, ...] = (0, 1)
    else:
        for enc in range(p**e):
            low = [(enc // p**i) % p for i in range(e)]
            if is_irreducible(low + [1], p):
                modulus = tuple(low + [1])
                break
        else:  # pragma: no cover - irreducibles of every degree exist
            raise RuntimeError(f"no irreducible polynomial of degree {e} over F_{p}")

    def to_poly(x: int) -> list[int]:
        return [(x // p**i) % p for i in range(e)]

    def to_int(poly: Sequence[int]) -> int:
        return sum(c * p**i for i, c in enumerate(poly))

    def spow(x: int, n: int) -> int:
        if e == 1:
            return pow(x, n, p)
        r = _ppowmod(to_poly(x), n, modulus, p)
        return to_int(r)

    order_factors = prime_factors(q - 1)
    for cand in range(1, q):
        if all(spow(cand, (q - 1) // r) != 1 for r in order_factors):
            g = cand
            break
    else:  # pragma: no cover
        raise RuntimeError(f"no primitive element found in F_{q}")

    # powers of g by block doubling: block [n, 2n) = block [0, n) * g^n
    place = p ** np.arange(e, dtype=np.int64)
    exp = np.empty(q - 1, dtype=np.int64)
    exp[0] = 1
    n = 1
    while n < q - 1:
        gn = spow(g, n)
        mat = _mul_by_const_matrix(to_poly(gn), modulus, p, e)
        take = min(n, q - 1 - n)
        d = (exp[:take, None] // place) % p
        exp[n : n + take] = ((d @ mat) % p) @ place
        n += take

    dlog = np.full(q, -1, dtype=np.int64)
    dlog[exp] = np.arange(q - 1, dtype=np.int64)
    if dlog[0] != -1 or np.count_nonzero(dlog[1:] >= 0) != q - 1:
        raise RuntimeError("discrete-log table is not a bijection")

    # trace of basis element x^i, then extend F_p-linearly
    tr_basis = np.zeros(e, dtype=np.int64)
    for i in range(e):
        b = p**i
        total = [0] * e
        for k in range(e):
            y = to_poly(spow(b, p**k)) if e > 1 else [pow(b, p**k, p)]
            total = [(a + c) % p for a, c in zip(total, y)]
        if any(total[1:]):
            raise RuntimeError("trace left the prime field")
        tr_basis[i] = total[0]
    all_digits = (np.arange(q, dtype=np.int64)[:, None] // place) % p
    trace = (all_digits @ tr_basis) % p

    for arr in (exp, dlog, trace):
        arr.flags.writeable = False
    return FieldSpec(p, e, modulus, g, exp, dlog, trace)


# --- characters -----------------------------------------------------------------


@dataclass(frozen=True)
class AdditiveCharacterId:
    """The character x -> exp(2 pi i Tr(c x) / p); c = 0 is the trivial one."""

    c: int

    @property
    def trivial(self) -> bool:
        return self.c == 0


@dataclass(frozen=True)
class MultiplicativeCharacterId:
    """The character g^k -> exp(2 pi i d k / (q-1)), extended by 0 at 0 when nontrivial."""

    d: int

    def normalized(self, F: FieldSpec) -> "MultiplicativeCharacterId":
        return MultiplicativeCharacterId(self.d % (F.q - 1))

    def is_trivial(self, F: FieldSpec) -> bool:
        return self.d % (F.q - 1) == 0

    def order(self, F: FieldSpec) -> int:
        return (F.q - 1) // math.gcd(self.d % (F.q - 1), F.q - 1)

    def is_quadratic(self, F: FieldSpec) -> bool:
        return F.q % 2 == 1 and self.d % (F.q - 1) == (F.q - 1) // 2


def quadratic_character(F: FieldSpec) -> MultiplicativeCharacterId:
    if F.q % 2 == 0:
        raise ValueError("no quadratic character in characteristic 2")
    return MultiplicativeCharacterId((F.q - 1) // 2)


def _as_c(c) -> int:
    return c.c if isinstance(c, AdditiveCharacterId) else int(c)


def _as_d(d) -> int:
    return d.d if isinstance(d, MultiplicativeCharacterId) else int(d)


def eval_additive_char(F: FieldSpec, c, x: int) -> complex:
    c, x = F.check(_as_c(c)), F.check(x)
    t = int(F.trace[int(F.mul(c, x))])
    return cmath.exp(2j * math.pi * t / F.p)


def eval_multiplicative_char(F: FieldSpec, d, x: int) -> complex:
    d = _as_d(d) % (F.q - 1)
    x = F.check(x)
    if x == 0:
        if d == 0:
            raise ValueError("the trivial multiplicative character is not defined at 0")
        return 0j
    return cmath.exp(2j * math.pi * d * int(F.dlog[x]) / (F.q - 1))


def additive_char_values(F: FieldSpec, c) -> np.ndarray:
    """psi_c(x) for every x in F_q, as a complex vector of length q."""
    c = F.check(_as_c(c))
    tr = F.trace[F.mul(c, np.arange(F.q))]
    return np.exp(2j * np.pi * tr / F.p)


def multiplicative_char_values(F: FieldSpec, d) -> np.ndarray:
    """chi_d(x) for every x; entry 0 is 0 for nontrivial chi and 1 for the trivial one."""
    d = _as_d(d) % (F.q - 1)
    vals = np.exp(2j * np.pi * ((d * F.dlog) % (F.q - 1)) / (F.q - 1))
    vals[0] = 1.0 if d == 0 else 0.0
    return vals


def quadratic_char_values(F: FieldSpec) -> np.ndarray:
    """Exact quadratic character (values in {-1, 0, 1}) for odd q."""
    if F.q % 2 == 0:
        raise ValueError("no quadratic character in characteristic 2")
    vals = np.where(F.dlog % 2 == 0, 1, -1).astype(np.int64)
    vals[0] = 0
    return vals


def gauss_sum(F: FieldSpec, psi, chi) -> complex:
    """G(psi, chi) = sum over nonzero a of psi(a) chi(a), by direct summation."""
    a = np.arange(1, F.q)
    return complex(np.sum(additive_char_values(F, psi)[a] * multiplicative_char_values(F, chi)[a]))


def gauss_sum_matrix(F: FieldSpec) -> np.ndarray:
    """All Gauss sums at once: entry [c, d] is G(psi_c, chi_d), c in F_q, d in Z/(q-1)."""
    a = np.arange(1, F.q)
    add = np.exp(2j * np.pi * F.trace[F.mul(np.arange(F.q)[:, None], a[None, :])] / F.p)
    k = F.dlog[a]
    mult = np.exp(2j * np.pi * np.outer(np.arange(F.q - 1), k) / (F.q - 1))
    return add @ mult.T
