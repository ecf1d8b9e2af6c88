"""L2 and L4 norms, norm ratio and merit factor of multivariate coefficient arrays.

Three independent L4 evaluators:

* ``oracle``: the literal quadruple sum over a + b = c + d, O(N^3).
* ``autocorrelation``: sum over shifts u of |C(u)|^2, exact for integer arrays, O(N^2).
* ``sampled-dft``: mean of |f|^4 on a grid of 2^k >= 2 s - 1 points per axis, O(M log M).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, asdict
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy import signal

METHODS = ("oracle", "autocorrelation", "sampled-dft")
ORACLE_MAX = 2000
AUTOCORR_DEFAULT_MAX = 4096


def is_exact(a: np.ndarray) -> bool:
    return np.issubdtype(np.asarray(a).dtype, np.integer)


def l2_sq(a: np.ndarray):
    a = np.asarray(a)
    if is_exact(a):
        return int(np.count_nonzero(a)) if np.all(np.abs(a) <= 1) else int(np.sum(a.astype(object) ** 2))
    return float(np.sum(np.abs(a) ** 2))


def autocorrelation(a: np.ndarray, u: Sequence[int] | int):
    """C(u) = sum_j a[j+u] * conj(a[j]) over indices where both are in range."""
    a = np.asarray(a)
    u = (u,) if np.isscalar(u) else tuple(u)
    if len(u) != a.ndim:
        raise ValueError("shift dimension does not match the array")
    hi, lo = [], []
    for uk, sk in zip(u, a.shape):
        if abs(uk) >= sk:
            return 0
        hi.append(slice(max(uk, 0), sk + min(uk, 0)))
        lo.append(slice(max(-uk, 0), sk + min(-uk, 0)))
    prod = a[tuple(hi)] * np.conj(a[tuple(lo)])
    if is_exact(a) or a.dtype == object:
        return int(prod.sum())
    return complex(prod.sum())


def autocorrelation_array(a: np.ndarray) -> np.ndarray:
    """All aperiodic autocorrelations; entry at index u + (s - 1) holds C(u)."""
    a = np.asarray(a)
    if not is_exact(a):
        return signal.correlate(a, a, mode="full", method="direct")
    if int(np.abs(a).max(initial=0)) ** 2 * a.size < 2**62:
        return signal.correlate(a.astype(np.int64), a.astype(np.int64), mode="full", method="direct")
    # values past int64: shift by shift with Python integers
    out = np.empty(tuple(2 * s - 1 for s in a.shape), dtype=object)
    big = a.astype(object)
    for u in itertools.product(*[range(-(s - 1), s) for s in a.shape]):
        out[tuple(uk + sk - 1 for uk, sk in zip(u, a.shape))] = autocorrelation(big, u)
    return out


def _sum_sq_exact(c: np.ndarray) -> int:
    if c.dtype != object and int(np.abs(c).max(initial=0)) ** 2 * c.size < 2**62:
        return int(np.sum(c * c))
    c = c.astype(object)
    return int(np.sum(c * c))


def _l4_autocorrelation(a: np.ndarray):
    c = autocorrelation_array(a)
    if is_exact(a):
        return _sum_sq_exact(c)
    return float(np.sum(np.abs(c) ** 2))


def dft_grid(shape: Sequence[int]) -> tuple[int, ...]:
    return tuple(1 << max(0, int(2 * s - 2).bit_length()) for s in shape)


def sample_on_grid(a: np.ndarray) -> np.ndarray:
    """f evaluated on the product grid of roots of unity used by the sampled-dft method."""
    a = np.asarray(a)
    return np.fft.fftn(a.astype(np.complex128), s=dft_grid(a.shape), axes=tuple(range(a.ndim)))


def _l4_sampled(a: np.ndarray) -> float:
    mag2 = np.abs(sample_on_grid(a)) ** 2
    return float(np.mean(mag2 * mag2))


def _l4_oracle(a: np.ndarray, max_n: int = ORACLE_MAX):
    a = np.asarray(a)
    n = a.size
    if n > max_n:
        raise ValueError(f"oracle quadruple sum limited to {max_n} coefficients, got {n}")
    shape = np.array(a.shape)
    idx = np.array(list(itertools.product(*[range(s) for s in a.shape])), dtype=np.int64).reshape(n, a.ndim)
    flat = a.reshape(-1)
    strides = np.array([int(np.prod(a.shape[k + 1 :])) for k in range(a.ndim)], dtype=np.int64)
    exact = is_exact(a)
    vals = flat.astype(np.int64) if exact else flat.astype(np.complex128)
    total = 0
    # for each a in the chunk: sum over (b, c) with d = a + b - c in the box
    chunk = max(1, 2_000_000 // (n * n))
    for start in range(0, n, chunk):
        ia = np.arange(start, min(n, start + chunk))
        d = idx[ia][:, None, None, :] + idx[None, :, None, :] - idx[None, None, :, :]
        ok = np.all((d >= 0) & (d < shape), axis=-1)
        ai, bi, ci = np.nonzero(ok)
        di = d[ai, bi, ci] @ strides
        term = vals[ia[ai]] * vals[bi] * np.conj(vals[ci] * vals[di])
        total += int(term.sum()) if exact else complex(term.sum())
    if exact:
        return int(total)
    return float(np.real(total))


def l4p4(a: np.ndarray, method: str | None = None):
    """Fourth power of the L4 norm on the unit torus."""
    a = np.asarray(a)
    if method is None:
        method = "autocorrelation" if a.size <= AUTOCORR_DEFAULT_MAX else "sampled-dft"
    if method == "oracle":
        return _l4_oracle(a)
    if method == "autocorrelation":
        return _l4_autocorrelation(a)
    if method == "sampled-dft":
        return _l4_sampled(a)
    raise ValueError(f"unknown method {method!r}; choose from {METHODS}")


@dataclass
class NormReport:
    l2sq: float
    l4p4: float
    ratio4: float
    merit_factor: float | None
    method: str

    def to_dict(self) -> dict:
        return asdict(self)


def report(a: np.ndarray, method: str | None = None) -> NormReport:
    a = np.asarray(a)
    if method is None:
        method = "autocorrelation" if a.size <= AUTOCORR_DEFAULT_MAX else "sampled-dft"
    l2 = l2_sq(a)
    l4 = l4p4(a, method)
    if isinstance(l4, int) and isinstance(l2, int):
        ratio = float(Fraction(l4, l2 * l2)) if l2 else float("nan")
        denom = l4 - l2 * l2
        merit = float(Fraction(l2 * l2, denom)) if denom > 0 else None
    else:
        ratio = l4 / (l2 * l2) if l2 else float("nan")
        denom = l4 - l2 * l2
        merit = l2 * l2 / denom if denom > 0 else None
    return NormReport(l2, l4, ratio, merit, method)


def exact_ratio4(a: np.ndarray) -> Fraction:
    """ratio4 as an exact rational for integer arrays."""
    if not is_exact(a):
        raise ValueError("exact ratio needs an integer array")
    l2 = l2_sq(a)
    return Fraction(_l4_autocorrelation(np.asarray(a)), l2 * l2)
