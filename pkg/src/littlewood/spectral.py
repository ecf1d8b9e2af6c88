"""L4 norms from Fourier interpolation with Gauss sums, and the H-sum estimates.

For a finite abelian group with m characters, coefficients F_{pi(u)} on a box U and
Fourier transform hat(F), the fourth power of the L4 norm is

    m^-5 * sum_{kappa,lambda,mu,nu} W(kappa,lambda,mu,nu) * H(kappa,lambda,mu,nu)

with W the character sum over a + b = c + d in U and H the xi-sum of four transform
values. Both are formed as Gram matrices indexed by character pairs: the a + b = c + d
constraint is imposed by averaging over a torus grid with more than 4(s - 1) points per
axis, and H = R R^* with R[(kappa, lambda), xi] = hat[xi kappa] hat[xi lambda].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .field import FieldSpec, gauss_sum_matrix
from .norms import l4p4
from .polybuild import AdditivePolySpec, MultiplicativePolySpec, arrangement_values

GAUSS_L4_MAX_Q = 16


def _constraint_grid(shape) -> tuple[int, ...]:
    return tuple(1 << max(0, int(4 * s - 4).bit_length()) for s in shape)


def interpolated_l4(hat: np.ndarray, shift: np.ndarray, char_on_box: np.ndarray) -> float:
    """Quintuple-sum L4^4 from Fourier data.

    hat[i]          Fourier coefficient at character i (length m)
    shift[xi, k]    index of the product character xi * k
    char_on_box[i]  values eta_i'(u) for u in U, shaped like the box
    """
    m = hat.shape[0]
    box = char_on_box.shape[1:]
    grid = _constraint_grid(box)
    axes = tuple(range(1, char_on_box.ndim))
    B = np.fft.fftn(np.conj(char_on_box), s=grid, axes=axes).reshape(m, -1)
    P = (B[:, None, :] * B[None, :, :]).reshape(m * m, -1)
    W = (P @ P.conj().T) / P.shape[1]
    R = (hat[shift][:, :, None] * hat[shift][:, None, :])  # [xi, kappa, lambda]
    R = R.transpose(1, 2, 0).reshape(m * m, m)
    H = R @ R.conj().T
    return float(np.real(np.sum(W * H))) / m**5


def cyclic_l4_direct(values: np.ndarray, start: int, length: int) -> float:
    """L4^4 of F(z) = sum_{u in U} F_{u mod m} z^u by the plain quadruple sum."""
    m = len(values)
    coeffs = np.asarray(values, dtype=np.complex128)[(np.arange(length) + start) % m]
    return l4p4(coeffs, "oracle")


def cyclic_l4_fourier(values: np.ndarray, start: int, length: int) -> float:
    """Same quantity for the group Z/m via the Fourier-interpolation identity."""
    values = np.asarray(values, dtype=np.complex128)
    m = len(values)
    k = np.arange(m)
    hat = np.exp(2j * np.pi * np.outer(k, k) / m) @ values
    shift = (k[:, None] + k[None, :]) % m
    u = np.arange(start, start + length)
    char_on_box = np.exp(2j * np.pi * np.outer(k, u) / m)
    return interpolated_l4(hat, shift, char_on_box)


def _guard(F: FieldSpec, max_q: int):
    if F.q > max_q:
        raise ValueError(f"Gauss-sum L4 evaluation limited to q <= {max_q}, got {F.q}")


def l4_via_gauss_additive(spec: AdditivePolySpec, max_q: int = GAUSS_L4_MAX_Q) -> float:
    F = spec.field
    _guard(F, max_q)
    m = F.q - 1
    hat = gauss_sum_matrix(F)[spec.char]  # G(psi, eta_d), d in Z/(q-1)
    k = np.arange(m)
    shift = (k[:, None] + k[None, :]) % m
    u = np.arange(spec.size) + spec.translation
    # eta_d'(u) = eta_d(g^u)
    char_on_box = np.exp(2j * np.pi * np.outer(k, u) / m)
    return interpolated_l4(hat, shift, char_on_box)


def _additive_chars_on_box(F: FieldSpec, sizes, translations) -> np.ndarray:
    elems = arrangement_values(F, sizes, translations)
    c = np.arange(F.q).reshape((F.q,) + (1,) * len(sizes))
    tr = F.trace[F.mul(c, elems[None, ...])]
    return np.exp(2j * np.pi * tr / F.p)


def l4_via_gauss_multiplicative(spec: MultiplicativePolySpec, max_q: int = GAUSS_L4_MAX_Q) -> float:
    F = spec.field
    _guard(F, max_q)
    hat = gauss_sum_matrix(F)[:, spec.char]  # G(eta_c, chi), c in F_q
    shift = F.addition_table()
    char_on_box = _additive_chars_on_box(F, spec.sizes, spec.translations)
    return interpolated_l4(hat, shift, char_on_box)


# --- H sums ------------------------------------------------------------------------


@dataclass
class HQuadruple:
    kappa: int
    lam: int
    mu: int
    nu: int
    H: complex
    M: float

    @property
    def slack(self) -> float:
        return abs(self.H - self.M)


def additive_bound(q: int) -> float:
    return (q - 1) * q * math.sqrt(q)


def multiplicative_bound(q: int) -> float:
    return 3 * q * q * math.sqrt(q)


def h_additive(F: FieldSpec, psi: int, kappa: int, lam: int, mu: int, nu: int,
               table: np.ndarray | None = None) -> HQuadruple:
    """H for the additive case: xi ranges over multiplicative characters (indices mod q-1)."""
    if psi % F.q == 0:
        raise ValueError("main additive character must be nontrivial")
    m = F.q - 1
    G = gauss_sum_matrix(F)[psi] if table is None else table
    xi = np.arange(m)
    H = np.sum(G[(xi + kappa) % m] * G[(xi + lam) % m] * np.conj(G[(xi + mu) % m] * G[(xi + nu) % m]))
    same = sorted([kappa % m, lam % m]) == sorted([mu % m, nu % m])
    M = float(m**3) if same else 0.0
    return HQuadruple(kappa, lam, mu, nu, complex(H), M)


def h_multiplicative(F: FieldSpec, chi: int, kappa: int, lam: int, mu: int, nu: int,
                     table: np.ndarray | None = None) -> HQuadruple:
    """H for the multiplicative case: xi ranges over additive characters (field elements)."""
    chi %= F.q - 1
    if chi == 0:
        raise ValueError("main multiplicative character must be nontrivial")
    G = gauss_sum_matrix(F)[:, chi] if table is None else table
    xi = np.arange(F.q)
    add = F.add
    H = np.sum(G[add(xi, kappa)] * G[add(xi, lam)] * np.conj(G[add(xi, mu)] * G[add(xi, nu)]))
    quadratic = F.q % 2 == 1 and chi == (F.q - 1) // 2
    same = sorted([kappa, lam]) == sorted([mu, nu])
    M = float(F.q**3) if same or (quadratic and kappa == lam and mu == nu) else 0.0
    return HQuadruple(kappa, lam, mu, nu, complex(H), M)


def _pair_multiset_equal(m: int) -> np.ndarray:
    k = np.arange(m)
    kap, lam, mu, nu = np.meshgrid(k, k, k, k, indexing="ij")
    same = ((kap == mu) & (lam == nu)) | ((kap == nu) & (lam == mu))
    return same.reshape(m * m, m * m), (kap == lam).reshape(m * m, m * m), (mu == nu).reshape(m * m, m * m)


def h_all_additive(F: FieldSpec, psi: int) -> tuple[np.ndarray, np.ndarray]:
    """(H, M) over every 4-tuple, as (q-1)^2 x (q-1)^2 matrices indexed by pairs."""
    m = F.q - 1
    G = gauss_sum_matrix(F)[psi]
    k = np.arange(m)
    shift = (k[:, None] + k[None, :]) % m
    R = (G[shift][:, :, None] * G[shift][:, None, :]).transpose(1, 2, 0).reshape(m * m, m)
    H = R @ R.conj().T
    same, _, _ = _pair_multiset_equal(m)
    return H, np.where(same, float(m**3), 0.0)


def h_all_multiplicative(F: FieldSpec, chi: int) -> tuple[np.ndarray, np.ndarray]:
    q = F.q
    chi %= q - 1
    G = gauss_sum_matrix(F)[:, chi]
    shift = F.addition_table()
    R = (G[shift][:, :, None] * G[shift][:, None, :]).transpose(1, 2, 0).reshape(q * q, q)
    H = R @ R.conj().T
    same, kl, mn = _pair_multiset_equal(q)
    quadratic = q % 2 == 1 and chi == (q - 1) // 2
    main = same | (kl & mn) if quadratic else same
    return H, np.where(main, float(q**3), 0.0)


# --- the character-sum bound on segments -------------------------------------------


def _segment_quadruples(n: int) -> np.ndarray:
    a, b, c = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    d = a + b - c
    ok = (d >= 0) & (d < n)
    return np.stack([a[ok], b[ok], c[ok], d[ok]], axis=1)


def segment_sum_bound(m: int, n: int) -> float:
    return 64 * m * max(m, n) ** 3 * (1 + math.log(m)) ** 3


def segment_sum_T(m: int, U: range | tuple[int, int]) -> tuple[float, float]:
    """T for the cyclic group Z/m and segment U, via the reparameterized triple sum.

    Returns (T, bound). Translating U does not change T, so only its length matters.
    """
    n = len(U) if isinstance(U, range) else int(U[1])
    if m > 8 or n > 10 or m < 1 or n < 1:
        raise ValueError("segment_sum_T is limited to m <= 8 and |U| <= 10")
    quads = _segment_quadruples(n)
    b, c, d = quads[:, 1], quads[:, 2], quads[:, 3]
    k = np.arange(m)
    xp, yp, zp = np.meshgrid(k, k, k, indexing="ij")
    phase = (-xp.reshape(-1, 1) * b + yp.reshape(-1, 1) * c + zp.reshape(-1, 1) * d) % m
    inner = np.exp(2j * np.pi * phase / m).sum(axis=1)
    T = m * float(np.abs(inner).sum())
    bound = segment_sum_bound(m, n)
    if T > bound:
        raise AssertionError(f"T = {T} exceeds bound {bound} for m={m}, |U|={n}")
    return T, bound
