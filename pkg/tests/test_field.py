import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from littlewood.field import (
    eval_additive_char,
    eval_multiplicative_char,
    gauss_sum,
    gauss_sum_matrix,
    is_irreducible,
    is_prime,
    make_field,
    multiplicative_char_values,
    prime_power,
    primes_up_to,
    quadratic_char_values,
)

SMALL_Q = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (7, 2)]


def naive_irreducible(coeffs, p):
    """Brute force: no monic factor of degree <= deg/2, checked by polynomial division."""
    import itertools

    deg = len(coeffs) - 1
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            div = list(low) + [1]
            rem = list(coeffs)
            for i in range(deg - d, -1, -1):
                c = rem[i + d] % p
                for j in range(d + 1):
                    rem[i + j] = (rem[i + j] - c * div[j]) % p
            if not any(r % p for r in rem[:d]):
                return False
    return True


def test_known_moduli():
    assert make_field(2, 3).modulus == (1, 1, 0, 1)  # x^3 + x + 1
    assert make_field(3, 2).modulus == (1, 0, 1)  # x^2 + 1
    assert make_field(2, 2).modulus == (1, 1, 1)
    assert make_field(2, 4).modulus == (1, 1, 0, 0, 1)


@pytest.mark.parametrize("p,e", SMALL_Q)
def test_modulus_irreducible_and_g_primitive(p, e):
    F = make_field(p, e)
    assert naive_irreducible(list(F.modulus), p)
    assert is_irreducible(list(F.modulus), p)
    assert sorted(F.exp[: F.q - 1].tolist()) == list(range(1, F.q))
    assert F.dlog[0] == -1


@pytest.mark.parametrize("p,e", [(2, 3), (3, 2), (5, 2)])
def test_modulus_is_smallest(p, e):
    F = make_field(p, e)
    # lower coefficients read as base-p digits, constant term least significant
    mine = sum(c * p**i for i, c in enumerate(F.modulus[:-1]))
    for code in range(mine):
        digits = [(code // p**i) % p for i in range(e)]
        assert not naive_irreducible(digits + [1], p)


@pytest.mark.parametrize("p,e", SMALL_Q)
def test_trace_matches_frobenius_sum(p, e):
    F = make_field(p, e)
    for x in range(F.q):
        acc, y = 0, x
        for _ in range(e):
            acc = F.add(acc, y)
            y = F.power(y, p)
        assert acc < p and acc == F.trace[x]


field_and_triple = st.sampled_from(SMALL_Q).flatmap(
    lambda pe: st.tuples(st.just(pe), *[st.integers(0, pe[0] ** pe[1] - 1)] * 3))


@settings(max_examples=200, deadline=None)
@given(field_and_triple)
def test_field_axioms(args):
    (p, e), x, y, z = args
    F = make_field(p, e)
    assert F.add(F.add(x, y), z) == F.add(x, F.add(y, z))
    assert F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z))
    assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
    assert F.add(x, F.neg(x)) == 0
    if x:
        inv = F.exp[(-F.dlog[x]) % (F.q - 1)]
        assert F.mul(x, inv) == 1


def test_prime_helpers():
    assert [int(p) for p in primes_up_to(30)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert all(is_prime(int(p)) for p in primes_up_to(2000))
    assert sum(map(is_prime, range(2000))) == len(primes_up_to(2000))
    assert prime_power(1024) == (2, 10)
    assert prime_power(12) is None
    assert prime_power(1) is None


def test_quadratic_character_is_euler_criterion():
    for p in (3, 7, 13, 101):
        F = make_field(p)
        chi = quadratic_char_values(F)
        for x in range(1, p):
            assert chi[x] == (1 if pow(x, (p - 1) // 2, p) == 1 else -1)
        assert chi[0] == 0


@pytest.mark.parametrize("p,e", [(5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1)])
def test_gauss_magnitude(p, e):
    F = make_field(p, e)
    G = gauss_sum_matrix(F)
    np.testing.assert_allclose(np.abs(G[1:, 1:]), math.sqrt(F.q), atol=1e-9)
    assert abs(G[2 % F.q, 1] - gauss_sum(F, 2 % F.q, 1)) < 1e-9


def test_character_scalars():
    F = make_field(3, 2)
    assert abs(eval_additive_char(F, 0, 5) - 1) < 1e-15
    assert eval_multiplicative_char(F, 1, 0) == 0
    with pytest.raises(ValueError):
        eval_multiplicative_char(F, 0, 0)
    vals = multiplicative_char_values(F, 0)
    assert vals[0] == 1


def test_invalid_inputs():
    with pytest.raises(ValueError):
        make_field(4)
    F = make_field(3, 2)
    with pytest.raises(ValueError):
        F.element((3, 0))
    assert F.element(F.coords(7)) == 7


def test_small_generators_and_trace():
    assert make_field(7).g == 3
    F5 = make_field(5)
    assert F5.g == 2 and F5.modulus == (0, 1)
    F8 = make_field(2, 3)
    assert F8.g == 2  # the element x
    assert F8.trace[2] == 0
    assert abs(eval_additive_char(F8, 1, 2) - 1) < 1e-15
    assert abs(eval_additive_char(F5, 1, 1) - np.exp(2j * np.pi / 5)) < 1e-15
