from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from littlewood.norms import (
    autocorrelation,
    autocorrelation_array,
    exact_ratio4,
    l2_sq,
    l4p4,
    report,
    sample_on_grid,
)

BARKER_13 = [1, 1, 1, 1, 1, -1, -1, 1, 1, -1, 1, -1, 1]


def pm_arrays(max_dims=2, max_side=9):
    shapes = st.lists(st.integers(1, max_side), min_size=1, max_size=max_dims).map(tuple)
    return shapes.flatmap(lambda s: arrays(np.int64, s, elements=st.sampled_from([-1, 1])))


def test_fekete_seven_all_methods():
    a = np.array([0, 1, 1, -1, 1, -1, -1])
    assert l2_sq(a) == 6
    assert l4p4(a, "oracle") == l4p4(a, "autocorrelation") == 50
    assert abs(l4p4(a, "sampled-dft") - 50) < 1e-9
    assert autocorrelation(a, 1) == -1 and autocorrelation(a, 4) == -2
    assert report(a).merit_factor == pytest.approx(18 / 7, abs=1e-15)


def test_known_merit_factors():
    assert l4p4(np.array([1, 1])) == 6
    assert report(np.array([1, 1])).merit_factor == 2
    assert exact_ratio4(np.array(BARKER_13)) == Fraction(169 + 2 * 6, 169)
    assert report(np.array(BARKER_13)).merit_factor == pytest.approx(169 / 12)
    assert report(np.array([1])).merit_factor is None


@settings(max_examples=150, deadline=None)
@given(pm_arrays(max_dims=3, max_side=7))
def test_three_methods_agree(a):
    exact = l4p4(a, "oracle")
    assert l4p4(a, "autocorrelation") == exact
    assert abs(l4p4(a, "sampled-dft") - exact) <= 1e-9 * exact


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 40), st.integers(0, 2**32 - 1))
def test_complex_coefficients(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=n) + 1j * rng.normal(size=n)
    o = l4p4(a, "oracle")
    assert l4p4(a, "autocorrelation") == pytest.approx(o, rel=1e-9)
    assert l4p4(a, "sampled-dft") == pytest.approx(o, rel=1e-9)
    assert np.mean(np.abs(sample_on_grid(a)) ** 2) == pytest.approx(l2_sq(a), rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(pm_arrays(max_dims=1, max_side=25), pm_arrays(max_dims=1, max_side=25))
def test_product_rule(f, g):
    assert exact_ratio4(np.multiply.outer(f, g)) == exact_ratio4(f) * exact_ratio4(g)


@settings(max_examples=60, deadline=None)
@given(pm_arrays(max_dims=2, max_side=12))
def test_symmetries(a):
    v = l4p4(a)
    assert l4p4(-a) == v
    assert l4p4(a[::-1]) == v
    assert l4p4(a.T) == v
    c = autocorrelation_array(a)
    assert c[tuple(s - 1 for s in a.shape)] == l2_sq(a)


def test_large_integers_do_not_overflow():
    a = np.full(12, 2**20, dtype=np.int64)
    expect = sum((12 - abs(u)) ** 2 for u in range(-11, 12)) * 2**80
    assert l4p4(a, "autocorrelation") == expect


def test_guards():
    with pytest.raises(ValueError):
        l4p4(np.ones(2001, dtype=int), "oracle")
    with pytest.raises(ValueError):
        l4p4(np.ones(3, dtype=int), "nope")
    with pytest.raises(ValueError):
        exact_ratio4(np.ones(3))
    with pytest.raises(ValueError):
        autocorrelation(np.ones((2, 2)), 1)
    assert autocorrelation(np.ones(3, dtype=int), 5) == 0


def test_default_method_switches_to_sampling():
    assert report(np.ones(10, dtype=int)).method == "autocorrelation"
    assert report(np.ones(5000, dtype=int)).method == "sampled-dft"


def test_unimodularized_fekete():
    from littlewood.polybuild import unimodularize

    a = unimodularize(np.array([0, 1, 1, -1, 1, -1, -1]))
    assert l2_sq(a) == 7 and l4p4(a, "oracle") == 63
