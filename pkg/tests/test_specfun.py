import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import (
    bisect_bessel_zeros,
    mp_besseli,
    mp_besselj,
    mp_besselk,
    mp_bessely,
    mp_sph_i,
    mp_sph_k,
)
from tdbie.errors import DomainError
from tdbie.specfun import (
    bessel_j,
    bessel_j_zero,
    bessel_j_zeros,
    bessel_y,
    mod_bessel_i,
    mod_bessel_k,
    sph_bessel_i,
    sph_bessel_k,
)

right_half = st.builds(complex, st.floats(0.05, 30.0), st.floats(-30.0, 30.0))
orders = st.integers(0, 40)


@pytest.mark.parametrize("n", [0, 1, 2, 5, 13, 40])
@pytest.mark.parametrize("z", [0.1, 1.0, 2.5 + 3j, 7 - 0.5j, 0.3 + 12j, 25.0])
def test_modified_bessel_against_mpmath(n, z):
    for der in (False, True):
        ref_i = mp_besseli(n, z, der)
        ref_k = mp_besselk(n, z, der)
        assert abs(mod_bessel_i(n, z, derivative=der) - ref_i) <= 1e-12 * abs(ref_i)
        assert abs(mod_bessel_k(n, z, derivative=der) - ref_k) <= 1e-12 * abs(ref_k)


@pytest.mark.parametrize("n", [0, 1, 4, 17])
@pytest.mark.parametrize("z", [0.2, 1.0 + 1j, 9.0 - 4j, 30.0])
def test_spherical_bessel_against_mpmath(n, z):
    assert abs(sph_bessel_i(n, z) - mp_sph_i(n, z)) <= 1e-12 * abs(mp_sph_i(n, z))
    assert abs(sph_bessel_k(n, z) - mp_sph_k(n, z)) <= 1e-12 * abs(mp_sph_k(n, z))


def test_spherical_closed_forms():
    z = np.array([0.3, 1.0 + 2j, 5.0])
    assert np.allclose(sph_bessel_i(0, z), np.sinh(z) / z, rtol=1e-14)
    assert np.allclose(sph_bessel_k(0, z), np.exp(-z) / z, rtol=1e-14)
    assert np.allclose(sph_bessel_k(1, z), np.exp(-z) * (1 + z) / z ** 2, rtol=1e-14)


@given(n=orders, z=right_half)
@settings(max_examples=60, deadline=None)
def test_wronskians(n, z):
    # scaled forms keep the products finite for large |z|
    Ii, Ip = mod_bessel_i(n, z, scaled=True), mod_bessel_i(n, z, True, scaled=True)
    Ki, Kp = mod_bessel_k(n, z, scaled=True), mod_bessel_k(n, z, True, scaled=True)
    phase = np.exp(z - z.real)
    w = (Ip * Ki - Ii * Kp) / phase
    assert abs(w - 1 / z) <= 1e-9 * abs(1 / z) + 1e-300
    ii, ip = sph_bessel_i(n, z, scaled=True), sph_bessel_i(n, z, True, scaled=True)
    ki, kp = sph_bessel_k(n, z, scaled=True), sph_bessel_k(n, z, True, scaled=True)
    w = (ip * ki - ii * kp) / phase
    assert abs(w - 1 / z ** 2) <= 1e-9 * abs(1 / z ** 2)


@given(n=st.integers(1, 30), z=right_half)
@settings(max_examples=40, deadline=None)
def test_recurrences(n, z):
    # I_{n-1} - I_{n+1} = (2n/z) I_n and K_{n+1} - K_{n-1} = (2n/z) K_n, in scaled form
    i = lambda m: mod_bessel_i(m, z, scaled=True)
    k = lambda m: mod_bessel_k(m, z, scaled=True)
    assert abs(i(n - 1) - i(n + 1) - 2 * n / z * i(n)) <= 1e-10 * (abs(i(n - 1)) + abs(i(n + 1)))
    assert abs(k(n + 1) - k(n - 1) - 2 * n / z * k(n)) <= 1e-10 * (abs(k(n + 1)) + abs(k(n - 1)))


def test_scaled_consistency():
    z = 3.0 + 4.0j
    assert np.isclose(mod_bessel_i(2, z, scaled=True) * np.exp(z.real), mod_bessel_i(2, z), rtol=1e-14)
    assert np.isclose(mod_bessel_k(2, z, scaled=True) * np.exp(-z), mod_bessel_k(2, z), rtol=1e-14)


def test_large_argument_scaled_is_finite():
    z = 800.0 + 50j
    assert np.isfinite(mod_bessel_i(3, z, scaled=True))
    assert np.isfinite(mod_bessel_k(3, z, scaled=True))


@pytest.mark.parametrize("n", [0, 1, 3, 10])
@pytest.mark.parametrize("x", [0.5, 2.0, 11.3, 40.0])
def test_real_bessel_against_mpmath(n, x):
    for der in (False, True):
        assert abs(bessel_j(n, x, der) - mp_besselj(n, x, der)) <= 1e-12
        yref = mp_bessely(n, x, der)
        assert abs(bessel_y(n, x, der) - yref) <= 1e-11 * max(1.0, abs(yref))


@pytest.mark.parametrize("n", [0, 1, 2, 7, 20])
def test_zeros_against_bisection(n):
    z = bessel_j_zeros(n, 12)
    assert np.allclose(z, bisect_bessel_zeros(n, 12), rtol=0, atol=1e-12)
    assert np.all(np.abs(bessel_j(n, z)) < 1e-13)
    assert np.all(np.diff(z) > 0)


def test_zero_values_and_indexing():
    assert bessel_j_zero(0, 1) == pytest.approx(2.404825557695773, abs=1e-15)
    assert bessel_j_zero(1, 1) == pytest.approx(3.831705970207512, abs=1e-15)
    assert bessel_j_zero(0, 3) == bessel_j_zeros(0, 3)[2]


def test_zeros_read_only():
    z = bessel_j_zeros(2, 5)
    with pytest.raises(ValueError):
        z[0] = 1.0


@pytest.mark.parametrize("call", [
    lambda: mod_bessel_i(1, -1.0),
    lambda: mod_bessel_k(1, 0j),
    lambda: mod_bessel_i(1.5, 1.0) and sph_bessel_i(1.5, 1.0),
    lambda: bessel_j(-1, 1.0),
    lambda: bessel_j(500, 1.0),
    lambda: bessel_y(0, 0.0),
    lambda: bessel_j_zero(0, 0),
    lambda: bessel_j_zeros(0, 5000),
])
def test_domain_errors(call):
    with pytest.raises(DomainError):
        call()
