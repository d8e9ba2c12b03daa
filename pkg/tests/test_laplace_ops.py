import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import field_kernel_symbol, kernel_symbol, mp_besseli, mp_besselk
from tdbie.boundary_fourier import circle, sphere
from tdbie.errors import DomainError, SingularityError
from tdbie.laplace_ops import (
    OPERATOR_KINDS,
    SymbolFamily,
    circle_symbol,
    default_s_grid,
    fundamental_solution,
    operator_norm_symbol,
    sampled_symbol_constant,
    sphere_symbol,
    steklov_symbol,
    table1_bound,
)

SYMBOLS = {2: circle_symbol, 3: sphere_symbol}
S_GRID = default_s_grid(n_mod=13, n_arg=7)
right_half = st.builds(complex, st.floats(0.01, 50.0), st.floats(-50.0, 50.0))


def test_fundamental_solution_values():
    assert fundamental_solution(3, 1.0, 1.0) == pytest.approx(math.exp(-1) / (4 * math.pi), rel=1e-15)
    assert fundamental_solution(2, 1.0, 1.0) == pytest.approx(float(mp_besselk(0, 1.0).real) / (2 * math.pi),
                                                              rel=1e-14)


@given(r=st.floats(1e-3, 50), s=right_half)
@settings(max_examples=50, deadline=None)
def test_fundamental_solution_modulus_bound(r, s):
    assert abs(fundamental_solution(3, r, s)) <= math.exp(-s.real * r) / (4 * math.pi * r) * (1 + 1e-14)


def test_fundamental_solution_errors():
    with pytest.raises(SingularityError):
        fundamental_solution(2, 0.0, 1.0)
    with pytest.raises(DomainError):
        fundamental_solution(3, 1.0, -1.0)
    with pytest.raises(DomainError):
        fundamental_solution(4, 1.0, 1.0)


def test_symbol_examples():
    ref = float((mp_besseli(0, 1.0) * mp_besselk(0, 1.0)).real)
    assert circle_symbol("V", 0, 1.0) == pytest.approx(ref, rel=1e-14)
    assert circle_symbol("V", 0, 1.0) == pytest.approx(0.533045, abs=1e-6)
    assert sphere_symbol("V", 0, 1.0) == pytest.approx(math.sinh(1) * math.exp(-1), rel=1e-14)


@pytest.mark.parametrize("s", [0.5, 1 + 2j, 7 - 3j])
@pytest.mark.parametrize("a", [0.5, 1.0, 2.0])
def test_sphere_dtn_mode_zero(s, a):
    assert sphere_symbol("DtN", 0, s, a) == pytest.approx(s + 1 / a, rel=1e-13)


@pytest.mark.parametrize("dim", [2, 3])
@pytest.mark.parametrize("n", [0, 1, 2, 7, 16, 40, 64])
def test_jump_relations(dim, n):
    f, s, a = SYMBOLS[dim], S_GRID, 1.3
    val = lambda kind, side: f(kind, n, s, a, r=a, side=side)
    assert np.max(np.abs(val("S", "-") - val("S", "+"))) < 1e-10
    assert np.max(np.abs(val("dS", "-") - val("dS", "+") - 1)) < 1e-10
    assert np.max(np.abs(val("D", "-") - val("D", "+") + 1)) < 1e-10
    assert np.max(np.abs(val("dD", "-") - val("dD", "+"))) < 1e-10


@pytest.mark.parametrize("dim", [2, 3])
@pytest.mark.parametrize("n", [0, 3, 25])
def test_average_relations(dim, n):
    f, s, a = SYMBOLS[dim], S_GRID, 0.8
    val = lambda kind, side: f(kind, n, s, a, r=a, side=side)
    kt, k = f("Kt", n, s, a), f("K", n, s, a)
    assert np.allclose(val("dS", "+"), -0.5 + kt, atol=1e-12)
    assert np.allclose(val("dS", "-"), 0.5 + kt, atol=1e-12)
    assert np.allclose(val("D", "+"), 0.5 + k, atol=1e-12)
    assert np.allclose(val("D", "-"), -0.5 + k, atol=1e-12)
    assert np.allclose(val("S", "+"), f("V", n, s, a), atol=1e-14)
    assert np.allclose(val("dD", "+"), -f("W", n, s, a), atol=1e-10 * np.abs(s) ** 2)


@given(n=st.integers(0, 30), s=right_half)
@settings(max_examples=40, deadline=None)
def test_k_equals_kt_on_the_circle(n, s):
    assert circle_symbol("K", n, s) == circle_symbol("Kt", n, s)


@pytest.mark.parametrize("dim", [2, 3])
@pytest.mark.parametrize("kind", ["V", "K", "Kt", "W"])
@pytest.mark.parametrize("n", [0, 1, 4, 11])
@pytest.mark.parametrize("s", [0.3, 1 + 1j, 4 - 2j, 9 + 0.5j])
def test_symbols_against_kernel_quadrature(dim, kind, n, s):
    ref = kernel_symbol(kind, n, s, dim, a=1.2)
    assert abs(SYMBOLS[dim](kind, n, s, 1.2) - ref) <= 1e-7 * abs(ref)


@pytest.mark.parametrize("dim", [2, 3])
@pytest.mark.parametrize("kind", ["NtD", "DtN"])
@pytest.mark.parametrize("n", [0, 2, 9])
def test_steklov_against_calderon_oracle(dim, kind, n):
    s = 2 + 1.5j
    ref = kernel_symbol(kind, n, s, dim)
    assert abs(steklov_symbol(kind, n, s, 1.0, dim) - ref) <= 1e-7 * abs(ref)


@pytest.mark.parametrize("dim", [2, 3])
@pytest.mark.parametrize("kind, r", [("S", 1.7), ("S", 0.6), ("D", 2.5), ("D", 0.4)])
@pytest.mark.parametrize("n", [0, 3])
def test_fields_against_kernel_quadrature(dim, kind, r, n):
    s = 1.5 + 0.7j
    ref = field_kernel_symbol(kind, n, s, r, dim)
    assert abs(SYMBOLS[dim](kind, n, s, 1.0, r=r) - ref) <= 1e-7 * abs(ref)


@given(n=st.integers(0, 20), s=right_half)
@settings(max_examples=40, deadline=None)
def test_steklov_reciprocal_and_passive(n, s):
    for dim in (2, 3):
        dtn = steklov_symbol("DtN", n, s, 1.0, dim)
        ntd = steklov_symbol("NtD", n, s, 1.0, dim)
        assert abs(dtn * ntd - 1) < 1e-12
        assert dtn.real > 0 and ntd.real > 0


@pytest.mark.parametrize("dim", [2, 3])
@pytest.mark.parametrize("kind, r", [("V", None), ("Kt", None), ("W", None), ("DtN", None), ("S", 2.0), ("D", 0.5)])
def test_analytic_in_s(dim, kind, r):
    # Cauchy-Riemann: d/dx and -i d/dy of the symbol agree
    h = 1e-5
    for s in (0.4 + 0.3j, 2 - 1j, 6 + 4j):
        f = lambda z: SYMBOLS[dim](kind, 2, z, 1.0, r=r)
        dx = (f(s + h) - f(s - h)) / (2 * h)
        dy = (f(s + 1j * h) - f(s - 1j * h)) / (2j * h)
        assert abs(dx - dy) <= 1e-6 * max(1.0, abs(dx))


@pytest.mark.parametrize("dim", [2, 3])
def test_v_decays_in_n(dim):
    s = 1.0 + 0.5j
    mags = np.abs([SYMBOLS[dim]("V", n, s) for n in range(2, 60)])
    assert np.all(np.diff(mags) < 0)
    assert mags[-1] < 0.05 * mags[0]


def test_symbol_family():
    fam = SymbolFamily("S", circle(), r=2.0)
    assert fam(3, 1 + 1j) == circle_symbol("S", 3, 1 + 1j, r=2.0)
    assert fam.bound == table1_bound("S")
    assert SymbolFamily("dD", sphere(), r=0.5).bound == table1_bound("D")
    with pytest.raises(DomainError):
        SymbolFamily("X", circle())


@pytest.mark.parametrize("kind, mu, q", [("S", 1.0, 2.0), ("V", 1.0, 2.0), ("Kt", 1.5, 1.5), ("D", 1.5, 1.5),
                                         ("K", 1.5, 1.5), ("W", 2.0, 1.0), ("NtD", 1.0, 2.0), ("DtN", 2.0, 1.0)])
def test_table1_rows(kind, mu, q):
    b = table1_bound(kind)
    assert (b.mu, b.p, b.q) == (mu, 1.0, q)
    sig = np.array([0.1, 0.5, 2.0])
    assert np.allclose(b.c_f(sig), 1 / (sig * np.minimum(1, sig) ** q))
    assert b(2 + 1j) == pytest.approx(b.c_f(2.0) * abs(2 + 1j) ** mu)


@given(s1=st.floats(1e-3, 1e3), s2=st.floats(1e-3, 1e3))
@settings(max_examples=30, deadline=None)
def test_c_f_non_increasing(s1, s2):
    lo, hi = sorted((s1, s2))
    for kind in OPERATOR_KINDS:
        assert table1_bound(kind).c_f(hi) <= table1_bound(kind).c_f(lo)


def test_table1_unknown_kind():
    with pytest.raises(DomainError):
        table1_bound("Q")


@pytest.mark.parametrize("geometry", [circle(), sphere()], ids=["circle", "sphere"])
@pytest.mark.parametrize("kind", OPERATOR_KINDS)
def test_sampled_constant_is_finite_and_bounds_every_mode(geometry, kind):
    c = sampled_symbol_constant(kind, geometry, n_max=8, s_grid=S_GRID)
    assert 0 < c < 10
    ref = table1_bound(kind)(S_GRID)
    for n in (0, 4, 8):
        assert np.all(operator_norm_symbol(kind, n, S_GRID, geometry) <= c * ref * (1 + 1e-12))


def test_sampled_constant_stable_under_refinement():
    coarse = sampled_symbol_constant("W", circle(), n_max=12, s_grid=default_s_grid(21, 11))
    fine = sampled_symbol_constant("W", circle(), n_max=24, s_grid=default_s_grid(81, 41))
    assert fine >= coarse
    assert fine <= 1.2 * coarse


def test_symbol_errors():
    with pytest.raises(DomainError):
        circle_symbol("V", 1, -1.0)
    with pytest.raises(DomainError):
        circle_symbol("S", 1, 1.0)
    with pytest.raises(SingularityError):
        circle_symbol("S", 1, 1.0, r=1.0)
    with pytest.raises(DomainError):
        sphere_symbol("V", -1, 1.0)
    with pytest.raises(DomainError):
        steklov_symbol("V", 0, 1.0)
