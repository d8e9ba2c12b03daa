r"""Radial fundamental systems of :math:`-\Delta u + u = 0` per angular mode.

For mode ``n`` in dimension ``d`` the regular and decaying solutions are
:math:`I_n(r), K_n(r)` (circle) or :math:`i_n(r), k_n(r)` (sphere); their
radial derivatives are returned alongside. The identity
:math:`(\Delta - 1)(r f'(r)) = 2 f(r)` for any such solution gives particular
solutions for right-hand sides proportional to :math:`f`.
"""

import math

import numpy as np
from scipy import special

from .specfun import mod_bessel_i, mod_bessel_k, sph_bessel_i, sph_bessel_k

__all__ = ["regular", "decaying", "dtn_interior", "dtn_annulus", "gauss_panels"]


def regular(n, r, dimension, derivative=False):
    r = np.asarray(r, dtype=float)
    f = mod_bessel_i if dimension == 2 else sph_bessel_i
    return np.real(f(abs(n), r + 0j, derivative=derivative))


def decaying(n, r, dimension, derivative=False):
    r = np.asarray(r, dtype=float)
    f = mod_bessel_k if dimension == 2 else sph_bessel_k
    return np.real(f(abs(n), r + 0j, derivative=derivative))


def regular_second(n, r, dimension):
    """Second radial derivative of the regular solution, from the ODE."""
    r = np.asarray(r, dtype=float)
    L = n * n if dimension == 2 else n * (n + 1)
    f = regular(n, r, dimension)
    df = regular(n, r, dimension, True)
    return (L / r ** 2 + 1) * f - (dimension - 1) / r * df


def _log_system(n, x, dimension):
    """``(log f_I, f_I'/f_I, log f_K, f_K'/f_K)`` at ``x`` without forming the
    functions, so large orders neither overflow nor underflow. Common factors
    of the spherical functions are dropped from the logarithms."""
    nu = abs(n) + (0.5 if dimension == 3 else 0.0)
    nu0 = nu - math.floor(nu)
    m = int(round(nu - nu0))
    # I_{k+1}/I_k by stable downward recurrence from a far order
    ir = 0.0
    ratios = np.empty(m + 1)
    for k in range(m + int(40 + 2 * x), -1, -1):
        ir = 1.0 / (2 * (nu0 + k + 1) / x + ir)
        if k <= m:
            ratios[k] = ir
    log_i = math.log(special.ive(nu0, x)) + x + float(np.sum(np.log(ratios[:m])))
    q_i = ratios[m] + nu / x
    # K_{k+1}/K_k by stable upward recurrence
    kr = special.kve(nu0 + 1, x) / special.kve(nu0, x)
    log_k = math.log(special.kve(nu0, x)) - x
    for k in range(m):
        log_k += math.log(kr)
        kr = 1.0 / kr + 2 * (nu0 + k + 1) / x
    q_k = nu / x - kr
    if dimension == 3:
        q_i, q_k = q_i - 0.5 / x, q_k - 0.5 / x
    return log_i, q_i, log_k, q_k


def dtn_interior(n, a, dimension):
    """``f'(a)/f(a)`` for the regular solution (interior minimal lifting)."""
    return float(_log_system(n, a, dimension)[1])


def dtn_annulus(n, a, R, dimension, outer="dirichlet"):
    r"""``-u'(a)/u(a)`` for the solution on ``a < r < R`` with ``u(R) = 0``
    (``outer='dirichlet'``) or ``u'(R) = 0`` (``outer='neumann'``)."""
    if outer not in ("dirichlet", "neumann"):
        raise ValueError("outer must be 'dirichlet' or 'neumann'")
    li_a, qi_a, lk_a, qk_a = _log_system(n, a, dimension)
    li_R, qi_R, lk_R, qk_R = _log_system(n, R, dimension)
    # u = rho f_I / f_I(a) - f_K / f_K(a) up to scale, rho <= 1 in modulus
    rho = math.exp(li_a - li_R + lk_R - lk_a)
    if outer == "neumann":
        rho *= qk_R / qi_R
    return float((rho * qi_a - qk_a) / (1.0 - rho))


def gauss_panels(lo, hi, panels=8, order=16):
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(lo, hi, panels + 1)
    h = np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + 0.5 * h[:, None] * x[None, :]).ravel()
    weights = (0.5 * h[:, None] * w[None, :]).ravel()
    return nodes, weights
