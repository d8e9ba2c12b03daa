"""Independent reference computations used by the tests.

Nothing here calls into the package except for data containers; every
oracle follows a different route than the code it checks (kernel
quadrature instead of Bessel-product symbols, arbitrary precision series
instead of scipy, ODE integration instead of Duhamel integrals, ...).
"""

import math

import mpmath
import numpy as np
from scipy import integrate, optimize, special


# ---------------------------------------------------------- special functions

def mp_besseli(n, z, derivative=False):
    z = mpmath.mpc(z)
    v = mpmath.besseli(n, z, derivative=1) if derivative else mpmath.besseli(n, z)
    return complex(v)


def mp_besselk(n, z, derivative=False):
    z = mpmath.mpc(z)
    v = mpmath.diff(lambda x: mpmath.besselk(n, x), z) if derivative else mpmath.besselk(n, z)
    return complex(v)


def mp_besselj(n, x, derivative=False):
    v = mpmath.besselj(n, x, derivative=1) if derivative else mpmath.besselj(n, x)
    return float(v)


def mp_bessely(n, x, derivative=False):
    v = mpmath.diff(lambda t: mpmath.bessely(n, t), x) if derivative else mpmath.bessely(n, x)
    return float(v)


def mp_sph_i(n, z):
    """Modified spherical Bessel ``i_n(z) = sqrt(pi/(2z)) I_{n+1/2}(z)``."""
    z = mpmath.mpc(z)
    return complex(mpmath.sqrt(mpmath.pi / (2 * z)) * mpmath.besseli(n + 0.5, z))


def mp_sph_k(n, z):
    """Modified spherical Bessel ``k_n(z) = sqrt(2/(pi z)) K_{n+1/2}(z)``."""
    z = mpmath.mpc(z)
    return complex(mpmath.sqrt(2 / (mpmath.pi * z)) * mpmath.besselk(n + 0.5, z))


def bisect_bessel_zeros(n, count):
    """First ``count`` positive zeros of ``J_n`` by sign scanning and bisection."""
    f = lambda x: special.jv(n, x)
    zeros, x, h = [], 1e-6 if n else 0.5, 0.05
    while len(zeros) < count:
        if f(x) * f(x + h) < 0:
            zeros.append(optimize.bisect(f, x, x + h, xtol=1e-15, rtol=1e-15, maxiter=200))
        x += h
    return np.array(zeros)


# ------------------------------------------------- kernel quadrature symbols

def _cquad(f, lo, hi):
    opts = dict(limit=400, epsabs=1e-15, epsrel=1e-12)
    re = integrate.quad(lambda x: f(x).real, lo, hi, **opts)[0]
    im = integrate.quad(lambda x: f(x).imag, lo, hi, **opts)[0]
    return re + 1j * im


def circle_kernel_symbol(kind, n, s, a=1.0):
    r"""Mode ``n`` of a boundary operator on the circle from its kernel.

    With :math:`\rho(\theta) = 2a\sin(\theta/2)` the distance between two
    points at angular separation :math:`\theta`, the symbol is
    :math:`2a\int_0^\pi k(\rho)\cos(n\theta)\,d\theta` for the kernels

    * ``V``: :math:`K_0(s\rho)/(2\pi)`,
    * ``K`` and ``Kt``: :math:`-s\rho K_1(s\rho)/(4\pi a)`,

    and ``W`` follows from the tangential-derivative (Maue) form
    :math:`\hat W_n = n^2 \hat V_n / a^2 + s^2 (\hat V_{n-1}+\hat V_{n+1})/2`.
    The endpoint singularities are integrable and left to adaptive quadrature.
    """
    s = complex(s)
    if kind == "W":
        v = lambda m: circle_kernel_symbol("V", m, s, a)
        return n * n * v(n) / a ** 2 + s * s * (v(n - 1) + v(n + 1)) / 2
    rho = lambda th: 2 * a * math.sin(th / 2)
    if kind == "V":
        k = lambda th: special.kv(0, s * rho(th)) / (2 * np.pi)
    elif kind in ("K", "Kt"):
        k = lambda th: -s * rho(th) * special.kv(1, s * rho(th)) / (4 * np.pi * a)
    else:
        raise ValueError(kind)
    pts = list(np.linspace(0, np.pi, 2 * abs(n) + 3)[1:-1])
    total = 0.0
    for lo, hi in zip([0.0] + pts, pts + [np.pi]):
        total += _cquad(lambda th: k(th) * math.cos(n * th), lo, hi)
    return 2 * a * total


def sphere_kernel_symbol(kind, n, s, a=1.0):
    r"""Zonal mode ``n`` of a boundary operator on the sphere from its kernel.

    Funk-Hecke and the substitution :math:`\mu = 1 - \rho^2/(2a^2)` turn the
    surface integral into a smooth integral over the chord length
    :math:`\rho \in [0, 2a]`:

    * ``V``: :math:`\tfrac12\int e^{-s\rho} P_n(\mu)\,d\rho`,
    * ``K`` and ``Kt``: :math:`-\tfrac1{4a}\int (1+s\rho) e^{-s\rho} P_n(\mu)\,d\rho`,
    * ``W`` (Maue form): :math:`n(n+1)\hat V_n/a^2 + \tfrac{s^2}{2}\int e^{-s\rho}\mu P_n(\mu)\,d\rho`.
    """
    s = complex(s)
    mu = lambda r: 1 - r * r / (2 * a * a)
    if kind == "V":
        f = lambda r: 0.5 * np.exp(-s * r) * special.eval_legendre(n, mu(r))
    elif kind in ("K", "Kt"):
        f = lambda r: -(1 + s * r) * np.exp(-s * r) * special.eval_legendre(n, mu(r)) / (4 * a)
    elif kind == "W":
        g = lambda r: 0.5 * s * s * np.exp(-s * r) * mu(r) * special.eval_legendre(n, mu(r))
        return n * (n + 1) * sphere_kernel_symbol("V", n, s, a) / a ** 2 + _gauss(g, 0, 2 * a, n, s)
    else:
        raise ValueError(kind)
    return _gauss(f, 0, 2 * a, n, s)


def _gauss(f, lo, hi, n, s):
    # smooth integrand: composite Gauss-Legendre resolving both P_n and exp(-s rho)
    panels = 8 + 2 * n + int(4 * abs(s))
    x, w = np.polynomial.legendre.leggauss(24)
    edges = np.linspace(lo, hi, panels + 1)
    total = 0.0
    for e0, e1 in zip(edges[:-1], edges[1:]):
        r = 0.5 * (e1 - e0) * x + 0.5 * (e1 + e0)
        total += 0.5 * (e1 - e0) * np.sum(w * f(r))
    return complex(total)


def field_kernel_symbol(kind, n, s, r, dimension, a=1.0):
    r"""Mode ``n`` of the single (``'S'``) or double (``'D'``) layer potential
    observed at radius ``r != a``, by quadrature of the kernel over the
    boundary.

    With :math:`\rho^2 = r^2 + a^2 - 2ra\cos\gamma` and the kernel
    :math:`k = E` (single layer) or :math:`k = \nu_y\cdot\nabla_y E`
    (double layer, :math:`\nu_y\cdot(x-y) = r\cos\gamma - a`), the symbol is
    :math:`2a\int_0^\pi k\cos(n\gamma)\,d\gamma` on the circle and
    :math:`2\pi a^2\int_{-1}^1 k P_n(\mu)\,d\mu` on the sphere.
    """
    s = complex(s)
    if dimension == 2:
        def k(g):
            rho = math.sqrt(r * r + a * a - 2 * r * a * math.cos(g))
            if kind == "S":
                return special.kv(0, s * rho) / (2 * np.pi)
            return s * special.kv(1, s * rho) * (r * math.cos(g) - a) / (2 * np.pi * rho)
        pts = list(np.linspace(0, np.pi, 2 * abs(n) + 3)[1:-1])
        total = 0.0
        for lo, hi in zip([0.0] + pts, pts + [np.pi]):
            total += _cquad(lambda g: k(g) * math.cos(n * g), lo, hi)
        return 2 * a * total

    def k(mu):
        rho = np.sqrt(r * r + a * a - 2 * r * a * mu)
        if kind == "S":
            return np.exp(-s * rho) / (4 * np.pi * rho)
        return (1 + s * rho) * np.exp(-s * rho) * (r * mu - a) / (4 * np.pi * rho ** 3)
    x, w = np.polynomial.legendre.leggauss(48)
    edges = np.linspace(-1, 1, 17 + 2 * n + int(4 * abs(s)))
    total = 0.0
    for e0, e1 in zip(edges[:-1], edges[1:]):
        mu = 0.5 * (e1 - e0) * x + 0.5 * (e1 + e0)
        total += 0.5 * (e1 - e0) * np.sum(w * k(mu) * special.eval_legendre(n, mu))
    return complex(2 * np.pi * a * a * total)


def kernel_symbol(kind, n, s, dimension, a=1.0):
    """Kernel-quadrature symbol; ``DtN`` and ``NtD`` come from the exterior
    Calderon identity ``DtN = (1/2 - Kt) / V`` (inward sign convention)."""
    f = circle_kernel_symbol if dimension == 2 else sphere_kernel_symbol
    if kind in ("DtN", "NtD"):
        v, kt = f("V", n, s, a), f("Kt", n, s, a)
        dtn = (0.5 - kt) / v
        return dtn if kind == "DtN" else 1 / dtn
    return f(kind, n, s, a)


# ------------------------------------------------------------------- Duhamel

def ode_oscillator(omega, g, t_end, rtol=1e-11, atol=1e-13):
    """Integrate ``a'' + omega^2 a = g(t)``, ``a(0) = a'(0) = 0`` with an explicit RK method."""
    sol = integrate.solve_ivp(lambda t, y: [y[1], g(t) - omega ** 2 * y[0]], (0.0, t_end), [0.0, 0.0],
                              method="DOP853", rtol=rtol, atol=atol, dense_output=True)
    return sol.sol


# ---------------------------------------------------- constants by minimisation

def legendre_flux_constant(n, a=1.0, R=1.5, dimension=2, degree=14, side="interior"):
    r"""Sharp single-mode constant of
    ``||d_r v(a)||_{-1/2} <= C (||grad v||^2 + ||Lap v||^2)^(1/2)``.

    ``v = u(r) Y_n`` with ``u`` in a polynomial space (interior:
    ``r^n P_k(2 r^2/a^2 - 1)``; annulus ``a < r < R``: ``(R - r) P_k``). The
    quadratic form is assembled as a stacked least-squares matrix ``A`` and
    ``min ||A c||^2`` subject to ``u'(a) = 1`` is solved through an SVD
    of ``A``, so the Gram matrix is never formed.
    """
    L = n * n if dimension == 2 else n * (n + 1)
    d = dimension
    lo, hi = (0.0, a) if side == "interior" else (a, R)
    x, w = np.polynomial.legendre.leggauss(160)
    r = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
    wr = 0.5 * (hi - lo) * w * r ** (d - 1)
    polys = []
    for k in range(degree):
        P = np.polynomial.Legendre.basis(k).convert(kind=np.polynomial.Polynomial)
        if side == "interior":
            p = np.polynomial.Polynomial([0] * n + [1]) * P(np.polynomial.Polynomial([-1, 0, 2 / a ** 2]))
        else:
            p = np.polynomial.Polynomial([R, -1]) * P(np.polynomial.Polynomial([-(hi + lo) / (hi - lo),
                                                                                2 / (hi - lo)]))
        polys.append(p)
    U = np.array([p(r) for p in polys]).T
    dU = np.array([p.deriv()(r) for p in polys]).T
    ddU = np.array([p.deriv(2)(r) for p in polys]).T
    lap = ddU + (d - 1) / r[:, None] * dU - L / r[:, None] ** 2 * U
    sw = np.sqrt(wr)[:, None]
    A = np.vstack([sw * dU, np.sqrt(L) * sw / r[:, None] * U, sw * lap])
    b = np.array([p.deriv()(a) for p in polys])
    # min ||A c||^2 subject to b.c = 1 equals 1 / (b^T (A^T A)^+ b); constants
    # (n = 0 interior) span the null space and carry no flux
    _, sig, Vt = np.linalg.svd(A, full_matrices=False)
    keep = sig > 1e-12 * sig[0]
    z = (Vt[keep] @ b) / sig[keep]
    emin = 1.0 / float(z @ z)
    return math.sqrt(a ** (d - 1) * (1 + n * n) ** -0.5 / emin)


# ------------------------------------------------------------- misc oracles

def loglog_slope(t, y):
    """Closed-form least-squares slope of ``log y`` on ``log t``."""
    X, Y = np.log(t), np.log(y)
    Xm, Ym = X.mean(), Y.mean()
    return float(np.sum((X - Xm) * (Y - Ym)) / np.sum((X - Xm) ** 2))


def sin_power_integral(p, omega, t):
    """``int_0^t sin(omega tau)^p dtau`` by mpmath quadrature."""
    return float(mpmath.quad(lambda x: mpmath.sin(omega * x) ** p, [0, t]))


def sphere_closed_form_single_layer(g, r, t, a=1.0):
    r"""Retarded single layer of a uniform density ``g(t)`` on the sphere,
    observed at distance ``r > a`` from the centre:
    :math:`\frac{a}{2r}\int_{t-r-a}^{t-r+a} g(\tau)\,d\tau`."""
    lo, hi = max(t - r - a, 0.0), max(t - r + a, 0.0)
    if hi <= lo:
        return 0.0
    return a / (2 * r) * integrate.quad(g, lo, hi, epsabs=1e-14, epsrel=1e-12, limit=200)[0]
