r"""Direct quadrature of the retarded layer potentials in the time domain.

3D (sphere of radius ``a``), with :math:`\rho = |x-y|`:

.. math::
    (\mathcal S*\lambda)(x,t) = \int_\Gamma \frac{\lambda(y,t-\rho)}{4\pi\rho}\,d\Gamma_y, \qquad
    (\mathcal D*\varphi)(x,t) = \int_\Gamma \frac{\nu_y\cdot(x-y)}{4\pi\rho^3}
        \big(\varphi(y,t-\rho)+\rho\,\dot\varphi(y,t-\rho)\big)\,d\Gamma_y .

2D (circle of radius ``a``):

.. math::
    (\mathcal S*\lambda)(x,t) = \frac{1}{2\pi}\int_\Gamma\int_0^{t-\rho}
    \frac{\lambda(y,\tau)}{\sqrt{(t-\tau)^2-\rho^2}}\,d\tau\,d\Gamma_y ,

where the substitution :math:`t-\tau = \rho\cosh u` turns the inner integral
into :math:`\int_0^{\operatorname{arccosh}((t-t_0)/\rho)} \lambda(y, t-\rho\cosh u)\,du`.
"""

import numpy as np

from .errors import DomainError, SingularityError

__all__ = ["single_layer_3d", "double_layer_3d", "single_layer_2d", "sphere_rule"]

_TOUCH = 1e-12


def sphere_rule(order, radius=1.0):
    """Gauss-Legendre in ``cos(theta)`` times trapezoid in azimuth.

    Returns points ``(M, 3)``, polar angles, weights (summing to the area).
    """
    x, w = np.polynomial.legendre.leggauss(order)
    nphi = 2 * order
    phi = 2 * np.pi * np.arange(nphi) / nphi
    theta = np.arccos(x)
    st = np.sin(theta)
    pts = radius * np.stack([
        np.outer(st, np.cos(phi)).ravel(),
        np.outer(st, np.sin(phi)).ravel(),
        np.repeat(x, nphi),
    ], axis=1)
    wts = np.repeat(w, nphi) * (2 * np.pi / nphi) * radius ** 2
    return pts, np.repeat(theta, nphi), wts


def _check_point(x, a, dim):
    x = np.asarray(x, dtype=float)
    if x.shape != (dim,):
        raise DomainError(f"observation point must have {dim} coordinates")
    if abs(np.linalg.norm(x) - a) < _TOUCH * max(a, 1.0):
        raise SingularityError("observation point lies on the boundary")
    return x


def _check_density(density, dim):
    if density.geometry.dimension != dim:
        raise DomainError(f"density must live on a {'circle' if dim == 2 else 'sphere'}")


def single_layer_3d(x, t, density, quad_order=32):
    """Retarded single layer on the sphere by product quadrature."""
    _check_density(density, 3)
    a = density.geometry.radius
    x = _check_point(x, a, 3)
    if density.is_zero:
        return 0.0
    pts, theta, wts = sphere_rule(quad_order, a)
    rho = np.linalg.norm(x[None, :] - pts, axis=1)
    tr = t - rho
    if np.all(tr <= density.onset):
        return 0.0
    lam = density(theta, tr).real
    return float(np.sum(wts * lam / (4 * np.pi * rho)))


def double_layer_3d(x, t, density, quad_order=32):
    """Retarded double layer on the sphere; uses the exact time derivative."""
    _check_density(density, 3)
    a = density.geometry.radius
    x = _check_point(x, a, 3)
    if density.is_zero:
        return 0.0
    pts, theta, wts = sphere_rule(quad_order, a)
    diff = x[None, :] - pts
    rho = np.linalg.norm(diff, axis=1)
    tr = t - rho
    if np.all(tr <= density.onset):
        return 0.0
    nu_dot = np.sum(pts / a * diff, axis=1)
    dot = density.derivative(1)
    val = density(theta, tr).real + rho * dot(theta, tr).real
    return float(np.sum(wts * nu_dot * val / (4 * np.pi * rho ** 3)))


def single_layer_2d(x, t, density, quad_order=64, time_order=24):
    """Retarded single layer on the circle.

    The angular integral uses the trapezoid rule with ``quad_order`` points;
    the memory integral is taken in the variable ``u`` of the cosh
    substitution with Gauss-Legendre panels split where the retarded time
    crosses a profile breakpoint.
    """
    _check_density(density, 2)
    a = density.geometry.radius
    x = _check_point(x, a, 2)
    if density.is_zero:
        return 0.0
    t0 = density.onset
    phi = 2 * np.pi * np.arange(quad_order) / quad_order
    ys = a * np.stack([np.cos(phi), np.sin(phi)], axis=1)
    rho = np.linalg.norm(x[None, :] - ys, axis=1)
    if np.all(t - t0 <= rho):
        return 0.0
    gx, gw = np.polynomial.legendre.leggauss(time_order)
    breaks = np.array(density.breakpoints())
    total = 0.0
    for ph, r in zip(phi, rho):
        if t - t0 <= r:
            continue
        # breakpoints b with t - b > r map to u_b = arccosh((t - b) / r)
        ub = [np.arccosh((t - b) / r) for b in breaks if t - b > r]
        edges = np.unique(np.concatenate([[0.0], ub]))
        inner = 0.0
        for lo, hi in zip(edges[:-1], edges[1:]):
            u = 0.5 * (hi - lo) * gx + 0.5 * (hi + lo)
            tau = t - r * np.cosh(u)
            inner += 0.5 * (hi - lo) * np.sum(gw * density(np.full_like(u, ph), tau).real)
        total += inner
    return float(total * (2 * np.pi * a / quad_order) / (2 * np.pi))
