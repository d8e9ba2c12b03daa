r"""Causal boundary densities on a circle or sphere.

A density is a finite sum :math:`\lambda(\theta, t) = \sum_n A_n g_n(t) Y_n(\theta)`
with closed-form time profiles :math:`g_n`. The angular basis is

* circle of radius ``a``: :math:`Y_n = e^{in\theta}`,
* sphere of radius ``a`` (zonal modes only): :math:`Y_n = \sqrt{2n+1}\,P_n(\cos\theta)`,

so that :math:`\int_\Gamma |Y_n|^2 = |\Gamma|` in both cases, and the Sobolev
norms are fixed as

.. math::
    \|\lambda\|_{s,\Gamma}^2 = |\Gamma| \sum_n (1+n^2)^s |c_n|^2 .
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize, special

from . import profiles as _profiles
from .errors import DomainError
from .profiles import TimeProfile

__all__ = [
    "Geometry",
    "circle",
    "sphere",
    "FourierDensity",
    "sobolev_weight",
    "sobolev_norm",
    "time_derivative",
    "b_functional",
    "b_functional_history",
    "norm_integral_history",
    "B_VARIANTS",
]


@dataclass(frozen=True)
class Geometry:
    """Circle (``dimension=2``) or sphere (``dimension=3``) of radius ``radius``."""

    dimension: int
    radius: float = 1.0

    def __post_init__(self):
        if self.dimension not in (2, 3):
            raise DomainError("dimension must be 2 or 3")
        if not self.radius > 0:
            raise DomainError("radius must be positive")

    @property
    def measure(self):
        """Length or area of the boundary."""
        a = self.radius
        return 2 * np.pi * a if self.dimension == 2 else 4 * np.pi * a * a

    @property
    def sphere_measure(self):
        """Measure of the unit sphere in R^d."""
        return 2 * np.pi if self.dimension == 2 else 4 * np.pi

    def angular_eigenvalue(self, n):
        return n * n if self.dimension == 2 else n * (n + 1)

    def basis(self, n, angle):
        """Angular basis function ``Y_n`` at polar angle ``angle``."""
        angle = np.asarray(angle, dtype=float)
        if self.dimension == 2:
            return np.exp(1j * n * angle)
        return np.sqrt(2 * n + 1) * special.eval_legendre(n, np.cos(angle))


def circle(radius=1.0):
    return Geometry(2, float(radius))


def sphere(radius=1.0):
    return Geometry(3, float(radius))


class FourierDensity:
    """Finite modal sum of causal time profiles.

    Parameters
    ----------
    terms : sequence
        Entries ``(n, profile)`` or ``(n, profile, amplitude)``; the amplitude
        may be complex and defaults to 1. Each mode may appear once.
    geometry : Geometry
    """

    def __init__(self, terms, geometry):
        self.geometry = geometry
        modes, profs, amps = [], [], []
        for term in terms:
            n, prof = int(term[0]), term[1]
            amp = complex(term[2]) if len(term) > 2 else 1.0 + 0j
            if n < 0 and geometry.dimension == 3:
                raise DomainError("zonal sphere modes must be >= 0")
            if n in modes:
                raise ValueError(f"mode {n} appears more than once")
            if not isinstance(prof, TimeProfile):
                raise TypeError("profiles must be TimeProfile instances")
            modes.append(n)
            profs.append(prof)
            amps.append(amp)
        self.modes = tuple(modes)
        self.profiles = tuple(profs)
        self.amplitudes = np.array(amps, dtype=complex)

    @classmethod
    def zero(cls, geometry):
        return cls([], geometry)

    def __repr__(self):
        return f"FourierDensity(modes={self.modes}, dimension={self.geometry.dimension})"

    @property
    def terms(self):
        return list(zip(self.modes, self.profiles, self.amplitudes))

    @property
    def is_zero(self):
        return all(p.is_zero() or a == 0 for p, a in zip(self.profiles, self.amplitudes))

    @property
    def onset(self):
        live = [p.onset for p, a in zip(self.profiles, self.amplitudes) if not p.is_zero() and a != 0]
        return min(live) if live else math.inf

    @property
    def smoothness(self):
        return min((p.smoothness for p in self.profiles), default=math.inf)

    def breakpoints(self):
        pts = set()
        for p in self.profiles:
            pts.update(p.breakpoints())
        return sorted(pts)

    def timescale(self):
        return min((p.timescale() for p in self.profiles), default=1.0)

    def coefficients(self, t):
        """Modal coefficients ``c_n(t)``, shape ``(len(modes),) + shape(t)``."""
        t = np.asarray(t, dtype=float)
        if not self.modes:
            return np.zeros((0,) + t.shape, dtype=complex)
        return np.stack([a * p(t) for p, a in zip(self.profiles, self.amplitudes)])

    def __call__(self, angle, t):
        """Pointwise value at polar angle(s) ``angle`` and time(s) ``t`` (broadcast)."""
        angle, t = np.broadcast_arrays(np.asarray(angle, float), np.asarray(t, float))
        out = np.zeros(angle.shape, dtype=complex)
        for n, p, a in self.terms:
            out += a * p(t) * self.geometry.basis(n, angle)
        return out

    def derivative(self, order=1):
        return FourierDensity([(n, p.derivative(order), a) for n, p, a in self.terms], self.geometry)

    def scaled(self, alpha):
        return FourierDensity([(n, p, alpha * a) for n, p, a in self.terms], self.geometry)


def sobolev_weight(n, s):
    if s not in (-0.5, 0.5):
        raise DomainError("Sobolev exponent must be -1/2 or +1/2")
    return (1.0 + np.asarray(n, dtype=float) ** 2) ** s


def sobolev_norm(density, t, s):
    """:math:`\\|\\lambda(t)\\|_{s,\\Gamma}` for ``s`` in ``{-1/2, 1/2}``; vectorised in ``t``."""
    w = sobolev_weight(np.array(density.modes, dtype=float), s)
    c = density.coefficients(t)
    if c.shape[0] == 0:
        return np.zeros_like(np.asarray(t, dtype=float))[()]
    # scale before squaring so tiny or huge amplitudes neither underflow nor overflow
    m = np.abs(c).max(axis=0)
    safe = np.where(m > 0, m, 1.0)
    sq = np.tensordot(w, (np.abs(c) / safe) ** 2, axes=(0, 0))
    return (m * np.sqrt(density.geometry.measure * sq))[()]


def time_derivative(density, order):
    """Exact time derivative of a density; ``order`` must be in 0..4."""
    if not 0 <= order <= 4:
        raise DomainError("derivative order must be between 0 and 4")
    return density.derivative(order)


# (derivative order, weight) pairs; B2 uses the -1/2 or +1/2 norm, B4 the +1/2 norm
B_VARIANTS = {
    "B2_minus": (-0.5, ((0, 1.0), (2, 1.0))),
    "B2_plus": (0.5, ((0, 1.0), (2, 1.0))),
    "B4_plus": (0.5, ((0, 4.0), (2, 5.0), (4, 1.0))),
}


def _b_parts(variant):
    if isinstance(variant, tuple):
        return variant
    if variant in B_VARIANTS:
        return B_VARIANTS[variant]
    raise DomainError(f"unknown B-functional {variant!r}")


def _b_integrand(density, variant):
    s, parts = _b_parts(variant)
    ders = [(w, density.derivative(k)) for k, w in parts]

    def f(tau):
        return sum(w * sobolev_norm(d, tau, s) for w, d in ders)

    return f


def _sign_changes(g, lo, hi, m=64):
    x = np.linspace(lo, hi, m + 1)[1:-1]
    v = np.real(g(x))
    out = []
    for i in np.nonzero(v[:-1] * v[1:] < 0)[0]:
        out.append(optimize.brentq(lambda z: float(np.real(g(z))), x[i], x[i + 1], xtol=1e-15))
    return out


def _panels(density, t0, t1, orders=()):
    """Integration panels on [t0, t1] split at profile breakpoints.

    Panels are further split where a derivative of a single-mode profile
    changes sign, since its modulus has a corner there.
    """
    pts = [t0] + [b for b in density.breakpoints() if t0 < b < t1] + [t1]
    h = max(density.timescale(), 1e-6)
    out = []
    for lo, hi in zip(pts[:-1], pts[1:]):
        m = max(1, int(np.ceil((hi - lo) / (4 * h))))
        edges = list(np.linspace(lo, hi, m + 1))
        for a, b in zip(edges[:-1], edges[1:]):
            cuts = sorted({c for k in orders for p in density.profiles
                           for c in _sign_changes(p.derivative(k), a, b)
                           if a + 1e-3 * (b - a) < c < b - 1e-3 * (b - a)})
            sub = [a] + cuts + [b]
            out.extend(zip(sub[:-1], sub[1:]))
    return out


_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)


def _integrate(f, panels):
    # coarse Gauss estimates give a scale for the absolute tolerance, so tiny
    # panels near a corner do not demand more than the whole integral needs
    ests = []
    for lo, hi in panels:
        half = 0.5 * (hi - lo)
        ests.append(abs(half * np.dot(_GL_W, f(lo + half * (_GL_X + 1)))))
    epsabs = 1e-13 * sum(ests) / max(len(panels), 1)
    total = 0.0
    for lo, hi in panels:
        val, _ = integrate.quad(f, lo, hi, epsabs=epsabs, epsrel=1e-12, limit=200)
        total += val
    return total


def b_functional(density, variant, t):
    """Value of ``B2_minus``, ``B2_plus`` or ``B4_plus`` at time ``t``.

    The integrand is a weighted sum of Sobolev norms of the density and its
    second (and fourth) derivatives; it is integrated by adaptive quadrature
    on panels split at the profile breakpoints.
    """
    f = _b_integrand(density, variant)
    t0 = max(density.onset, 0.0)
    if density.is_zero or t <= t0:
        return 0.0
    orders = [k for k, _ in _b_parts(variant)[1]]
    return _integrate(f, _panels(density, t0, float(t), orders))


def b_functional_history(density, variant, times):
    """Cumulative B-functional on a non-decreasing time grid."""
    times = np.asarray(times, dtype=float)
    out = np.zeros(times.shape)
    f = _b_integrand(density, variant)
    orders = [k for k, _ in _b_parts(variant)[1]]
    t0 = max(density.onset, 0.0)
    if density.is_zero:
        return out
    if np.any(np.diff(times) < 0):
        raise ValueError("time grid must be non-decreasing")
    # every profile vanishes identically after the latest window end
    stop = max(p.end for p in density.profiles)
    acc, prev = 0.0, t0
    for i, t in enumerate(times):
        t_eff = min(t, stop)
        if t_eff > prev:
            acc += _integrate(f, _panels(density, prev, t_eff, orders))
            prev = t_eff
        out[i] = acc
    return out


def norm_integral_history(density, order, s, times):
    """Cumulative ``int_0^t ||d^order density / dt^order||_s`` on a time grid."""
    return b_functional_history(density, (s, ((order, 1.0),)), times)


# re-exported for convenience
poly_exp = _profiles.poly_exp
sine_power = _profiles.sine_power
raised_cosine = _profiles.raised_cosine
zero_profile = _profiles.zero
