r"""Convolution quadrature for causal convolutions with Laplace-domain symbols.

For a symbol :math:`F(s)` and a multistep generating function :math:`\delta`,
the weights are the Taylor coefficients of :math:`F(\delta(\zeta)/\Delta t)`,

.. math::
    \omega_j = \frac{\rho^{-j}}{L} \sum_{l=0}^{L-1}
    F\!\left(\frac{\delta(\rho e^{2\pi i l/L})}{\Delta t}\right) e^{-2\pi i jl/L},

computed with one FFT, :math:`L = N+1` and :math:`\rho = \epsilon^{1/(2N)}`
(aliasing error of order :math:`\sqrt{\epsilon}` relative to the symbol size).
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import fft as sfft

from .errors import DomainError
from .laplace_ops import FIELD_KINDS, OPERATOR_KINDS, symbol

__all__ = [
    "GENERATING_FUNCTIONS",
    "CQWeights",
    "cq_weights",
    "cq_weights_from_function",
    "cq_convolve",
    "Observation",
    "PotentialSeries",
    "evaluate_potential",
    "field_h1_norm",
    "radial_nodes",
]

GENERATING_FUNCTIONS = {
    "BDF1": lambda z: 1.0 - z,
    "BDF2": lambda z: (1.0 - z) + 0.5 * (1.0 - z) ** 2,
}

MAX_STEPS = 10 ** 6


@dataclass(frozen=True)
class CQWeights:
    dt: float
    steps: int
    method: str
    weights: np.ndarray

    def __len__(self):
        return self.steps + 1


def _contour(N, dt, method):
    if method not in GENERATING_FUNCTIONS:
        raise DomainError(f"unknown multistep method {method!r}")
    if not 1 <= N <= MAX_STEPS:
        raise DomainError(f"number of steps must be in [1, {MAX_STEPS}]")
    if not dt > 0:
        raise DomainError("time step must be positive")
    L = N + 1
    rho = np.finfo(float).eps ** (1.0 / (2 * N))
    zeta = rho * np.exp(2j * np.pi * np.arange(L) / L)
    return rho, zeta, GENERATING_FUNCTIONS[method](zeta) / dt


def cq_weights_from_function(F, dt, N, method="BDF2", real_symbol=True):
    """Weights for a scalar symbol ``F`` (vectorised in ``s``).

    With ``real_symbol`` the symmetry :math:`F(\\bar s) = \\overline{F(s)}` is
    used to halve the number of symbol evaluations and the weights are real.
    """
    rho, _, s = _contour(N, dt, method)
    L = N + 1
    if real_symbol:
        half = L // 2 + 1
        vals = np.empty(L, dtype=complex)
        vals[:half] = np.broadcast_to(F(s[:half]), (half,))
        vals[half:] = np.conj(vals[1:L - half + 1][::-1])
    else:
        vals = np.broadcast_to(np.asarray(F(s), dtype=complex), (L,))
    w = sfft.fft(vals) / L * rho ** (-np.arange(L, dtype=float))
    if real_symbol:
        w = w.real.copy()
    return CQWeights(float(dt), int(N), method, w)


def cq_weights(symbol_family, mode, dt, N, method="BDF2"):
    """CQ weights of ``symbol_family(mode, s)`` (e.g. a :class:`SymbolFamily`)."""
    return cq_weights_from_function(lambda s: symbol_family(mode, s), dt, N, method)


def cq_convolve(weights, samples):
    """Causal discrete convolution ``y_j = sum_{k<=j} w_k g_{j-k}``.

    ``samples`` may carry leading axes; its last axis must have length ``N+1``.
    """
    w = weights.weights if isinstance(weights, CQWeights) else np.asarray(weights)
    g = np.asarray(samples)
    L = w.shape[-1]
    if g.shape[-1] != L:
        raise ValueError(f"expected {L} samples, got {g.shape[-1]}")
    nfft = sfft.next_fast_len(2 * L - 1)
    if np.isrealobj(w) and np.isrealobj(g):
        out = sfft.irfft(sfft.rfft(w, nfft) * sfft.rfft(g, nfft, axis=-1), nfft, axis=-1)
    else:
        out = sfft.ifft(sfft.fft(w, nfft) * sfft.fft(g, nfft, axis=-1), nfft, axis=-1)
    return out[..., :L]


@dataclass(frozen=True)
class Observation:
    """Where a potential is observed: radii (field kinds) and a mode subset."""

    radii: tuple = ()
    modes: tuple = None
    side: str = None


@dataclass
class PotentialSeries:
    """Per-mode time series; ``values`` has shape ``(modes, radii, steps+1)``."""

    kind: str
    geometry: object
    times: np.ndarray
    modes: tuple
    radii: tuple
    values: np.ndarray

    def boundary_values(self):
        if self.values.shape[1] != 1:
            raise ValueError("boundary series carry a single radius slot")
        return self.values[:, 0, :]

    def sobolev_norm(self, s):
        """Sobolev norm of a boundary series at every time step."""
        w = (1.0 + np.array(self.modes, dtype=float) ** 2) ** s
        sq = np.tensordot(w, np.abs(self.boundary_values()) ** 2, axes=(0, 0))
        return np.sqrt(self.geometry.measure * sq)

    def pointwise(self, angle, radius_index=0):
        """Value at polar angle(s) ``angle`` for every time step."""
        angle = np.atleast_1d(np.asarray(angle, dtype=float))
        out = np.zeros(angle.shape + (len(self.times),), dtype=complex)
        for i, n in enumerate(self.modes):
            out += self.geometry.basis(n, angle)[:, None] * self.values[i, radius_index][None, :]
        return out


def _grid(dt, T_end):
    N = int(round(T_end / dt))
    if N < 1:
        raise DomainError("T_end must exceed dt")
    return N, dt * np.arange(N + 1)


def evaluate_potential(kind, density, observation=None, dt=0.05, T_end=10.0, method="BDF2"):
    """CQ evaluation of a potential or boundary operator applied to ``density``.

    Parameters
    ----------
    kind : str
        Boundary operator (``V, K, Kt, W, NtD, DtN``) or field kind
        (``S, dS, D, dD``) observed at ``observation.radii``.
    density : FourierDensity
    observation : Observation, optional
    dt, T_end : float
        Step size and final time (``N = round(T_end / dt)`` steps).
    method : {'BDF1', 'BDF2'}
    """
    observation = observation or Observation()
    geom = density.geometry
    N, times = _grid(dt, T_end)
    modes = density.modes if observation.modes is None else tuple(observation.modes)
    if kind in FIELD_KINDS:
        if not observation.radii:
            raise DomainError(f"{kind!r} needs observation radii")
        radii = tuple(float(r) for r in observation.radii)
    elif kind in OPERATOR_KINDS:
        radii = (geom.radius,)
    else:
        raise DomainError(f"unknown kind {kind!r}")
    index = {n: i for i, n in enumerate(density.modes)}
    coeffs = density.coefficients(times)
    values = np.zeros((len(modes), len(radii), N + 1), dtype=complex)
    for i, n in enumerate(modes):
        if n not in index:
            continue
        c = coeffs[index[n]]
        if not np.any(c):
            continue
        for j, r in enumerate(radii):
            if kind in FIELD_KINDS:
                F = lambda s, n=n, r=r: symbol(kind, n, s, geom, r, observation.side)
            else:
                F = lambda s, n=n: symbol(kind, n, s, geom)
            w = cq_weights_from_function(F, dt, N, method)
            values[i, j] = cq_convolve(w.weights, c.real) + 1j * cq_convolve(w.weights, c.imag)
    return PotentialSeries(kind, geom, times, modes, radii, values)


def radial_nodes(a, r_max, panel=0.25, order=8):
    """Gauss-Legendre nodes and weights on ``[0, a]`` and ``[a, r_max]``."""
    x, w = np.polynomial.legendre.leggauss(order)
    nodes, weights, inside = [], [], []
    for lo, hi in ((0.0, a), (a, r_max)):
        if hi <= lo:
            continue
        m = max(1, math.ceil((hi - lo) / panel))
        edges = np.linspace(lo, hi, m + 1)
        for e0, e1 in zip(edges[:-1], edges[1:]):
            nodes.append(0.5 * (e1 - e0) * x + 0.5 * (e1 + e0))
            weights.append(0.5 * (e1 - e0) * w)
            inside.append(np.full(order, hi <= a))
    return np.concatenate(nodes), np.concatenate(weights), np.concatenate(inside)


def field_h1_norm(kind, density, dt=0.05, T_end=10.0, method="BDF2", panel=0.25, order=8):
    r"""Whole-space :math:`H^1` norm of :math:`S*\lambda` or :math:`D*\varphi`.

    The potential and its radial derivative are computed by CQ at radial
    Gauss nodes of each side of the boundary, and

    .. math::
        \|u\|_1^2 = |S^{d-1}| \sum_n \int_0^\infty
        \Big(|u_n|^2 \big(1 + \tfrac{L_n}{r^2}\big) + |\partial_r u_n|^2\Big) r^{d-1}\,dr,

    with :math:`L_n = n^2` (circle) or :math:`n(n+1)` (sphere). By finite
    propagation the radial range stops at ``a + T_end - onset + 1``.
    """
    if kind not in ("S", "D"):
        raise DomainError("field norms are available for 'S' and 'D'")
    geom = density.geometry
    a = geom.radius
    N, times = _grid(dt, T_end)
    if density.is_zero:
        return times, np.zeros(N + 1)
    reach = a + max(T_end - max(density.onset, 0.0), 0.0) + 1.0
    r, wr, inside = radial_nodes(a, reach, panel, order)
    d = geom.dimension
    dkind = "d" + kind
    coeffs = density.coefficients(times)
    sq = np.zeros(N + 1)
    for n, c in zip(density.modes, coeffs):
        if not np.any(c):
            continue
        ang = geom.angular_eigenvalue(n)
        for rk, wk, ins in zip(r, wr, inside):
            side = "-" if ins else "+"
            u = evaluate_potential_at(kind, n, c, geom, rk, side, dt, N, method)
            du = evaluate_potential_at(dkind, n, c, geom, rk, side, dt, N, method)
            sq += wk * rk ** (d - 1) * (np.abs(u) ** 2 * (1 + ang / rk ** 2) + np.abs(du) ** 2)
    return times, np.sqrt(geom.sphere_measure * sq)


def evaluate_potential_at(kind, n, c, geom, r, side, dt, N, method):
    F = lambda s: symbol(kind, n, s, geom, r, side)
    w = cq_weights_from_function(F, dt, N, method).weights
    out = cq_convolve(w, c.real)
    if np.any(c.imag):
        out = out + 1j * cq_convolve(w, c.imag)
    return out
