r"""Spectral solution of the forced wave equation on disks and annuli.

The Dirichlet Laplacian on the disk of radius :math:`\rho` (or the annulus
:math:`a<r<\rho` with Neumann condition at :math:`r=a`) has eigenpairs
:math:`(\lambda_k, \phi_k)`, :math:`\xi_k = \sqrt{\lambda_k}`. For
:math:`\ddot u = \Delta u + f` with zero initial data the coefficients of
:math:`u = \sum_k \alpha_k \phi_k` are the Duhamel integrals

.. math::
    \alpha_k(t) = \int_0^t \frac{\sin(\xi_k(t-\tau))}{\xi_k} f_k(\tau)\,d\tau, \qquad
    \dot\alpha_k(t) = \int_0^t \cos(\xi_k(t-\tau)) f_k(\tau)\,d\tau,

and all norms follow from Parseval:
:math:`\|u\|^2=\sum|\alpha_k|^2`, :math:`\|\nabla u\|^2=\sum\lambda_k|\alpha_k|^2`,
:math:`\|\Delta u\|^2=\sum\lambda_k^2|\alpha_k|^2`.

The module also solves the steady problems :math:`-\Delta u_0 + u_0 = g` with
transmission conditions across the circle or sphere :math:`r=a` that supply
the liftings used in the evolution bounds.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, optimize

from . import radial
from .errors import DomainError, ResolutionError
from .profiles import TimeProfile
from .specfun import bessel_j, bessel_j_zeros, bessel_y

__all__ = [
    "EigenBasis",
    "disk_eigenbasis",
    "annulus_mixed_eigenbasis",
    "weyl_count",
    "duhamel_mode",
    "duhamel_antiderivative",
    "ModalFunction",
    "ModalSolution",
    "strong_solution",
    "weak_solution",
    "g_half",
    "LiftingResult",
    "steady_lifting",
    "LIFTING_KINDS",
]

TAIL_TOLERANCE = 1e-12


@dataclass
class EigenBasis:
    """Eigenpairs of the Dirichlet (disk) or mixed (annulus) Laplacian.

    ``labels[k] = (n, m, p)``: angular order, radial index (1-based) and
    parity (0 for ``cos(n theta)``, 1 for ``sin(n theta)``).
    """

    geometry: str
    inner: float
    outer: float
    eigenvalues: np.ndarray
    labels: list
    # radial part R_k(r) = (cj * J_n(xi r) + cy * Y_n(xi r)) / norm
    cj: np.ndarray
    cy: np.ndarray
    norms: np.ndarray
    _index: dict = field(default=None, repr=False)

    def __post_init__(self):
        self._index = {lab: k for k, lab in enumerate(self.labels)}

    def __len__(self):
        return len(self.eigenvalues)

    @property
    def xi(self):
        return np.sqrt(self.eigenvalues)

    @property
    def poincare_constant(self):
        """Best constant in ``||v|| <= C ||grad v||``, i.e. ``1/sqrt(lambda_1)``."""
        return 1.0 / math.sqrt(self.eigenvalues[0])

    def index(self, label):
        try:
            return self._index[tuple(label)]
        except KeyError:
            raise ResolutionError(f"mode {tuple(label)} is not in the truncated basis") from None

    def radial(self, k, r, derivative=False):
        n = self.labels[k][0]
        xi = self.xi[k]
        r = np.asarray(r, dtype=float)
        if derivative:
            val = self.cj[k] * bessel_j(n, xi * r, True) * xi
            if self.cy[k]:
                val = val + self.cy[k] * bessel_y(n, xi * r, True) * xi
        else:
            val = self.cj[k] * bessel_j(n, xi * r)
            if self.cy[k]:
                val = val + self.cy[k] * bessel_y(n, xi * r)
        return val / self.norms[k]

    def angular(self, k, theta):
        n, _, p = self.labels[k]
        theta = np.asarray(theta, dtype=float)
        return np.sin(n * theta) if p else np.cos(n * theta)

    def __call__(self, k, r, theta):
        return self.radial(k, r) * self.angular(k, theta)


def _sorted_basis(geometry, inner, outer, entries):
    entries.sort(key=lambda e: (e[0], e[1]))
    lam = np.array([e[0] for e in entries])
    labels = [e[1] for e in entries]
    cj = np.array([e[2] for e in entries])
    cy = np.array([e[3] for e in entries])
    norms = np.array([e[4] for e in entries])
    return EigenBasis(geometry, inner, outer, lam, labels, cj, cy, norms)


def _parities(n):
    return (0,) if n == 0 else (0, 1)


def disk_eigenbasis(rho, max_angular, max_radial):
    """Dirichlet eigenbasis of the disk of radius ``rho``.

    :math:`\\lambda_{n,m} = (j_{n,m}/\\rho)^2` with eigenfunctions
    :math:`J_n(j_{n,m} r/\\rho)\\{\\cos,\\sin\\}(n\\theta)` normalised in :math:`L^2`.
    """
    if not rho > 0:
        raise DomainError("radius must be positive")
    entries = []
    for n in range(max_angular + 1):
        zeros = bessel_j_zeros(n, max_radial)
        for m, j in enumerate(zeros, start=1):
            ang = 2 * np.pi if n == 0 else np.pi
            norm = math.sqrt(ang * rho ** 2 / 2 * bessel_j(n + 1, j) ** 2)
            for p in _parities(n):
                entries.append(((j / rho) ** 2, (n, m, p), 1.0, 0.0, norm))
    return _sorted_basis("disk", 0.0, float(rho), entries)


def _mixed_condition(n, a, rho):
    def f(xi):
        yp, jp = bessel_y(n, xi * a, True), bessel_j(n, xi * a, True)
        scale = math.hypot(yp, jp)
        return (yp * bessel_j(n, xi * rho) - jp * bessel_y(n, xi * rho)) / scale
    return f


def annulus_mixed_eigenbasis(a, rho, max_angular, max_radial, grid_per_root=40):
    """Eigenbasis on ``a < r < rho``, Neumann at ``r = a``, Dirichlet at ``r = rho``.

    The radial part is :math:`Y_n'(\\xi a)J_n(\\xi r) - J_n'(\\xi a)Y_n(\\xi r)`,
    so the Neumann condition holds by construction; :math:`\\xi` solves the
    Dirichlet condition and is bracketed on a uniform scan before Brent
    refinement. Raises :class:`ResolutionError` if the scan misses roots.
    """
    if not 0 < a < rho:
        raise DomainError("need 0 < a < rho")
    width = rho - a
    entries = []
    for n in range(max_angular + 1):
        f = _mixed_condition(n, a, rho)
        # roots are spaced by roughly pi / width; turning point adds n / rho
        xi_max = (max_radial + 2) * np.pi / width + 2.0 * n / rho + 2.0
        grid = np.linspace(1e-3 / rho, xi_max, int(grid_per_root * (max_radial + 2 + n)))
        vals = np.array([f(x) for x in grid])
        roots = []
        for x0, x1, v0, v1 in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
            if v0 == 0.0:
                roots.append(x0)
            elif v0 * v1 < 0:
                roots.append(optimize.brentq(f, x0, x1, xtol=1e-15, rtol=1e-15, maxiter=200))
            if len(roots) == max_radial:
                break
        if len(roots) < max_radial:
            raise ResolutionError(f"found {len(roots)} of {max_radial} roots for n={n}; refine the grid")
        for m, xi in enumerate(roots, start=1):
            cj = bessel_y(n, xi * a, True)
            cy = -bessel_j(n, xi * a, True)
            s = math.hypot(cj, cy)
            cj, cy = cj / s, cy / s
            z = xi * rho
            zr = cj * bessel_j(n, z, True) + cy * bessel_y(n, z, True)
            za = cj * bessel_j(n, xi * a) + cy * bessel_y(n, xi * a)
            rad2 = rho ** 2 / 2 * zr ** 2 - a ** 2 / 2 * (1 - (n / (xi * a)) ** 2) * za ** 2
            ang = 2 * np.pi if n == 0 else np.pi
            norm = math.sqrt(ang * rad2)
            for p in _parities(n):
                entries.append((xi ** 2, (n, m, p), cj, cy, norm))
    return _sorted_basis("annulus", float(a), float(rho), entries)


def weyl_count(area, dirichlet_length, neumann_length, lam):
    """Two-term Weyl estimate of the number of eigenvalues below ``lam``."""
    return area * lam / (4 * np.pi) + (neumann_length - dirichlet_length) * np.sqrt(lam) / (4 * np.pi)


def _cumulative(funs, ts, breaks, omega):
    """``int_0^t fun`` for every ``fun`` in ``funs`` and ``t`` in ``ts``, accumulated
    over consecutive output times with cuts at ``breaks``."""
    ts = np.asarray(ts, dtype=float)
    out = np.zeros((len(funs),) + ts.shape)
    order = np.argsort(ts, kind="stable")
    acc = np.zeros(len(funs))
    prev = 0.0
    for i in order:
        ti = ts[i]
        if ti <= 0:
            continue
        edges = [prev] + [b for b in breaks if prev < b < ti] + [ti]
        for lo, hi in zip(edges[:-1], edges[1:]):
            if hi <= lo:
                continue
            lim = 200 + int(omega * (hi - lo))
            for j, fun in enumerate(funs):
                acc[j] += integrate.quad(fun, lo, hi, epsabs=1e-13, epsrel=1e-12, limit=lim)[0]
        prev = ti
        out[:, i] = acc
    return out


def _scalar(g):
    if isinstance(g, TimeProfile):
        return (lambda x: float(g(x))), g.breakpoints()
    return g, []


def duhamel_mode(omega, g, t):
    """Duhamel coefficients ``(alpha, alpha_dot)`` of ``a'' + omega^2 a = g``.

    ``g`` is a causal :class:`TimeProfile` (or any callable vanishing for
    ``t < 0``; then no breakpoints are used). ``t`` may be scalar or array.
    With :math:`C(t), S(t)` the cosine and sine moments of ``g`` on
    :math:`[0, t]`, :math:`\alpha = (\sin(\omega t) C - \cos(\omega t) S)/\omega`
    and :math:`\dot\alpha = \cos(\omega t) C + \sin(\omega t) S`.
    """
    if not omega > 0:
        raise DomainError("frequency must be positive")
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    gs, breaks = _scalar(g)
    C, S = _cumulative([lambda x: math.cos(omega * x) * gs(x), lambda x: math.sin(omega * x) * gs(x)],
                       ts, breaks, omega)
    cw, sw = np.cos(omega * ts), np.sin(omega * ts)
    al = np.where(ts > 0, (sw * C - cw * S) / omega, 0.0)
    ad = np.where(ts > 0, cw * C + sw * S, 0.0)
    if np.ndim(t) == 0:
        return float(al[0]), float(ad[0])
    return al, ad


def duhamel_antiderivative(omega, g, t):
    """``w(t) = int_0^t alpha = int_0^t g(tau) (1 - cos(omega (t - tau))) / omega^2 dtau``
    and ``G(t) = int_0^t g``."""
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    gs, breaks = _scalar(g)
    G, C, S = _cumulative([gs, lambda x: math.cos(omega * x) * gs(x), lambda x: math.sin(omega * x) * gs(x)],
                          ts, breaks, omega)
    w = np.where(ts > 0, (G - np.cos(omega * ts) * C - np.sin(omega * ts) * S) / omega ** 2, 0.0)
    G = np.where(ts > 0, G, 0.0)
    if np.ndim(t) == 0:
        return float(w[0]), float(G[0])
    return w, G


class ModalFunction:
    """Forcing ``f(t) = sum_k A_k g_k(t) phi_k`` on an :class:`EigenBasis`.

    ``terms`` holds ``(label, profile)`` or ``(label, profile, amplitude)``
    with ``label = (n, m, p)``. Labels outside the truncated basis raise
    :class:`ResolutionError`, since the solver would silently drop them.
    """

    def __init__(self, basis, terms):
        self.basis = basis
        self.index, self.profiles, self.amplitudes = [], [], []
        for term in terms:
            k = basis.index(term[0])
            if k in self.index:
                raise ValueError(f"mode {term[0]} appears more than once")
            self.index.append(k)
            self.profiles.append(term[1])
            self.amplitudes.append(float(term[2]) if len(term) > 2 else 1.0)
        self.index = np.array(self.index, dtype=int)
        self.amplitudes = np.array(self.amplitudes)

    def __len__(self):
        return len(self.index)

    def scaled_modes(self, factors):
        """Copy with amplitude ``k`` multiplied by ``factors[index[k]]``."""
        out = ModalFunction(self.basis, [])
        out.index = self.index.copy()
        out.profiles = list(self.profiles)
        out.amplitudes = self.amplitudes * np.asarray(factors)[self.index]
        return out

    def coefficients(self, t):
        """Full coefficient array ``(len(basis),) + shape(t)``."""
        t = np.asarray(t, dtype=float)
        out = np.zeros((len(self.basis),) + t.shape)
        for k, g, A in zip(self.index, self.profiles, self.amplitudes):
            out[k] = A * g(t)
        return out

    def norm(self, t, weight=0):
        """Parseval norm at time(s) ``t``: ``weight`` 0, 1, 2 for ``f``, ``grad f``, ``Lap f``."""
        t = np.asarray(t, dtype=float)
        lam = self.basis.eigenvalues[self.index] ** weight
        sq = np.zeros(t.shape)
        for l, g, A in zip(lam, self.profiles, self.amplitudes):
            sq = sq + l * (A * g(t)) ** 2
        return np.sqrt(sq)

    def integrated_norm(self, t, weight=0):
        """``int_0^t ||f||`` (``weight=0``) or ``int_0^t ||grad f||`` (``weight=1``)."""
        ts = np.atleast_1d(np.asarray(t, dtype=float))
        pts = sorted({b for g in self.profiles for b in g.breakpoints()})
        out = _cumulative([lambda x: float(self.norm(x, weight))], ts, pts, 0.0)[0]
        return out if np.ndim(t) else float(out[0])


@dataclass
class ModalSolution:
    """Sampled coefficients of ``u`` (and ``u_dot``, optionally ``w = int u``)."""

    basis: EigenBasis
    times: np.ndarray
    u: np.ndarray
    udot: np.ndarray
    w: np.ndarray = None
    forcing_integral: np.ndarray = None

    @property
    def lap(self):
        return -self.basis.eigenvalues[:, None] * self.u

    def norm(self):
        return np.sqrt(np.sum(self.u ** 2, axis=0))

    def grad_norm(self):
        return np.sqrt(np.sum(self.basis.eigenvalues[:, None] * self.u ** 2, axis=0))

    def lap_norm(self):
        return np.sqrt(np.sum(self.basis.eigenvalues[:, None] ** 2 * self.u ** 2, axis=0))

    def energy(self):
        return np.sum(self.udot ** 2 + self.basis.eigenvalues[:, None] * self.u ** 2, axis=0)

    def tail_fraction(self):
        """Share of ``sum lambda_k^2 |c_k|^2`` carried by the upper half of the basis."""
        lam2 = self.basis.eigenvalues[:, None] ** 2 * self.u ** 2
        total = lam2.sum(axis=0)
        tail = lam2[len(self.basis) // 2:].sum(axis=0)
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.where(total > 0, tail / total, 0.0)


def _solve(basis, f, times, antiderivative=False):
    times = np.atleast_1d(np.asarray(times, dtype=float))
    K = len(basis)
    u = np.zeros((K, len(times)))
    ud = np.zeros_like(u)
    w = np.zeros_like(u) if antiderivative else None
    G = np.zeros_like(u) if antiderivative else None
    for k, g, A in zip(f.index, f.profiles, f.amplitudes):
        om = basis.xi[k]
        al, ad = duhamel_mode(om, g, times)
        u[k], ud[k] = A * al, A * ad
        if antiderivative:
            wk, Gk = duhamel_antiderivative(om, g, times)
            w[k], G[k] = A * wk, A * Gk
    return ModalSolution(basis, times, u, ud, w, G)


def strong_solution(basis, f, t, check_tail=False):
    """Strong solution of ``u'' = Lap u + f``, ``u(0) = u'(0) = 0``.

    With ``check_tail`` the share of ``sum lambda_k^2 |c_k|^2`` in the upper
    half of the basis must stay below ``TAIL_TOLERANCE``.
    """
    sol = _solve(basis, f, t)
    if check_tail and np.any(sol.tail_fraction() > TAIL_TOLERANCE):
        raise ResolutionError("spectral tail too heavy; enlarge the basis")
    return sol


def g_half(basis, v):
    """Square root of the Green operator: coefficients times ``lambda_k^(-1/2)``.

    Accepts a :class:`ModalFunction` or a coefficient array whose first axis
    runs over the basis.
    """
    fac = basis.eigenvalues ** -0.5
    if isinstance(v, ModalFunction):
        return v.scaled_modes(fac)
    v = np.asarray(v)
    return v * fac.reshape((-1,) + (1,) * (v.ndim - 1))


def weak_solution(basis, f, t):
    r"""Weak solution for forcing that is only :math:`L^2` in space.

    Solve with the smoothed forcing :math:`G^{1/2} f` (which is
    :math:`H^1_0`-valued), then undo the smoothing: :math:`u = G^{-1/2} v`.
    The antiderivative :math:`w = \int_0^t u` and :math:`\int_0^t f` are
    returned too, so that :math:`\Delta w = \dot u - \int_0^t f` can be checked.
    """
    v = _solve(basis, g_half(basis, f), t, antiderivative=True)
    root = np.sqrt(basis.eigenvalues)[:, None]
    return ModalSolution(basis, v.times, root * v.u, root * v.udot, root * v.w,
                         root * v.forcing_integral)


LIFTING_KINDS = ("single_layer", "double_layer", "neumann", "dl_modified")


@dataclass
class LiftingResult:
    r"""Per-mode radial solution of a steady problem :math:`-\Delta u + u = g`.

    ``coeffs[n]`` maps region name (``'inner'`` or ``'outer'``) to
    ``(cI, cK, cP)``: multiples of the regular and the decaying solution and of
    the particular solution ``r f_n'(r)`` of the regular one.
    """

    kind: str
    dimension: int
    a: float
    R: float
    modes: tuple
    coeffs: dict
    data_norm: float
    residuals: dict
    source: dict

    def _region(self, r):
        return "inner" if r < self.a else "outer"

    def value(self, n, r, region=None, derivative=False):
        d = self.dimension
        r = np.asarray(r, dtype=float)
        reg = region or self._region(float(np.max(r)))
        cI, cK, cP = self.coeffs[n].get(reg, (0.0, 0.0, 0.0))
        if not derivative:
            v = cI * radial.regular(n, r, d) + cP * r * radial.regular(n, r, d, True)
            return v + (cK * radial.decaying(n, r, d) if cK else 0.0)
        dv = cI * radial.regular(n, r, d, True)
        dv = dv + cP * (radial.regular(n, r, d, True) + r * radial.regular_second(n, r, d))
        return dv + (cK * radial.decaying(n, r, d, True) if cK else 0.0)

    def _regions(self):
        out = []
        if self.kind != "neumann":
            out.append(("inner", 0.0, self.a))
        out.append(("outer", self.a, self.R))
        return out

    def h1_norm(self, panels=8, order=16):
        d = self.dimension
        meas = 2 * np.pi if d == 2 else 4 * np.pi
        total = 0.0
        for n in self.modes:
            L = n * n if d == 2 else n * (n + 1)
            for reg, lo, hi in self._regions():
                r, w = radial.gauss_panels(lo, hi, panels, order)
                u = self.value(n, r, reg)
                du = self.value(n, r, reg, derivative=True)
                total += np.sum(w * r ** (d - 1) * (np.abs(u) ** 2 * (1 + L / r ** 2) + np.abs(du) ** 2))
        return math.sqrt(meas * total)

    def laplacian_norm(self, panels=8, order=16):
        """``||Lap u||`` using ``Lap u = u - g`` region by region."""
        d = self.dimension
        meas = 2 * np.pi if d == 2 else 4 * np.pi
        total = 0.0
        for n in self.modes:
            for reg, lo, hi in self._regions():
                r, w = radial.gauss_panels(lo, hi, panels, order)
                lap = self.value(n, r, reg) - self.source.get((n, reg), lambda x: 0.0)(r)
                total += np.sum(w * r ** (d - 1) * np.abs(lap) ** 2)
        return math.sqrt(meas * total)

    @property
    def ratio(self):
        """Realised ``||u||_1 / ||data||``; zero for zero data."""
        return self.h1_norm() / self.data_norm if self.data_norm > 0 else 0.0


def _snapshot(data, t):
    t = float(t)
    return {n: complex(c) for n, c in zip(data.modes, data.coefficients(t))}


def steady_lifting(kind, data, R, t=0.0, second_derivative=None):
    r"""Solve one steady problem of the cut-off constructions at time ``t``.

    Parameters
    ----------
    kind : {'single_layer', 'double_layer', 'neumann', 'dl_modified'}
        ``single_layer``: :math:`[\partial_r u] = \lambda`, continuous trace, ball
        of radius ``R``. ``double_layer``: :math:`[u] = -\varphi`,
        :math:`[\partial_r u] = 0`. ``neumann``: exterior shell only,
        :math:`\partial_r u(a) = \lambda`. ``dl_modified``: as ``double_layer``
        with source :math:`L(\ddot\varphi - \varphi)` built from the interior
        minimal lifting. Jumps are interior minus exterior; ``u(R) = 0``.
    data : FourierDensity
        Density whose snapshot at ``t`` is the boundary datum.
    R : float
        Radius of the cut-off ball.
    second_derivative : FourierDensity, optional
        :math:`\ddot\varphi` for ``dl_modified`` (defaults to the exact
        derivative of ``data``).
    """
    if kind not in LIFTING_KINDS:
        raise DomainError(f"unknown lifting kind {kind!r}")
    geom = data.geometry
    d, a = geom.dimension, geom.radius
    if not R > a:
        raise DomainError("cut-off radius must exceed the boundary radius")
    snap = _snapshot(data, t)
    sddot = None
    if kind == "dl_modified":
        second_derivative = second_derivative or data.derivative(2)
        sddot = _snapshot(second_derivative, t)
    reg, dec = radial.regular, radial.decaying
    coeffs, source, res = {}, {}, {}
    for n, c in snap.items():
        Ia, dIa = reg(n, a, d), reg(n, a, d, True)
        Ka, dKa = dec(n, a, d), dec(n, a, d, True)
        IR, KR = reg(n, R, d), dec(n, R, d)
        if kind == "neumann":
            # u = B I + C K on (a, R), u(R) = 0, u'(a) = c
            M = np.array([[IR, KR], [dIa, dKa]])
            B, C = np.linalg.solve(M, np.array([0.0, 1.0])) * c
            coeffs[n] = {"outer": (B, C, 0.0)}
            continue
        cP = 0.0
        pa = dpa = 0.0
        if kind == "dl_modified":
            q = sddot.get(n, 0.0) - c
            cP = -q / (2 * Ia)
            pa = cP * a * dIa
            dpa = cP * (dIa + a * radial.regular_second(n, a, d))
            source[(n, "inner")] = (lambda r, q=q, Ia=Ia, n=n: q * reg(n, r, d) / Ia)
        # unknowns: A (inner I), B, C (outer I, K)
        if kind == "single_layer":
            rhs_jump = (0.0, c)
        else:
            rhs_jump = (-c, 0.0)
        M = np.array([
            [Ia, -Ia, -Ka],       # u(a-) - u(a+)
            [dIa, -dIa, -dKa],    # u'(a-) - u'(a+)
            [0.0, IR, KR],        # u(R) = 0
        ])
        b = np.array([rhs_jump[0] - pa, rhs_jump[1] - dpa, 0.0], dtype=complex)
        A, B, C = np.linalg.solve(M.astype(complex), b)
        coeffs[n] = {"inner": (A, 0.0, cP), "outer": (B, C, 0.0)}
    meas = geom.measure
    modes = tuple(snap)
    sgn = 0.5 if kind in ("double_layer", "dl_modified") else -0.5
    data_norm = math.sqrt(meas * sum((1 + n * n) ** sgn * abs(c) ** 2 for n, c in snap.items()))
    out = LiftingResult(kind, d, a, float(R), modes, coeffs, data_norm, res, source)
    # transmission and boundary residuals, mode by mode
    for n, c in snap.items():
        uo = out.value(n, a, "outer")
        duo = out.value(n, a, "outer", True)
        uR = out.value(n, R, "outer")
        if kind == "neumann":
            res[n] = {"neumann": abs(duo - c), "outer": abs(uR)}
            continue
        ui = out.value(n, a, "inner")
        dui = out.value(n, a, "inner", True)
        if kind == "single_layer":
            res[n] = {"trace_jump": abs(ui - uo), "flux_jump": abs(dui - duo - c), "outer": abs(uR)}
        else:
            res[n] = {"trace_jump": abs(ui - uo + c), "flux_jump": abs(dui - duo), "outer": abs(uR)}
    return out
