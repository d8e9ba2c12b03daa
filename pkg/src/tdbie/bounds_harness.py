r"""Executable checks of the time-domain bounds for layer potentials.

Every check returns :class:`BoundReport` objects holding, on a time grid, the
left-hand side computed numerically (convolution quadrature or the spectral
solver), the right-hand side assembled from B-functionals and geometry
constants, the margin ``rhs - lhs`` and the ratio of the left-hand side to
the right-hand functional stripped of its constants.

Geometry constants are estimated empirically: each is a ratio realised by
liftings of random mode-limited boundary data (seeded), multiplied by a
safety factor before it enters a bound.
"""

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from . import radial
from .boundary_fourier import (
    FourierDensity,
    b_functional_history,
    norm_integral_history,
    sobolev_norm,
)
from .cq import Observation, evaluate_potential, field_h1_norm
from .errors import DomainError
from .laplace_ops import TABLE1, sampled_symbol_constant, table1_bound
from .spectral_wave import steady_lifting
from .specfun import bessel_j_zero

__all__ = [
    "Resolution",
    "GeometryConstants",
    "empirical_constants",
    "per_mode_constants",
    "BoundReport",
    "check_single_layer_bounds",
    "check_double_layer_bounds",
    "check_steklov",
    "transfer_parameters",
    "laplace_transfer_bound",
    "check_transfer",
    "regenerate_table1",
    "PropagationReport",
    "propagation_check",
    "growth_slope",
    "ratio_band",
    "check_evolution_bounds",
    "check_weak_bounds",
]

SAFETY = 1.5


@dataclass(frozen=True)
class Resolution:
    """Discretisation parameters of the CQ-based left-hand sides."""

    dt: float = 0.05
    method: str = "BDF2"
    panel: float = 0.25
    order: int = 8
    tolerance: float = 1e-6  # relative to the largest right-hand side


# ---------------------------------------------------------------- constants

def _radial_profile(n, d, lo, hi, kind, a, R):
    """Radial solution of ``-Lap u + u = 0`` normalised so that ``u(a) = 1``."""
    reg, dec = radial.regular, radial.decaying
    if kind == "interior":
        f = lambda r: reg(n, r, d) / reg(n, a, d)
        df = lambda r: reg(n, r, d, True) / reg(n, a, d)
        return f, df
    if kind == "dirichlet":
        cI, cK = dec(n, R, d), -reg(n, R, d)
    else:  # natural condition at R
        cI, cK = dec(n, R, d, True), -reg(n, R, d, True)
    ua = cI * reg(n, a, d) + cK * dec(n, a, d)
    f = lambda r: (cI * reg(n, r, d) + cK * dec(n, r, d)) / ua
    df = lambda r: (cI * reg(n, r, d, True) + cK * dec(n, r, d, True)) / ua
    return f, df


def _lifting_norms(coeffs, d, a, R, kind, panels=8, order=16):
    """``(||v||_1^2, ||d_r v(a)||_{-1/2}^2)`` for the lifting of ``sum c_n Y_n``."""
    lo, hi = (0.0, a) if kind == "interior" else (a, R)
    r, w = radial.gauss_panels(lo, hi, panels, order)
    meas = 2 * np.pi if d == 2 else 4 * np.pi
    gamma = meas * a ** (d - 1)
    h1 = flux = 0.0
    for n, c in coeffs.items():
        f, df = _radial_profile(n, d, lo, hi, kind, a, R)
        L = n * n if d == 2 else n * (n + 1)
        u, du = f(r), df(r)
        h1 += abs(c) ** 2 * np.sum(w * r ** (d - 1) * (u ** 2 * (1 + L / r ** 2) + du ** 2))
        flux += gamma * (1 + n * n) ** -0.5 * abs(c * df(a)) ** 2
    return meas * h1, flux


def per_mode_constants(n, dimension, a=1.0, R=1.5):
    r"""Sharp single-mode quotients in closed form.

    With :math:`q^-_n = f_n'(a)/f_n(a)` for the regular solution and
    :math:`q^{D}_n, q^{N}_n` the analogous exterior quantities on
    :math:`a<r<R` with Dirichlet or natural condition at ``R``:
    :math:`C_L^2 = q^-_n/\sqrt{1+n^2}`, :math:`(C_L^+)^2 = q^D_n/\sqrt{1+n^2}`,
    :math:`C_\Gamma^2 = \sqrt{1+n^2}/\min(q^-_n, q^N_n)` and
    :math:`C_\nu = \max(C_L, C_L^+)`.
    """
    w = math.sqrt(1 + n * n)
    qi = radial.dtn_interior(n, a, dimension)
    qd = radial.dtn_annulus(n, a, R, dimension, "dirichlet")
    qn = radial.dtn_annulus(n, a, R, dimension, "neumann")
    cl, clp = math.sqrt(qi / w), math.sqrt(qd / w)
    return {"c_gamma": math.sqrt(w / min(qi, qn)), "c_l": cl, "c_l_plus": clp, "c_nu": max(cl, clp)}


@dataclass
class GeometryConstants:
    """Constants of the bounds for the boundary of radius ``a`` inside ``B(0, R)``."""

    dimension: int
    a: float
    R: float
    c_gamma: float
    c_l: float
    c_l_plus: float
    c_nu: float
    safety: float = SAFETY
    protocol: dict = field(default_factory=dict)

    @property
    def delta(self):
        return self.R - self.a

    @property
    def c0(self):
        """Poincare constant of ``B(0, R)``."""
        return self.R / (bessel_j_zero(0, 1) if self.dimension == 2 else math.pi)

    def C_t(self, t):
        return self.c0 * (1 + np.asarray(t, dtype=float) / self.R)

    def E_t(self, t):
        return 2 * (self.R + np.asarray(t, dtype=float))

    def effective(self, name):
        return self.safety * getattr(self, name)

    def as_dict(self):
        return {
            "dimension": self.dimension, "a": self.a, "R": self.R, "delta": self.delta,
            "C0": self.c0, "C_Gamma": self.c_gamma, "C_L": self.c_l, "C_L_plus": self.c_l_plus,
            "C_nu": self.c_nu, "safety": self.safety, "protocol": self.protocol,
        }


def empirical_constants(geometry, R=1.5, n_max=24, samples=64, seed=0, safety=SAFETY):
    """Estimate the geometry constants from realised ratios.

    Sample ``k`` draws a random boundary datum: a single mode on even
    ``k``, two to four modes otherwise, orders uniform in ``0..n_max`` and
    complex Gaussian amplitudes. For each datum the interior minimal lifting,
    the exterior liftings on ``a < r < R`` (zero or natural condition at
    ``R``) and the steady transmission problems are solved, and the largest
    realised ratio is kept for every constant.
    """
    d, a = geometry.dimension, geometry.radius
    if not R > a:
        raise DomainError("R must exceed the boundary radius")
    rng = np.random.default_rng(seed)
    meas = geometry.measure
    best = {"c_gamma": 0.0, "c_l": 0.0, "c_l_plus": 0.0, "c_nu": 0.0}
    for k in range(samples):
        m = 1 if k % 2 == 0 else int(rng.integers(2, 5))
        modes = rng.choice(n_max + 1, size=m, replace=False)
        amps = rng.normal(size=m) + 1j * rng.normal(size=m)
        coeffs = {int(n): complex(c) for n, c in zip(modes, amps)}
        half = math.sqrt(meas * sum((1 + n * n) ** 0.5 * abs(c) ** 2 for n, c in coeffs.items()))
        mhalf = math.sqrt(meas * sum((1 + n * n) ** -0.5 * abs(c) ** 2 for n, c in coeffs.items()))
        h_int, f_int = _lifting_norms(coeffs, d, a, R, "interior")
        h_dir, f_dir = _lifting_norms(coeffs, d, a, R, "dirichlet")
        h_nat, _ = _lifting_norms(coeffs, d, a, R, "natural")
        best["c_l"] = max(best["c_l"], math.sqrt(h_int) / half)
        best["c_l_plus"] = max(best["c_l_plus"], math.sqrt(h_dir) / half)
        # liftings solve Lap v = v, so ||grad v||^2 + ||Lap v||^2 = ||v||_1^2
        best["c_nu"] = max(best["c_nu"], math.sqrt(f_int / h_int), math.sqrt(f_dir / h_dir))
        gam = [half / math.sqrt(h_int), half / math.sqrt(h_nat)]
        dens = _snapshot_density(coeffs, geometry)
        for kind in ("single_layer", "neumann"):
            gam.append(steady_lifting(kind, dens, R).h1_norm() / mhalf)
        best["c_gamma"] = max(best["c_gamma"], *gam)
    protocol = {"seed": seed, "samples": samples, "n_max": n_max,
                "draw": "single mode on even draws, 2-4 modes otherwise; complex normal amplitudes"}
    return GeometryConstants(d, float(a), float(R), safety=safety, protocol=protocol, **best)


def _snapshot_density(coeffs, geometry):
    from .profiles import poly_exp
    return FourierDensity([(n, poly_exp([1.0]), c) for n, c in coeffs.items()], geometry)


# ------------------------------------------------------------------ reports

@dataclass
class BoundReport:
    """One inequality ``lhs(t) <= rhs(t)`` sampled on ``times``."""

    inequality: str
    times: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray
    functional: np.ndarray
    tolerance: float = 0.0
    meta: dict = field(default_factory=dict)

    @property
    def margin(self):
        return self.rhs - self.lhs

    @property
    def ratio(self):
        with np.errstate(divide="ignore", invalid="ignore"):
            r = np.where(self.functional > 0, self.lhs / self.functional, 0.0)
        return r

    @property
    def min_margin(self):
        return float(np.min(self.margin)) if len(self.times) else 0.0

    def passed(self):
        return self.min_margin >= -self.tolerance

    def rows(self, stride=1):
        for i in range(0, len(self.times), stride):
            yield (self.times[i], self.lhs[i], self.rhs[i], self.margin[i], self.ratio[i])

    def to_csv(self, path, scenario_hash="", stride=1):
        with open(path, "w", newline="") as fh:
            fh.write(f"# scenario_hash: {scenario_hash}\n# inequality: {self.inequality}\n")
            wr = csv.writer(fh)
            wr.writerow(["t", "lhs", "rhs", "margin", "ratio"])
            for row in self.rows(stride):
                wr.writerow([repr(float(x)) for x in row])

    def summary(self):
        return {
            "inequality": self.inequality,
            "passed": bool(self.passed()),
            "min_margin": self.min_margin,
            "max_ratio": float(np.max(self.ratio)) if len(self.times) else 0.0,
            "max_lhs": float(np.max(self.lhs)) if len(self.times) else 0.0,
            "tolerance": self.tolerance,
            **self.meta,
        }


def _report(name, times, lhs, const, functional, res, meta=None):
    rhs = const * functional
    tol = res.tolerance * float(np.max(rhs)) if len(rhs) else 0.0
    return BoundReport(name, times, np.asarray(lhs, float), rhs, functional, tol, meta or {})


def _times(T_end, res):
    N = int(round(T_end / res.dt))
    return res.dt * np.arange(N + 1)


def _boundary(kind, density, T_end, res, s):
    ps = evaluate_potential(kind, density, None, res.dt, T_end, res.method)
    return ps.sobolev_norm(s)


def _field(kind, density, T_end, res):
    return field_h1_norm(kind, density, res.dt, T_end, res.method, res.panel, res.order)[1]


def _select(parts, allowed):
    parts = allowed if parts is None else tuple(parts)
    bad = set(parts) - set(allowed)
    if bad:
        raise DomainError(f"unknown inequalities {sorted(bad)}")
    return parts


def check_single_layer_bounds(lam, T_end, resolution=None, constants=None, parts=None):
    """Single layer, single-layer operator and adjoint double-layer bounds.

    ``parts`` selects among ``'S'`` (whole-space ``H^1`` norm of the
    potential), ``'V'`` and ``'Kt'``; reports are named ``single_layer.<part>``.
    """
    res = resolution or Resolution()
    geom = lam.geometry
    cst = constants or empirical_constants(geom)
    parts = _select(parts, ("S", "V", "Kt"))
    t = _times(T_end, res)
    nrm = sobolev_norm(lam, t, -0.5) * np.ones_like(t)
    B = b_functional_history(lam, "B2_minus", t)
    Ct = cst.C_t(t)
    Fe = nrm + np.sqrt(1 + Ct ** 2) * B
    Fg = nrm + B
    cg, cn = cst.effective("c_gamma"), cst.effective("c_nu")
    out = {}
    if "S" in parts:
        out["S"] = _report("single_layer.S", t, _field("S", lam, T_end, res), cg, Fe, res, {"operator": "S"})
    if "V" in parts:
        out["V"] = _report("single_layer.V", t, _boundary("V", lam, T_end, res, 0.5), cg ** 2, Fe, res, {"operator": "V"})
    if "Kt" in parts:
        out["Kt"] = _report("single_layer.Kt", t, _boundary("Kt", lam, T_end, res, -0.5), math.sqrt(2) * cn * cg, Fg,
                             res, {"operator": "Kt"})
    return out


def check_double_layer_bounds(phi, T_end, resolution=None, constants=None, parts=None):
    """Double layer, double-layer operator and hypersingular bounds.

    ``parts`` selects among ``'D'`` (broken ``H^1`` norm of the potential),
    ``'K'`` and ``'W'``. The first two need a C^1 density with integrable
    second derivative, ``'W'`` a C^3 density with integrable fourth
    derivative. Reports are named ``double_layer.<part>``.
    """
    res = resolution or Resolution()
    geom = phi.geometry
    cst = constants or empirical_constants(geom)
    parts = _select(parts, ("D", "K", "W"))
    t = _times(T_end, res)
    nrm = sobolev_norm(phi, t, 0.5) * np.ones_like(t)
    Ct = cst.C_t(t)
    cl, cg, cn = cst.effective("c_l"), cst.effective("c_gamma"), cst.effective("c_nu")
    out = {}
    if "D" in parts or "K" in parts:
        B2 = b_functional_history(phi, "B2_plus", t)
        Fm = nrm + np.sqrt(1 + Ct ** 2) * B2
        if "D" in parts:
            out["D"] = _report("double_layer.D", t, _field("D", phi, T_end, res), cl, Fm, res, {"operator": "D"})
        if "K" in parts:
            out["K"] = _report("double_layer.K", t, _boundary("K", phi, T_end, res, 0.5), cg * cl, Fm, res,
                                 {"operator": "K"})
    if "W" in parts:
        B4 = b_functional_history(phi, "B4_plus", t)
        dd = sobolev_norm(phi.derivative(2), t, 0.5) * np.ones_like(t)
        Fo = 4 * nrm + 2 * dd + B4
        out["W"] = _report("double_layer.W", t, _boundary("W", phi, T_end, res, -0.5), math.sqrt(2) * cn * cl, Fo,
                             res, {"operator": "W"})
    return out


def check_steklov(kind, data, T_end, resolution=None, constants=None):
    """Neumann-to-Dirichlet (``'NtD'``) or Dirichlet-to-Neumann (``'DtN'``) bound."""
    res = resolution or Resolution()
    cst = constants or empirical_constants(data.geometry)
    t = _times(T_end, res)
    if kind == "NtD":
        nrm = sobolev_norm(data, t, -0.5) * np.ones_like(t)
        B = b_functional_history(data, "B2_minus", t)
        F = nrm + np.sqrt(1 + cst.E_t(t) ** 2) * B
        return _report("steklov.NtD", t, _boundary("NtD", data, T_end, res, 0.5), cst.effective("c_gamma") ** 2, F,
                       res, {"operator": "NtD"})
    if kind == "DtN":
        nrm = sobolev_norm(data, t, 0.5) * np.ones_like(t)
        dd = sobolev_norm(data.derivative(2), t, 0.5) * np.ones_like(t)
        B4 = b_functional_history(data, "B4_plus", t)
        F = 4 * nrm + 2 * dd + B4
        const = math.sqrt(2) * cst.effective("c_nu") * cst.effective("c_l_plus")
        return _report("steklov.DtN", t, _boundary("DtN", data, T_end, res, -0.5), const, F, res, {"operator": "DtN"})
    raise DomainError("Steklov kind must be 'NtD' or 'DtN'")


# ------------------------------------------------------- Laplace-domain route

def transfer_parameters(mu):
    """``(k, eps, prefactor)`` of the transfer bound for symbol growth ``|s|^mu``."""
    if mu < 0:
        raise DomainError("mu must be >= 0")
    k = math.floor(mu + 2)
    eps = k - (mu + 1)
    return k, eps, math.sqrt(2 ** (1 + eps)) / (math.pi * eps)


_X_EXPONENT = {"S": -0.5, "V": -0.5, "Kt": -0.5, "NtD": -0.5, "D": 0.5, "K": 0.5, "W": 0.5, "DtN": 0.5}
_Y_EXPONENT = {"V": 0.5, "NtD": 0.5, "K": 0.5, "Kt": -0.5, "W": -0.5, "DtN": -0.5}


def laplace_transfer_bound(kind, g, t, constant=1.0):
    r"""Bound obtained from the Laplace-domain estimate of ``kind``:

    .. math::
        \frac{\sqrt{2^{1+\varepsilon}}}{\pi\varepsilon}\, t^\varepsilon\, C_F(1/t)
        \int_0^t \|g^{(k)}(\tau)\|_X\,d\tau,

    times ``constant`` (the constant of the symbol estimate). ``g`` must be
    causal and ``C^{k-1}``; otherwise :class:`SmoothnessError` is raised.
    """
    nb = table1_bound(kind)
    k, eps, pref = transfer_parameters(nb.mu)
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    I = norm_integral_history(g, k, _X_EXPONENT[kind], ts)
    out = np.zeros(ts.shape)
    pos = ts > 0
    out[pos] = constant * pref * ts[pos] ** eps * nb.c_f(1.0 / ts[pos]) * I[pos]
    return out if np.ndim(t) else float(out[0])


def check_transfer(kind, g, T_end, resolution=None, constant=None, safety=SAFETY):
    """Compare the CQ output ``||(f*g)(t)||_Y`` with the transfer bound.

    By default the symbol constant is the sampled supremum of
    :func:`sampled_symbol_constant`, times ``safety``.
    """
    res = resolution or Resolution()
    if constant is None:
        constant = safety * sampled_symbol_constant(kind, g.geometry)
    t = _times(T_end, res)
    if kind in ("S", "D"):
        lhs = _field(kind, g, T_end, res)
    else:
        lhs = _boundary(kind, g, T_end, res, _Y_EXPONENT[kind])
    F = laplace_transfer_bound(kind, g, t)
    return _report(f"transfer.{kind}", t, lhs, constant, F, res, {"operator": kind, "symbol_constant": constant})


def _frac(x):
    for num, den in ((x, 1), (2 * x, 2)):
        if abs(num - round(num)) < 1e-12:
            return f"{int(round(num))}" if den == 1 else f"{int(round(num))}/{den}"
    return f"{x:g}"


def _power(var, p):
    if p == 0:
        return "1"
    if p == 1:
        return var
    return f"{var}^{_frac(p)}"


def regenerate_table1():
    """Rows of the regularity and growth comparison between both routes.

    Each row carries the symbol estimate ``C_F(sigma)|s|^mu``, the derivative
    order ``k`` needed by the transfer bound, its time factor
    ``E(t) = t^(eps + p) max(1, t^q)`` (from ``t^eps C_F(1/t)``), the order
    ``n`` used by the time-domain bounds and their growth class.
    """
    rows = []
    for kind, row in TABLE1.items():
        nb = row.bound
        k, eps, _ = transfer_parameters(nb.mu)
        e_pow = eps + nb.p
        rows.append({
            "F": kind,
            "X": row.X,
            "Y": row.Y,
            "mu": nb.mu,
            "C_F": f"{_power('|s|', nb.mu)}/(sigma {_power('min(1,sigma)', nb.q)})",
            "sigma_power": nb.p,
            "min_power": nb.q,
            "k": k,
            "E": f"{_power('t', e_pow)} max{{1,{_power('t', nb.q)}}} D_{k}",
            "E_t_power": e_pow,
            "E_max_power": nb.q,
            "n": row.order,
            "growth": row.growth,
        })
    return rows


# -------------------------------------------------------- finite propagation

@dataclass
class PropagationReport:
    kind: str
    radius: float
    arrival: float
    dts: list
    pre_arrival: list
    post_arrival: list

    @property
    def orders(self):
        return [math.log(p0 / p1) / math.log(d0 / d1)
                for p0, p1, d0, d1 in zip(self.pre_arrival[:-1], self.pre_arrival[1:], self.dts[:-1], self.dts[1:])]

    @property
    def monotone(self):
        return all(p1 < p0 for p0, p1 in zip(self.pre_arrival[:-1], self.pre_arrival[1:]))

    @property
    def separation(self):
        return self.post_arrival[-1] / self.pre_arrival[-1] if self.pre_arrival[-1] > 0 else math.inf

    def summary(self):
        return {"kind": self.kind, "radius": self.radius, "arrival": self.arrival, "dts": self.dts,
                "pre_arrival": self.pre_arrival, "post_arrival": self.post_arrival,
                "orders": self.orders, "monotone": self.monotone, "separation": self.separation}


def propagation_check(kind, density, r, dt_ladder, T_end=None, method="BDF2"):
    """Pre-arrival signal of a potential observed at radius ``r > a``.

    The signal cannot reach ``r`` before ``(r - a) + onset``; the sup over
    earlier steps measures the discretisation leak. The amplitude uses the
    bound ``sum_n |u_n| sup|Y_n|``.
    """
    geom = density.geometry
    a = geom.radius
    if not r > a:
        raise DomainError("observation radius must exceed the boundary radius")
    arrival = (r - a) + max(density.onset, 0.0)
    T_end = T_end or arrival + 4.0
    sup = [1.0 if geom.dimension == 2 else math.sqrt(2 * n + 1) for n in density.modes]
    pre, post = [], []
    for dt in dt_ladder:
        ps = evaluate_potential(kind, density, Observation(radii=(r,)), dt, T_end, method)
        amp = np.tensordot(sup, np.abs(ps.values[:, 0, :]), axes=(0, 0)) if density.modes else \
            np.zeros(len(ps.times))
        before = ps.times < arrival - 1e-12
        pre.append(float(np.max(amp[before])) if np.any(before) else 0.0)
        post.append(float(np.max(amp[~before])) if np.any(~before) else 0.0)
    return PropagationReport(kind, float(r), arrival, [float(x) for x in dt_ladder], pre, post)


# ------------------------------------------------------------ growth classes

def growth_slope(times, values, t_min):
    """Least-squares slope of ``log sup_{[0,t]} values`` against ``log t`` for ``t >= t_min``."""
    times = np.asarray(times, dtype=float)
    run = np.maximum.accumulate(np.asarray(values, dtype=float))
    sel = (times >= t_min) & (run > 0)
    if np.count_nonzero(sel) < 2:
        return 0.0
    return float(np.polyfit(np.log(times[sel]), np.log(run[sel]), 1)[0])


def ratio_band(times, ratio, t_short):
    """``max ratio over the full horizon / max ratio up to t_short``."""
    times = np.asarray(times, dtype=float)
    ratio = np.asarray(ratio, dtype=float)
    short = np.max(ratio[times <= t_short])
    return float(np.max(ratio) / short) if short > 0 else math.inf


# ---------------------------------------------------- evolution problem bounds

def check_evolution_bounds(basis, f, times, solution=None, poincare=None, tolerance=1e-9):
    """Bounds for the strong solution with forcing ``f``.

    ``||u|| <= C int||f||``, ``||grad u|| <= int||f||`` and
    ``||Lap u|| <= int||grad f||``; ``C`` defaults to the basis Poincare
    constant.
    """
    from .spectral_wave import strong_solution
    times = np.asarray(times, dtype=float)
    sol = solution or strong_solution(basis, f, times)
    C = basis.poincare_constant if poincare is None else poincare
    If = f.integrated_norm(times, 0)
    Ig = f.integrated_norm(times, 1)
    C = np.broadcast_to(np.asarray(C, dtype=float), times.shape)
    mk = lambda name, lhs, rhs, F: BoundReport(name, times, lhs, rhs, F, tolerance)
    return {
        "poincare": mk("poincare", sol.norm(), C * If, If),
        "gradient": mk("gradient", sol.grad_norm(), If, If),
        "laplacian": mk("laplacian", sol.lap_norm(), Ig, Ig),
    }


def check_weak_bounds(basis, f, times, tolerance=1e-9):
    """Gradient bound and the modal residual of ``Lap w = u_dot - int f`` for weak solutions."""
    from .spectral_wave import weak_solution
    times = np.asarray(times, dtype=float)
    sol = weak_solution(basis, f, times)
    If = f.integrated_norm(times, 0)
    report = BoundReport("gradient", times, sol.grad_norm(), If, If, tolerance)
    lap_w = -basis.eigenvalues[:, None] * sol.w
    resid = lap_w - (sol.udot - sol.forcing_integral)
    scale = np.max(np.abs(sol.udot)) + np.max(np.abs(sol.forcing_integral)) + 1e-300
    return report, float(np.max(np.abs(resid)) / scale), sol
