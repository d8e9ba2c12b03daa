r"""Laplace-domain fundamental solutions and per-mode operator symbols.

For the circle of radius :math:`a` and the angular basis :math:`e^{in\theta}`,
separation of variables gives (with :math:`r_< = \min(r,a)`, :math:`r_> = \max(r,a)`)

.. math::
    \hat S_n(s; r) = a\, I_n(s r_<) K_n(s r_>), \qquad
    \hat V_n = a I_n K_n, \qquad
    \hat K_n = \hat K^t_n = \tfrac{as}{2}(I_n' K_n + I_n K_n'), \qquad
    \hat W_n = -a s^2 I_n' K_n',

all evaluated at :math:`sa`. The double layer is
:math:`\hat D_n(s;r) = as\,I_n'(sa)K_n(sr)` outside and :math:`as\,I_n(sr)K_n'(sa)`
inside. On the sphere (zonal modes) :math:`a I_n K_n` becomes
:math:`s a^2 i_n k_n` and every radial derivative contributes one more factor
:math:`s`.

Jumps are interior minus exterior with the normal pointing out of the
bounded domain, so that :math:`[\partial_\nu \hat S] = 1` and
:math:`[\gamma \hat D] = -1`.

The Steklov--Poincare symbols are :math:`\widehat{\mathrm{DtN}}_n = -s K_n'(sa)/K_n(sa)`
(resp. :math:`-s k_n'/k_n`) and :math:`\widehat{\mathrm{NtD}}_n = 1/\widehat{\mathrm{DtN}}_n`;
both have positive real part on the right half-plane.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .errors import DomainError, SingularityError
from .specfun import _check_order, _complex_arg, _ret

__all__ = [
    "OPERATOR_KINDS",
    "FIELD_KINDS",
    "fundamental_solution",
    "circle_symbol",
    "sphere_symbol",
    "steklov_symbol",
    "symbol",
    "SymbolFamily",
    "NormBound",
    "TABLE1",
    "table1_bound",
    "operator_norm_symbol",
    "sampled_symbol_constant",
    "default_s_grid",
]

OPERATOR_KINDS = ("S", "V", "Kt", "D", "K", "W", "NtD", "DtN")
# fields evaluated away from (or as one-sided limits onto) the boundary
FIELD_KINDS = ("S", "dS", "D", "dD")


def fundamental_solution(dimension, r, s):
    """Laplace-domain fundamental solution of :math:`s^2 - \\Delta`."""
    r = np.asarray(r, dtype=float)
    if np.any(r == 0):
        raise SingularityError("fundamental solution is singular at r = 0")
    if np.any(r < 0):
        raise DomainError("distance must be positive")
    s = _complex_arg(s)
    if dimension == 2:
        return _ret(special.kve(0, s * r) * np.exp(-s * r) / (2 * np.pi))
    if dimension == 3:
        return _ret(np.exp(-s * r) / (4 * np.pi * r))
    raise DomainError("dimension must be 2 or 3")


def _cyl(n, z, d):
    # scaled I_n (e^{-Re z}) and K_n (e^{z}) or their derivatives
    if d == 0:
        return special.ive(n, z), special.kve(n, z)
    return (0.5 * (special.ive(n - 1, z) + special.ive(n + 1, z)),
            -0.5 * (special.kve(n - 1, z) + special.kve(n + 1, z)))


def _sph(n, z, d):
    nu = n + 0.5
    pi_ = np.sqrt(np.pi / (2 * z))
    pk = np.sqrt(2 / (np.pi * z))
    iv, kv = special.ive(nu, z), special.kve(nu, z)
    if d == 0:
        return pi_ * iv, pk * kv
    div = 0.5 * (special.ive(nu - 1, z) + special.ive(nu + 1, z))
    dkv = -0.5 * (special.kve(nu - 1, z) + special.kve(nu + 1, z))
    return pi_ * (div - iv / (2 * z)), pk * (dkv - kv / (2 * z))


def _pair(fam, n, s, r_in, r_out, di, dk):
    """``I^(di)(s r_in) * K^(dk)(s r_out)`` for ``r_in <= r_out`` without overflow."""
    zi, zo = s * r_in, s * r_out
    iv = fam(n, zi, di)[0]
    kv = fam(n, zo, dk)[1]
    return iv * kv * np.exp(zi.real - zo)


def _side(r, a, side):
    if side is None:
        if r == a:
            raise SingularityError("r = a needs side='-' or side='+'")
        return "-" if r < a else "+"
    if side not in ("-", "+"):
        raise ValueError("side must be '-' or '+'")
    return side


def _symbol(fam, dim, kind, n, s, a, r, side):
    _check_order(abs(n) if dim == 2 else n)
    n = abs(n)
    s = _complex_arg(s)
    # (power of s, power of a) in front of the radial product
    pre = (lambda k: a * s ** k) if dim == 2 else (lambda k: a * a * s ** (k + 1))
    if kind == "V":
        return pre(0) * _pair(fam, n, s, a, a, 0, 0)
    if kind in ("K", "Kt"):
        return 0.5 * pre(1) * (_pair(fam, n, s, a, a, 1, 0) + _pair(fam, n, s, a, a, 0, 1))
    if kind == "W":
        return -pre(2) * _pair(fam, n, s, a, a, 1, 1)
    if kind in ("NtD", "DtN"):
        k0 = fam(n, s * a, 0)[1]
        k1 = fam(n, s * a, 1)[1]
        dtn = -s * k1 / k0
        return dtn if kind == "DtN" else 1.0 / dtn
    if kind not in FIELD_KINDS:
        raise DomainError(f"unknown symbol kind {kind!r}")
    if r is None:
        raise DomainError(f"kind {kind!r} needs an observation radius r")
    r = float(r)
    if r <= 0:
        raise DomainError("observation radius must be positive")
    inside = _side(r, a, side) == "-"
    lo, hi = (r, a) if inside else (a, r)
    lo, hi = min(lo, hi), max(lo, hi)
    if kind == "S":
        return pre(0) * _pair(fam, n, s, lo, hi, 0, 0)
    if kind == "dS":
        return pre(1) * (_pair(fam, n, s, lo, hi, 1, 0) if inside else _pair(fam, n, s, lo, hi, 0, 1))
    if kind == "D":
        return pre(1) * (_pair(fam, n, s, lo, hi, 0, 1) if inside else _pair(fam, n, s, lo, hi, 1, 0))
    # dD
    return pre(2) * _pair(fam, n, s, lo, hi, 1, 1)


def circle_symbol(kind, n, s, a=1.0, r=None, side=None):
    """Per-mode symbol on the circle of radius ``a``.

    Parameters
    ----------
    kind : str
        One of ``V, K, Kt, W, NtD, DtN`` or a field kind ``S, dS, D, dD``
        (potential or its radial derivative at radius ``r``).
    n : int
        Angular mode; the symbol depends on ``|n|``.
    s : complex or array_like
        Laplace variable(s), ``Re s > 0``.
    side : {'-', '+'}, optional
        One-sided limit when ``r == a``.
    """
    return _ret(_symbol(_cyl, 2, kind, n, s, float(a), r, side))


def sphere_symbol(kind, n, s, a=1.0, r=None, side=None):
    """Per-mode symbol for zonal modes on the sphere of radius ``a``."""
    return _ret(_symbol(_sph, 3, kind, n, s, float(a), r, side))


def steklov_symbol(kind, n, s, a=1.0, dimension=2):
    """Exterior Dirichlet-to-Neumann or Neumann-to-Dirichlet symbol."""
    if kind not in ("NtD", "DtN"):
        raise DomainError("Steklov kind must be 'NtD' or 'DtN'")
    fn = circle_symbol if dimension == 2 else sphere_symbol
    return fn(kind, n, s, a)


def symbol(kind, n, s, geometry, r=None, side=None):
    fn = circle_symbol if geometry.dimension == 2 else sphere_symbol
    return fn(kind, n, s, geometry.radius, r, side)


@dataclass(frozen=True)
class SymbolFamily:
    """A symbol kind bound to a geometry (and observation radius for fields)."""

    kind: str
    geometry: object
    r: float = None
    side: str = None

    def __post_init__(self):
        if self.kind not in OPERATOR_KINDS + FIELD_KINDS:
            raise DomainError(f"unknown symbol kind {self.kind!r}")

    def __call__(self, n, s):
        return symbol(self.kind, n, s, self.geometry, self.r, self.side)

    @property
    def bound(self):
        base = {"dS": "S", "dD": "D"}.get(self.kind, self.kind)
        return table1_bound(base)


@dataclass(frozen=True)
class NormBound:
    r"""Laplace-domain bound :math:`C_F(\sigma)|s|^\mu` with
    :math:`C_F(\sigma) = c / (\sigma^p \min(1,\sigma)^q)`."""

    mu: float
    p: float = 1.0
    q: float = 0.0
    const: float = 1.0

    def c_f(self, sigma):
        sigma = np.asarray(sigma, dtype=float)
        return _ret(self.const / (sigma ** self.p * np.minimum(1.0, sigma) ** self.q))

    def __call__(self, s):
        s = np.asarray(s, dtype=complex)
        return _ret(self.c_f(s.real) * np.abs(s) ** self.mu)


@dataclass(frozen=True)
class _Row:
    kind: str
    X: str
    Y: str
    bound: NormBound
    order: int  # highest time derivative in the time-domain bound
    growth: str
    symbol_quantity: str = field(default="boundary")


TABLE1 = {
    "S": _Row("S", "H^{-1/2}(Gamma)", "H^1(R^d)", NormBound(1.0, 1.0, 2.0), 2, "O(t)", "field"),
    "V": _Row("V", "H^{-1/2}(Gamma)", "H^{1/2}(Gamma)", NormBound(1.0, 1.0, 2.0), 2, "O(t)"),
    "Kt": _Row("Kt", "H^{-1/2}(Gamma)", "H^{-1/2}(Gamma)", NormBound(1.5, 1.0, 1.5), 2, "O(1)"),
    "D": _Row("D", "H^{1/2}(Gamma)", "H^1(R^d\\Gamma)", NormBound(1.5, 1.0, 1.5), 2, "O(t)", "field"),
    "K": _Row("K", "H^{1/2}(Gamma)", "H^{1/2}(Gamma)", NormBound(1.5, 1.0, 1.5), 2, "O(t)"),
    "W": _Row("W", "H^{1/2}(Gamma)", "H^{-1/2}(Gamma)", NormBound(2.0, 1.0, 1.0), 4, "O(1)"),
    "NtD": _Row("NtD", "H^{-1/2}(Gamma)", "H^{1/2}(Gamma)", NormBound(1.0, 1.0, 2.0), 2, "O(t)"),
    "DtN": _Row("DtN", "H^{1/2}(Gamma)", "H^{-1/2}(Gamma)", NormBound(2.0, 1.0, 1.0), 4, "O(1)"),
}


def table1_bound(kind):
    """The ``(mu, C_F)`` pair of the comparison table for one operator."""
    try:
        return TABLE1[kind].bound
    except KeyError:
        raise DomainError(f"unknown operator kind {kind!r}") from None


# Sobolev exponents (input, output) used to weight per-mode symbol moduli
_EXPONENTS = {
    "V": (-0.5, 0.5), "NtD": (-0.5, 0.5), "Kt": (-0.5, -0.5),
    "K": (0.5, 0.5), "W": (0.5, -0.5), "DtN": (0.5, -0.5),
}


def operator_norm_symbol(kind, n, s, geometry):
    r"""Per-mode norm of the operator :math:`X \to Y` of the comparison table.

    Boundary operators use the weighted modulus
    :math:`(1+n^2)^{(s_Y - s_X)/2}|\hat F_n(s)|`. For the potentials the
    :math:`H^1` norm over the whole space is bounded through the energy identities

    .. math::
        \|\nabla u\|^2 + |s|^2\|u\|^2 = |\Gamma|\,|c_n|^2\,
        \mathrm{Re}(s\hat V_n)/\mathrm{Re}\,s
        \quad (u = \hat S c_n), \qquad
        \ldots = |\Gamma|\,|c_n|^2\,\mathrm{Re}(\bar s \hat W_n)/\mathrm{Re}\,s
        \quad (u = \hat D c_n),

    together with :math:`\|u\|_1^2 \le \max(1,|s|^{-2})(\|\nabla u\|^2+|s|^2\|u\|^2)`.
    """
    s = np.asarray(s, dtype=complex)
    w = 1.0 + float(n) ** 2
    if kind == "S":
        v = symbol("V", n, s, geometry)
        e = np.maximum(1.0, np.abs(s) ** -2) * (s * v).real / s.real
        return _ret(np.sqrt(np.maximum(e, 0.0) * w ** 0.5))
    if kind == "D":
        v = symbol("W", n, s, geometry)
        e = np.maximum(1.0, np.abs(s) ** -2) * (np.conj(s) * v).real / s.real
        return _ret(np.sqrt(np.maximum(e, 0.0) * w ** -0.5))
    sx, sy = _EXPONENTS[kind]
    return _ret(w ** ((sy - sx) / 2) * np.abs(symbol(kind, n, s, geometry)))


def default_s_grid(n_mod=41, n_arg=21, mod_range=(1e-2, 1e2), margin=0.1):
    """Polar grid in the right half-plane, log-spaced in ``|s|``."""
    mods = np.logspace(np.log10(mod_range[0]), np.log10(mod_range[1]), n_mod)
    args = np.linspace(-np.pi / 2 + margin, np.pi / 2 - margin, n_arg)
    return (mods[:, None] * np.exp(1j * args[None, :])).ravel()


def sampled_symbol_constant(kind, geometry, n_max=16, s_grid=None):
    """Largest ratio of the per-mode operator norm to ``C_F(Re s)|s|^mu``.

    This is the constant hidden in the comparison table; it is a sampled
    supremum over ``0 <= n <= n_max`` and ``s_grid``.
    """
    if s_grid is None:
        s_grid = default_s_grid()
    s_grid = np.asarray(s_grid, dtype=complex)
    ref = table1_bound(kind)(s_grid)
    best = 0.0
    for n in range(n_max + 1):
        best = max(best, float(np.max(operator_norm_symbol(kind, n, s_grid, geometry) / ref)))
    return best
