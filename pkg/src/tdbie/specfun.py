r"""Bessel-type special functions used by the operator symbols and eigenbases.

Evaluation is delegated to :mod:`scipy.special` (AMOS for complex arguments);
this module fixes conventions, range checks and the exponentially scaled
forms needed to evaluate products such as :math:`I_n(sa)K_n(sr)` at large
:math:`|s|` without overflow.

Conventions
-----------
Scaled modified Bessel functions are

.. math::
    \tilde I_\nu(z) = e^{-\mathrm{Re}\,z} I_\nu(z), \qquad
    \tilde K_\nu(z) = e^{z} K_\nu(z),

and the modified spherical Bessel functions are normalised so that
:math:`i_0(z)=\sinh z/z` and :math:`k_0(z)=e^{-z}/z`:

.. math::
    i_n(z) = \sqrt{\pi/(2z)}\, I_{n+1/2}(z), \qquad
    k_n(z) = \sqrt{2/(\pi z)}\, K_{n+1/2}(z).

With these, :math:`I_n' K_n - I_n K_n' = 1/z` and
:math:`i_n' k_n - i_n k_n' = 1/z^2`.
"""

from functools import lru_cache

import numpy as np
from scipy import special

from .errors import DomainError

MAX_ORDER = 200
MAX_REAL_ARG = 1e5
MAX_ZERO_ORDER = 100
MAX_ZERO_INDEX = 1000

__all__ = [
    "bessel_j",
    "bessel_y",
    "bessel_j_zero",
    "bessel_j_zeros",
    "mod_bessel_i",
    "mod_bessel_k",
    "sph_bessel_i",
    "sph_bessel_k",
]


def _check_order(order, integer=True):
    if integer and int(order) != order:
        raise DomainError(f"order must be an integer, got {order}")
    if order < 0 or order > MAX_ORDER:
        raise DomainError(f"order {order} outside [0, {MAX_ORDER}]")


def _real_arg(x, allow_zero=True):
    x = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(x > MAX_REAL_ARG):
        raise DomainError(f"argument outside [0, {MAX_REAL_ARG:g}]")
    if allow_zero and np.any(x < 0):
        raise DomainError("argument must be >= 0")
    if not allow_zero and np.any(x <= 0):
        raise DomainError("argument must be > 0")
    return x


def _complex_arg(z):
    z = np.asarray(z, dtype=complex)
    if np.any(~(z.real > 0)):
        raise DomainError("modified Bessel functions need Re z > 0")
    return z


def _ret(v):
    return v[()] if isinstance(v, np.ndarray) and v.ndim == 0 else v


def bessel_j(order, x, derivative=False):
    """Bessel function of the first kind :math:`J_n(x)` (or :math:`J_n'`)."""
    _check_order(order)
    x = _real_arg(x)
    if derivative:
        return _ret(special.jvp(order, x))
    return _ret(special.jv(order, x))


def bessel_y(order, x, derivative=False):
    """Bessel function of the second kind :math:`Y_n(x)`, ``x > 0``."""
    _check_order(order)
    x = _real_arg(x, allow_zero=False)
    if derivative:
        return _ret(special.yvp(order, x))
    return _ret(special.yv(order, x))


@lru_cache(maxsize=256)
def _zeros(order, count):
    z = special.jn_zeros(order, count)
    # two Newton polishing steps against jv
    for _ in range(2):
        z = z - special.jv(order, z) / special.jvp(order, z)
    z.setflags(write=False)
    return z


def bessel_j_zeros(order, count):
    """First ``count`` positive zeros of :math:`J_n` as a read-only array."""
    if int(order) != order or not 0 <= order <= MAX_ZERO_ORDER:
        raise DomainError(f"zero order {order} outside [0, {MAX_ZERO_ORDER}]")
    if int(count) != count or not 1 <= count <= MAX_ZERO_INDEX:
        raise DomainError(f"zero count {count} outside [1, {MAX_ZERO_INDEX}]")
    return _zeros(int(order), int(count))


def bessel_j_zero(order, index):
    """The ``index``-th positive zero :math:`j_{n,m}` of :math:`J_n` (1-based)."""
    return float(bessel_j_zeros(order, index)[index - 1])


def mod_bessel_i(order, z, derivative=False, scaled=False):
    r"""Modified Bessel function :math:`I_\nu(z)` for ``Re z > 0``.

    ``order`` may be any real in ``[0, 200]`` (half-integers are used by the
    spherical functions). With ``scaled`` the factor :math:`e^{-\mathrm{Re}z}`
    is applied.
    """
    _check_order(order, integer=False)
    z = _complex_arg(z)
    if derivative:
        v = 0.5 * (special.ive(order - 1, z) + special.ive(order + 1, z))
    else:
        v = special.ive(order, z)
    if not scaled:
        v = v * np.exp(z.real)
    return _ret(v)


def mod_bessel_k(order, z, derivative=False, scaled=False):
    r"""Modified Bessel function :math:`K_\nu(z)` for ``Re z > 0``.

    With ``scaled`` the factor :math:`e^{z}` is applied.
    """
    _check_order(order, integer=False)
    z = _complex_arg(z)
    if derivative:
        v = -0.5 * (special.kve(order - 1, z) + special.kve(order + 1, z))
    else:
        v = special.kve(order, z)
    if not scaled:
        v = v * np.exp(-z)
    return _ret(v)


def sph_bessel_i(order, z, derivative=False, scaled=False):
    """Modified spherical Bessel :math:`i_n(z)`, normalised so ``i_0 = sinh z / z``."""
    _check_order(order)
    z = _complex_arg(z)
    nu = order + 0.5
    pre = np.sqrt(np.pi / (2 * z))
    v = special.ive(nu, z)
    if derivative:
        dv = 0.5 * (special.ive(nu - 1, z) + special.ive(nu + 1, z))
        v = pre * (dv - v / (2 * z))
    else:
        v = pre * v
    if not scaled:
        v = v * np.exp(z.real)
    return _ret(v)


def sph_bessel_k(order, z, derivative=False, scaled=False):
    """Modified spherical Bessel :math:`k_n(z)`, normalised so ``k_0 = exp(-z) / z``."""
    _check_order(order)
    z = _complex_arg(z)
    nu = order + 0.5
    pre = np.sqrt(2 / (np.pi * z))
    v = special.kve(nu, z)
    if derivative:
        dv = -0.5 * (special.kve(nu - 1, z) + special.kve(nu + 1, z))
        v = pre * (dv - v / (2 * z))
    else:
        v = pre * v
    if not scaled:
        v = v * np.exp(-z)
    return _ret(v)
