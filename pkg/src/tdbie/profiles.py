"""Causal scalar time profiles with closed-form derivatives.

A profile vanishes for ``t <= onset``. Two internal representations cover
every supported kind:

* :class:`PolyExpProfile` -- ``p(t - t0) * exp(-beta (t - t0))``,
* :class:`TrigProfile` -- a trigonometric polynomial in ``t - t0``,
  optionally cut off after a window length (sine-power and raised-cosine
  windows expand exactly into this form).

``smoothness`` is the number of derivatives that are continuous on the whole
real line once the profile is extended by zero; -1 means the profile itself
jumps at onset. A derivative of order ``k`` is available when
``k <= smoothness + 1``: the last one may jump (it is then only locally
integrable) but never produces a Dirac mass.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import SmoothnessError

__all__ = [
    "TimeProfile",
    "PolyExpProfile",
    "TrigProfile",
    "ZeroProfile",
    "poly_exp",
    "sine_power",
    "raised_cosine",
    "zero",
]


class TimeProfile:
    """Common interface; concrete profiles are frozen dataclasses."""

    kind = "abstract"
    onset = 0.0
    smoothness = math.inf

    @property
    def end(self):
        """Time after which the profile vanishes identically (``inf`` if never)."""
        return math.inf

    def __call__(self, t):
        raise NotImplementedError

    def derivative(self, order=1):
        if order < 0:
            raise ValueError("derivative order must be >= 0")
        if order == 0:
            return self
        if order > self.smoothness + 1:
            raise SmoothnessError(
                f"{self.kind} profile is C^{self.smoothness}; "
                f"derivative of order {order} would not be locally integrable"
            )
        return self._derivative(order)

    def _derivative(self, order):
        raise NotImplementedError

    def scaled(self, alpha):
        raise NotImplementedError

    def timescale(self):
        """Characteristic length used to size quadrature panels."""
        return 1.0

    def breakpoints(self):
        """Times where the profile may fail to be smooth."""
        pts = [self.onset]
        if math.isfinite(self.end):
            pts.append(self.end)
        return pts

    def is_zero(self):
        return False


def _mask(t, onset, end):
    tau = np.asarray(t, dtype=float) - onset
    return tau, (tau > 0) & (tau < end - onset)


@dataclass(frozen=True)
class ZeroProfile(TimeProfile):
    onset: float = 0.0
    kind = "zero"
    smoothness = math.inf

    @property
    def params(self):
        return ()

    def __call__(self, t):
        return np.zeros_like(np.asarray(t, dtype=float))

    def _derivative(self, order):
        return self

    def scaled(self, alpha):
        return self

    def is_zero(self):
        return True


@dataclass(frozen=True)
class PolyExpProfile(TimeProfile):
    """``sum_k coeffs[k] * tau**k * exp(-rate * tau)`` with ``tau = t - onset > 0``."""

    coeffs: tuple
    rate: float = 0.0
    onset: float = 0.0
    kind = "polynomial-times-exponential"

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("empty coefficient list; use zero() instead")

    @property
    def params(self):
        return self.coeffs + (self.rate,)

    @property
    def smoothness(self):
        for k, c in enumerate(self.coeffs):
            if c != 0.0:
                return k - 1
        return math.inf

    def __call__(self, t):
        tau, on = _mask(t, self.onset, math.inf)
        taup = np.where(on, tau, 0.0)
        val = np.polynomial.polynomial.polyval(taup, self.coeffs) * np.exp(-self.rate * taup)
        return np.where(on, val, 0.0)

    def _derivative(self, order):
        c = np.array(self.coeffs)
        for _ in range(order):
            dc = np.zeros(len(c))
            dc[: len(c) - 1] = np.arange(1, len(c)) * c[1:]
            c = dc - self.rate * c
        return PolyExpProfile(tuple(c), self.rate, self.onset)

    def scaled(self, alpha):
        return PolyExpProfile(tuple(alpha * c for c in self.coeffs), self.rate, self.onset)

    def timescale(self):
        deg = max(len(self.coeffs) - 1, 1)
        return 1.0 / max(self.rate, 1.0 / deg, 1e-3) if self.rate > 0 else 1.0

    def is_zero(self):
        return all(c == 0.0 for c in self.coeffs)


@dataclass(frozen=True)
class TrigProfile(TimeProfile):
    """``sum_k cos_coeffs[k] cos(k w tau) + sin_coeffs[k] sin(k w tau)`` on ``0 < tau < length``."""

    cos_coeffs: tuple
    sin_coeffs: tuple
    omega: float
    onset: float = 0.0
    length: float = math.inf
    declared_smoothness: float = -1
    kind: str = field(default="trigonometric", compare=False)

    def __post_init__(self):
        a = tuple(float(x) for x in self.cos_coeffs)
        b = tuple(float(x) for x in self.sin_coeffs)
        n = max(len(a), len(b))
        object.__setattr__(self, "cos_coeffs", a + (0.0,) * (n - len(a)))
        object.__setattr__(self, "sin_coeffs", b + (0.0,) * (n - len(b)))

    @property
    def params(self):
        return (self.omega, self.length) + self.cos_coeffs + self.sin_coeffs

    @property
    def smoothness(self):
        return self.declared_smoothness

    @property
    def end(self):
        return self.onset + self.length

    def __call__(self, t):
        tau, on = _mask(t, self.onset, self.end)
        k = np.arange(len(self.cos_coeffs))
        ph = np.multiply.outer(np.where(on, tau, 0.0), k * self.omega)
        val = np.cos(ph) @ np.array(self.cos_coeffs) + np.sin(ph) @ np.array(self.sin_coeffs)
        return np.where(on, val, 0.0)

    def _derivative(self, order):
        a = np.array(self.cos_coeffs)
        b = np.array(self.sin_coeffs)
        kw = np.arange(len(a)) * self.omega
        for _ in range(order):
            a, b = kw * b, -kw * a
        return TrigProfile(tuple(a), tuple(b), self.omega, self.onset, self.length,
                           self.declared_smoothness - order, "trigonometric")

    def scaled(self, alpha):
        return TrigProfile(tuple(alpha * x for x in self.cos_coeffs),
                           tuple(alpha * x for x in self.sin_coeffs),
                           self.omega, self.onset, self.length, self.declared_smoothness, self.kind)

    def timescale(self):
        kmax = max(len(self.cos_coeffs) - 1, 1)
        return np.pi / (kmax * self.omega)

    def is_zero(self):
        return not any(self.cos_coeffs) and not any(self.sin_coeffs)


def _sine_power_coeffs(p):
    # sin^p x = (2i)^-p sum_j C(p,j) (-1)^j exp(i(p-2j)x)
    c = {}
    for j in range(p + 1):
        m = p - 2 * j
        c[m] = c.get(m, 0) + math.comb(p, j) * (-1) ** j / (2j) ** p
    a = np.zeros(p + 1)
    b = np.zeros(p + 1)
    a[0] = c.get(0, 0).real
    for k in range(1, p + 1):
        cp, cm = c.get(k, 0), c.get(-k, 0)
        a[k] = (cp + cm).real
        b[k] = (1j * (cp - cm)).real
    return a, b


def poly_exp(coeffs, rate=0.0, onset=0.0):
    """``p(t - onset) exp(-rate (t - onset))`` for ``t > onset``."""
    prof = PolyExpProfile(tuple(coeffs), float(rate), float(onset))
    return ZeroProfile(float(onset)) if prof.is_zero() else prof


def sine_power(power, omega=1.0, onset=0.0, lobes=None):
    """``sin(omega (t - onset))**power`` after onset.

    With ``lobes`` the profile is cut off after that many half periods, which
    keeps it ``C^(power-1)`` at both ends.
    """
    if int(power) != power or power < 1:
        raise ValueError("power must be a positive integer")
    a, b = _sine_power_coeffs(int(power))
    length = math.inf if lobes is None else lobes * np.pi / omega
    return TrigProfile(tuple(a), tuple(b), float(omega), float(onset), length,
                       int(power) - 1, "sine-power window")


def raised_cosine(width, onset=0.0, power=1):
    """``((1 - cos(2 pi (t - onset) / width)) / 2)**power`` on one window."""
    prof = sine_power(2 * power, np.pi / width, onset, lobes=1)
    return TrigProfile(prof.cos_coeffs, prof.sin_coeffs, prof.omega, prof.onset, prof.length,
                       prof.declared_smoothness, "raised-cosine window")


def zero(onset=0.0):
    return ZeroProfile(float(onset))
