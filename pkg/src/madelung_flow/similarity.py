"""Self-similar Ansatz bookkeeping and the closed-form linear density shape.

The density is rho(x, y, t) = t**-alpha * f(eta) with eta = (x + y) / t**beta.
For the linear case the shape obeys

    2 f f'' - f'**2 + k * m**2 eta**2 f**2 / (2 hbar**2) = 0,

(``k`` is ``PhysParams.dim_factor``).  Writing f = w**2 turns this into
w'' = -k m**2 eta**2 w / (8 hbar**2), solved by sqrt(eta) times order-1/4
Bessel functions of z = sqrt(2k) m eta**2 / (8 hbar):

    f(eta) = (pi eta / 64) * (c1 J_{1/4}(z) - c2 Y_{1/4}(z))**2.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import DomainError

NU = 0.25

# Below this Bessel argument the relative O(z**2) corrections to w are under
# double rounding; used instead of the 0 * inf product at eta = 0.
_SMALL_Z = 1e-8


@dataclass(frozen=True)
class PhysParams:
    """Physical constants of the GP equation.

    ``n`` is the coupling 4 pi hbar**2 a / m, stored directly.  ``dim_factor``
    multiplies the eta**2 term of the density ODE; 1.0 reproduces the printed
    two-dimensional equation.  ``dim`` is recorded but does not by itself change
    any coefficient.
    """

    hbar: float = 1.0
    m: float = 1.0
    n: float = 0.0
    mu: float = 0.0
    dim: int = 2
    dim_factor: float = 1.0

    def __post_init__(self):
        if not (self.hbar > 0 and math.isfinite(self.hbar)):
            raise DomainError(f"hbar must be positive, got {self.hbar}")
        if not (self.m > 0 and math.isfinite(self.m)):
            raise DomainError(f"m must be positive, got {self.m}")
        if not (self.n >= 0 and math.isfinite(self.n)):
            raise DomainError(f"coupling n must be >= 0, got {self.n}")
        if not math.isfinite(self.mu):
            raise DomainError(f"mu must be finite, got {self.mu}")
        if self.dim not in (1, 2, 3):
            raise DomainError(f"dim must be 1, 2 or 3, got {self.dim}")
        if not (self.dim_factor > 0 and math.isfinite(self.dim_factor)):
            raise DomainError(f"dim_factor must be positive, got {self.dim_factor}")

    @property
    def scattering_length(self) -> float:
        return self.n * self.m / (4 * math.pi * self.hbar**2)

    def with_n(self, n: float) -> "PhysParams":
        return PhysParams(self.hbar, self.m, n, self.mu, self.dim, self.dim_factor)


@dataclass(frozen=True)
class SimilarityExponents:
    alpha: float
    beta: float
    delta: float
    epsilon: float
    exploding: bool = False

    def __post_init__(self):
        if self.beta != self.alpha / 2:
            raise DomainError("beta must equal alpha/2")
        if not (self.delta == self.epsilon == 3 * self.alpha / 2 - 1):
            raise DomainError("delta = epsilon = 3 alpha/2 - 1 required")


def exponents_from_alpha(alpha: float) -> SimilarityExponents:
    """Exponents (alpha, alpha/2, 3alpha/2 - 1, 3alpha/2 - 1).

    Any negative exponent marks an exploding (non-dispersive) solution; a
    ``RuntimeWarning`` is emitted and ``exploding`` is set.
    """
    alpha = float(alpha)
    beta = alpha / 2
    delta = 3 * alpha / 2 - 1
    exploding = min(alpha, beta, delta) < 0
    if exploding:
        warnings.warn(f"alpha = {alpha} gives negative similarity exponents (exploding solution)",
                      RuntimeWarning, stacklevel=2)
    return SimilarityExponents(alpha, beta, delta, delta, exploding)


def eta(x, y, t, beta: float):
    """Similarity variable (x + y) / t**beta; ``t`` must be positive."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr <= 0):
        raise DomainError("similarity variable needs t > 0")
    return (np.asarray(x) + np.asarray(y)) / t_arr**beta


@dataclass(frozen=True)
class LinearShapeConstants:
    c1: float
    c2: float

    def __post_init__(self):
        if self.c1 == 0 and self.c2 == 0:
            raise DomainError("integration constants c1, c2 must not both vanish")

    def scaled(self, lam: float) -> "LinearShapeConstants":
        return LinearShapeConstants(lam * self.c1, lam * self.c2)


def bessel_scale(p: PhysParams) -> float:
    """kappa in z = kappa * eta**2, kappa = sqrt(2 k) m / (8 hbar)."""
    return math.sqrt(2 * p.dim_factor) * p.m / (8 * p.hbar)


def _origin_coeffs(p: PhysParams) -> tuple[float, float]:
    """Leading coefficients of sqrt(pi eta/64) J_{+-1/4}(kappa eta**2) at eta = 0.

    sqrt(pi eta/64) J_{-1/4} -> a0, sqrt(pi eta/64) J_{1/4} -> a1 * eta.
    """
    half_k = bessel_scale(p) / 2
    root = math.sqrt(math.pi) / 8
    a0 = root * half_k**-NU / specfun.gamma(1 - NU)
    a1 = root * half_k**NU / specfun.gamma(1 + NU)
    return a0, a1


def _combination(c: LinearShapeConstants) -> tuple[float, float]:
    # c1 J - c2 Y = (c1 - c2 cos(nu pi)/sin(nu pi)) J_nu + c2/sin(nu pi) J_-nu
    s, co = math.sin(NU * math.pi), math.cos(NU * math.pi)
    return c.c1 - c.c2 * co / s, c.c2 / s


def linear_w(eta_v, c: LinearShapeConstants, p: PhysParams):
    """Signed amplitude w with f = w**2, and its derivative w', for eta >= 0.

    w = sqrt(pi eta / 64) * (c1 J_{1/4}(z) - c2 Y_{1/4}(z)).
    """
    e = np.atleast_1d(np.asarray(eta_v, dtype=float))
    if np.any(e < 0):
        raise DomainError("linear density shape is defined for eta >= 0")
    kappa = bessel_scale(p)
    a0, a1 = _origin_coeffs(p)
    A, B = _combination(c)
    w = np.empty_like(e)
    wp = np.empty_like(e)
    small = kappa * e**2 < _SMALL_Z
    es = e[small]
    w[small] = B * a0 + A * a1 * es
    wp[small] = np.full(es.shape, A * a1)
    big = ~small
    if np.any(big):
        eb = e[big]
        z = kappa * eb**2
        comb = c.c1 * specfun.jv(NU, z) - c.c2 * specfun.yv(NU, z)
        dcomb = c.c1 * specfun.bessel_deriv(NU, z, "J") - c.c2 * specfun.bessel_deriv(NU, z, "Y")
        pref = np.sqrt(math.pi * eb / 64)
        w[big] = pref * comb
        # d/deta [sqrt(pi eta/64) C(kappa eta^2)]
        wp[big] = pref * (comb / (2 * eb) + 2 * kappa * eb * dcomb)
    if np.ndim(eta_v) == 0:
        return float(w[0]), float(wp[0])
    return w.reshape(np.shape(eta_v)), wp.reshape(np.shape(eta_v))


def linear_density_shape(eta_v, c: LinearShapeConstants, p: PhysParams):
    """f(eta) = (pi eta/64) (c1 J_{1/4}(z) - c2 Y_{1/4}(z))**2, z = sqrt(2k) m eta**2/(8 hbar).

    The eta -> 0 limit is finite (the Y divergence is cancelled by the eta
    prefactor) and is taken from the small-eta expansion.
    """
    w, _ = linear_w(eta_v, c, p)
    return w * w


def linear_density_profile(eta_v, c: LinearShapeConstants, p: PhysParams):
    """(f, f') of the linear shape."""
    w, wp = linear_w(eta_v, c, p)
    return w * w, 2 * w * wp


def fit_constants(f0: float, fp0: float, p: PhysParams) -> LinearShapeConstants:
    """Constants (c1, c2) with f(0) = f0 and f'(0) = fp0.

    Uses w(0) = sqrt(f0), w'(0) = fp0 / (2 sqrt(f0)) and the exact leading
    behaviour of sqrt(eta) J_{+-1/4}(kappa eta**2) at the origin.
    """
    if not f0 > 0:
        raise DomainError(f"f0 must be positive (density), got {f0}")
    w0 = math.sqrt(f0)
    wp0 = fp0 / (2 * w0)
    a0, a1 = _origin_coeffs(p)
    B = w0 / a0
    A = wp0 / a1
    s, co = math.sin(NU * math.pi), math.cos(NU * math.pi)
    c2 = B * s
    c1 = A + c2 * co / s
    return LinearShapeConstants(c1, c2)
