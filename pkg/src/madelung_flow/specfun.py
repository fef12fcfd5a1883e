"""Gamma and real-order Bessel functions J_nu, Y_nu.

Everything is evaluated in ``numpy.longdouble`` (x87 80-bit extended on x86
builds) and rounded to double on return.  J_nu uses the ascending series for
``z < CROSSOVER`` and the Hankel asymptotic expansion above it; Y_nu is built
from J_nu and J_{-nu} through the connection formula, so only non-integer
orders are supported for Y.

The array kernels :func:`jv` and :func:`yv` return plain values; the scalar
entry points :func:`bessel_j` and :func:`bessel_y` return a
:class:`SpecFunResult` carrying an error estimate and the method used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DomainError, RangeError

LD = np.longdouble
PI = np.arccos(LD(-1))
EPS_LD = float(np.finfo(LD).eps)

#: series / asymptotic switch point in z
CROSSOVER = 12.0

#: supported |order| of the public J/Y entry points
MAX_ORDER = 5.0

SERIES_CUTOFF = 1e-17

# Lanczos approximation, g = 7, n = 9.  Coefficients from P. Godfrey's
# tabulation (the set used by Numerical Recipes 3rd ed. and most libm-free
# ports); relative accuracy ~2e-15 for Re(x) >= 0.5.
_LANCZOS_G = LD(7)
_LANCZOS = tuple(
    LD(c)
    for c in (
        "0.99999999999980993",
        "676.5203681218851",
        "-1259.1392167224028",
        "771.32342877765313",
        "-176.61502916214059",
        "12.507343278686905",
        "-0.13857109526572012",
        "9.9843695780195716e-6",
        "1.5056327351493116e-7",
    )
)
_SQRT_2PI = np.sqrt(2 * PI)

Method = Literal["series", "asymptotic", "reflection", "wronskian"]


@dataclass(frozen=True)
class SpecFunResult:
    value: float
    est_abs_error: float
    method_used: Method

    def __float__(self) -> float:
        return self.value


# --------------------------------------------------------------------- gamma


def _sin_pi(x: LD) -> LD:
    # exact argument reduction: x - round(x) is exact in binary floating point
    k = np.rint(x)
    r = x - k
    s = np.sin(PI * r)
    return -s if int(k) % 2 else s


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


def _gamma_ld(x: LD) -> LD:
    if 1 <= x <= 30 and float(x).is_integer():
        return LD(math.factorial(int(x) - 1))  # exact, so J_n(0) = 1 exactly
    if x < LD(0.5):
        return PI / (_sin_pi(x) * _gamma_ld(LD(1) - x))
    x = x - LD(1)
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (x + LD(i))
    t = x + _LANCZOS_G + LD(0.5)
    return _SQRT_2PI * np.power(t, x + LD(0.5)) * np.exp(-t) * acc


def _rgamma_ld(x: LD) -> LD:
    """1/Gamma(x), zero at the poles."""
    if _is_nonpositive_integer(float(x)):
        return LD(0)
    return LD(1) / _gamma_ld(x)


def gamma(x: float) -> float:
    """Gamma function for real ``x`` (reflection formula below 0.5).

    Raises
    ------
    DomainError
        At the poles x = 0, -1, -2, ...
    """
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"gamma: non-finite argument {x!r}")
    if _is_nonpositive_integer(x):
        raise DomainError(f"gamma: pole at x = {int(x)}")
    return float(_gamma_ld(LD(x)))


# ------------------------------------------------------------- J_nu kernels


def _series(nu: float, z: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Ascending series sum_k (-1)^k (z/2)^(2k+nu) / (k! Gamma(k+nu+1)).

    Returns (values, abs error estimate, cutoff-met flags).
    """
    nul = LD(nu)
    h = z / LD(2)
    h2 = h * h
    with np.errstate(divide="ignore", invalid="ignore"):
        lead = np.where(z > 0, np.power(h, nul), LD(1.0 if nu == 0 else 0.0))
    # for negative non-integer nu and z == 0 the caller has already rejected
    t = lead * _rgamma_ld(nul + LD(1))
    s = t.copy()
    absum = np.abs(t)
    done = np.zeros(z.shape, dtype=bool)
    done |= t == 0
    hmax = float(np.max(h)) if z.size else 0.0
    k = 0
    kmax = 60 + int(4 * hmax)
    while not np.all(done) and k < kmax:
        k += 1
        kl = LD(k)
        t = t * (-h2 / (kl * (kl + nul)))
        s = np.where(done, s, s + t)
        absum = np.where(done, absum, absum + np.abs(t))
        newly = (np.abs(t) < SERIES_CUTOFF * np.abs(s)) & (k > h)
        done |= newly | (t == 0)
    err = 4 * EPS_LD * absum.astype(float) + 0.5 * np.spacing(np.abs(s.astype(float)))
    return s, err, done


def _hankel_pq(nu: float, z: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Hankel P, Q sums truncated before the smallest term; returns (P, Q, last|term|)."""
    mu = LD(4) * LD(nu) * LD(nu)
    p = np.ones(z.shape, dtype=LD)
    q = np.zeros(z.shape, dtype=LD)
    term = np.ones(z.shape, dtype=LD)
    active = np.ones(z.shape, dtype=bool)
    last = np.zeros(z.shape, dtype=LD)
    eight_z = LD(8) * z
    for k in range(1, 120):
        kl = LD(k)
        nxt = term * (mu - (2 * kl - 1) ** 2) / (kl * eight_z)
        # terms may grow while (2k-1)^2 < 4 nu^2; only growth past that point
        # signals the divergent tail, and the omitted term bounds the error
        grow = (np.abs(nxt) >= np.abs(term)) & ((2 * kl - 1) ** 2 > mu)
        stop = active & (grow | (nxt == 0))
        last = np.where(stop, np.abs(nxt), last)
        active &= ~stop
        if not np.any(active):
            break
        term = np.where(active, nxt, term)
        if k % 2 == 0:
            sign = LD(-1) if (k // 2) % 2 else LD(1)
            p = np.where(active, p + sign * nxt, p)
        else:
            sign = LD(-1) if ((k - 1) // 2) % 2 else LD(1)
            q = np.where(active, q + sign * nxt, q)
    last = np.where(active, np.abs(term), last)
    return p, q, last


def _asymptotic(nu: float, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    p, q, last = _hankel_pq(nu, z)
    omega = z - LD(nu) * PI / 2 - PI / 4
    amp = np.sqrt(LD(2) / (PI * z))
    val = amp * (p * np.cos(omega) - q * np.sin(omega))
    err = (amp * last).astype(float) + 4 * EPS_LD * (amp * (np.abs(p) + np.abs(q))).astype(float)
    return val, err


def _jv_kernel(nu: float, z: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """J_nu on a longdouble array; returns (values, err, method codes 0=series 1=asym 2=refl)."""
    if nu < 0 and float(nu).is_integer():
        n = int(-nu)
        v, e, m = _jv_kernel(float(n), z)
        sign = -1 if n % 2 else 1
        return sign * v, e, np.full(z.shape, 2)
    val = np.empty(z.shape, dtype=LD)
    err = np.empty(z.shape, dtype=float)
    method = np.empty(z.shape, dtype=int)
    small = z < CROSSOVER
    if np.any(small):
        v, e, ok = _series(nu, z[small])
        if not np.all(ok):
            raise RangeError(f"J_{nu}: ascending series failed to meet cutoff")
        val[small], err[small], method[small] = v, e, 0
    if np.any(~small):
        v, e = _asymptotic(nu, z[~small])
        val[~small], err[~small], method[~small] = v, e, 1
    return val, err, method


_METHODS: tuple[Method, ...] = ("series", "asymptotic", "reflection", "wronskian")


def _check_order(nu: float, limit: float) -> None:
    if not math.isfinite(nu) or abs(nu) > limit:
        raise RangeError(f"order nu = {nu} outside supported range [-{limit}, {limit}]")


def _as_z(z, *, strictly_positive: bool) -> np.ndarray:
    arr = np.asarray(z, dtype=LD)
    if not np.all(np.isfinite(arr)):
        raise RangeError("Bessel argument must be finite")
    if strictly_positive and np.any(arr <= 0):
        raise DomainError("Bessel Y requires z > 0")
    if np.any(arr < 0):
        raise RangeError("Bessel argument must satisfy z >= 0")
    return arr


def _jv_checked(nu: float, z, limit: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    _check_order(nu, limit)
    arr = _as_z(z, strictly_positive=False)
    if nu < 0 and not float(nu).is_integer() and np.any(arr == 0):
        raise DomainError(f"J_{nu}(0) is unbounded for negative non-integer order")
    return _jv_kernel(nu, np.atleast_1d(arr))


def _yv_kernel(nu: float, z: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    if float(nu).is_integer():
        raise RangeError(f"Y_nu for integer order nu = {nu} is not supported")
    jp, ep, mp_ = _jv_kernel(nu, z)
    jm, em, mm = _jv_kernel(-nu, z)
    c = np.cos(LD(nu) * PI)
    s = np.sin(LD(nu) * PI)
    val = (jp * c - jm) / s
    err = (ep * abs(float(c)) + em) / abs(float(s)) + 2 * EPS_LD * np.abs(val.astype(float))
    return val, err, np.maximum(mp_, mm)


def jv(nu: float, z) -> np.ndarray | float:
    """J_nu(z), vectorised over ``z``; ``|nu| <= 5``, ``z >= 0``."""
    scalar = np.ndim(z) == 0
    v, _, _ = _jv_checked(float(nu), z, MAX_ORDER)
    out = v.astype(float)
    return float(out[0]) if scalar else out.reshape(np.shape(z))


def yv(nu: float, z) -> np.ndarray | float:
    """Y_nu(z) for non-integer ``nu`` via the connection formula, vectorised over ``z > 0``."""
    scalar = np.ndim(z) == 0
    nu = float(nu)
    _check_order(nu, MAX_ORDER)
    arr = np.atleast_1d(_as_z(z, strictly_positive=True))
    v, _, _ = _yv_kernel(nu, arr)
    out = v.astype(float)
    return float(out[0]) if scalar else out.reshape(np.shape(z))


def bessel_j(nu: float, z: float) -> SpecFunResult:
    """Bessel function of the first kind for real order ``nu in [-5, 5]`` and ``z >= 0``.

    ``z < CROSSOVER`` uses the ascending series, larger ``z`` the Hankel
    expansion truncated at its smallest term.  Negative integer orders go
    through ``J_{-n} = (-1)^n J_n``.
    """
    v, e, m = _jv_checked(float(nu), z, MAX_ORDER)
    return SpecFunResult(float(v[0]), float(e[0]), _METHODS[int(m[0])])


def bessel_y(nu: float, z: float) -> SpecFunResult:
    """Bessel function of the second kind, Y_nu = (J_nu cos(nu pi) - J_-nu) / sin(nu pi).

    Raises
    ------
    DomainError
        ``z <= 0``.
    RangeError
        Integer ``nu`` or ``|nu| > 5``.
    """
    nu = float(nu)
    _check_order(nu, MAX_ORDER)
    if float(nu).is_integer():
        raise RangeError(f"Y_nu for integer order nu = {nu} is not supported")
    arr = np.atleast_1d(_as_z(z, strictly_positive=True))
    v, e, m = _yv_kernel(nu, arr)
    return SpecFunResult(float(v[0]), float(e[0]), _METHODS[int(m[0])])


def bessel_deriv(nu: float, z, kind: Literal["J", "Y"] = "J"):
    """d/dz C_nu(z) = (C_{nu-1}(z) - C_{nu+1}(z)) / 2 for C = J or Y; ``z > 0``.

    Accepts scalar or array ``z``.
    """
    nu = float(nu)
    _check_order(nu, MAX_ORDER)
    scalar = np.ndim(z) == 0
    arr = np.atleast_1d(_as_z(z, strictly_positive=True))
    if kind == "J":
        lo, _, _ = _jv_kernel(nu - 1, arr)
        hi, _, _ = _jv_kernel(nu + 1, arr)
    elif kind == "Y":
        if float(nu).is_integer():
            raise RangeError(f"Y_nu for integer order nu = {nu} is not supported")
        lo, _, _ = _yv_kernel(nu - 1, arr)
        hi, _, _ = _yv_kernel(nu + 1, arr)
    else:
        raise ValueError(f"kind must be 'J' or 'Y', got {kind!r}")
    out = ((lo - hi) / 2).astype(float)
    return float(out[0]) if scalar else out.reshape(np.shape(z))
