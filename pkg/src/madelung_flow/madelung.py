"""Shape-function ODEs of the Madelung/GP system, their solvers and diagnostics.

Conventions: ``eta`` is the similarity variable, ``f`` the density shape,
``g``/``h`` the velocity shapes, ``Q = -f'^2/(4 f^2) + f''/(2 f)`` the
quantum-potential shape (sqrt(f)''/sqrt(f)).  The zero-discriminant density
equation is used exactly as printed,

    2 f f'' - f'^2 + f^2 (k eta^2 m^2 / (2 hbar^2) - 8 n m f / hbar) = 0,

and is integrated by default in the w-form (f = w^2), which is regular at the
zeros of f.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Optional, Sequence

import numpy as np

from . import odecore
from .errors import DomainError, NumericalError, RangeError, SingularityError
from .quadrature import adaptive_simpson
from .similarity import PhysParams

Form = Literal["w_form", "f_form", "coupled"]


class ComplexBranchError(DomainError):
    """Negative discriminant in the quadratic velocity formula."""

    def __init__(self, value: float):
        super().__init__(f"discriminant is negative ({value!r}); velocity would be complex")
        self.discriminant = value


@dataclass(frozen=True)
class ShapeState:
    f: float
    fp: float
    fpp: float
    g: float
    h: float

    def __post_init__(self):
        for v in (self.f, self.fp, self.fpp, self.g, self.h):
            if not np.all(np.isfinite(np.asarray(v, dtype=float))):
                raise DomainError("shape state must be finite")
        if np.any(np.asarray(self.f) < 0):
            raise DomainError("density shape f must be non-negative")


def quantum_shape(f, fp, fpp):
    """Q = -f'^2/(4 f^2) + f''/(2 f)."""
    return -fp * fp / (4 * f * f) + fpp / (2 * f)


# ------------------------------------------------------------------ RHS


def rhs_density_f(eta_v: float, f: float, fp: float, p: PhysParams) -> float:
    """f'' of the zero-discriminant density equation; f must be positive."""
    if not f > 0:
        raise SingularityError(f"f = {f!r} <= 0 in the f-form density equation")
    bracket = p.dim_factor * eta_v * eta_v * p.m * p.m / (2 * p.hbar * p.hbar) - 8 * p.n * p.m * f / p.hbar
    return (fp * fp - f * f * bracket) / (2 * f)


def rhs_linear_density(eta_v: float, f: float, fp: float, p: PhysParams) -> float:
    """f'' of the linear density equation 2 f f'' - f'^2 + k m^2 eta^2 f^2/(2 hbar^2) = 0."""
    if not f > 0:
        raise SingularityError(f"f = {f!r} <= 0 in the f-form density equation")
    return (fp * fp - f * f * (p.dim_factor * eta_v * eta_v * p.m * p.m / (2 * p.hbar * p.hbar))) / (2 * f)


def rhs_density_w(eta_v: float, w: float, wp: float, p: PhysParams) -> float:
    """w'' for f = w^2: -k eta^2 m^2 w / (8 hbar^2) + 2 n m w^3 / hbar."""
    return -w * p.dim_factor * eta_v * eta_v * p.m * p.m / (8 * p.hbar * p.hbar) + 2 * p.n * p.m * w**3 / p.hbar


def rhs_coupled(eta_v: float, state: Sequence[float], alpha: float, p: PhysParams):
    """(f', f'', f''', g') of the shape system with the symmetric reduction h = g.

    g' comes from the continuity equation, f''' from the momentum equation.
    """
    f, fp, fpp, g = state
    if not f > 0:
        raise SingularityError(f"f = {f!r} <= 0 in the coupled system")
    gp = (alpha * f + 0.5 * alpha * fp * eta_v - 2 * fp * g) / (2 * f)
    lhs = -(1.5 * alpha - 1) * g - 0.5 * alpha * gp * eta_v + 2 * g * gp
    qcoef = p.hbar * p.hbar / (2 * p.m * p.m)
    # lhs = qcoef * (f'^3/(2f^3) - f'f''/f^2 + f'''/(2f)) - (n/m) f'
    inner = (lhs + p.n / p.m * fp) / qcoef
    fppp = 2 * f * (inner - fp**3 / (2 * f**3) + fp * fpp / (f * f))
    return (fp, fpp, fppp, gp)


# ------------------------------------------------------------ velocity / F


def discriminant(eta_v, f, fp, fpp, p: PhysParams):
    """Radicand eta^2/4 - 4 n f/m + (hbar^2/2m^2) Q of the quadratic velocity formula."""
    if np.any(np.asarray(f) <= 0):
        raise DomainError("discriminant needs f > 0")
    return eta_v * eta_v / 4 - 4 * p.n * f / p.m + p.hbar**2 / (2 * p.m**2) * quantum_shape(f, fp, fpp)


def g_quadratic(eta_v: float, f: float, fp: float, fpp: float, h: float, p: PhysParams,
                branch: Literal["plus", "minus"] = "plus") -> float:
    """g = eta/2 - h +- sqrt(discriminant)."""
    d = discriminant(eta_v, f, fp, fpp, p)
    if d < 0:
        raise ComplexBranchError(float(d))
    root = math.sqrt(d)
    if branch == "plus":
        return eta_v / 2 - h + root
    if branch == "minus":
        return eta_v / 2 - h - root
    raise ValueError(f"branch must be 'plus' or 'minus', got {branch!r}")


def first_integral(eta_v, state: ShapeState, p: PhysParams,
                   mode: Literal["corrected", "printed"] = "corrected"):
    """First integral of the summed momentum equations at alpha = 1.

    ``corrected``: (g+h)^2/2 - (g+h) eta/2 + 2 n f/m - (hbar^2/m^2) Q, whose
    eta-derivative is exactly the sum of the two momentum equations.
    ``printed``: g^2/2 + g(h - eta/2) + h^2/2 + h eta/2 + 2nf/m - (hbar^2/2m^2) Q.
    printed - corrected = h eta + (hbar^2 / 2m^2) Q.
    """
    f, fp, fpp, g, h = state.f, state.fp, state.fpp, state.g, state.h
    if np.any(np.asarray(f) <= 0):
        raise DomainError("first integral needs f > 0")
    q = quantum_shape(f, fp, fpp)
    nl = 2 * p.n * f / p.m
    if mode == "corrected":
        s = g + h
        return s * s / 2 - s * eta_v / 2 + nl - p.hbar**2 / p.m**2 * q
    if mode == "printed":
        return g * g / 2 + g * (h - eta_v / 2) + h * h / 2 + h * eta_v / 2 + nl - p.hbar**2 / (2 * p.m**2) * q
    raise ValueError(f"mode must be 'corrected' or 'printed', got {mode!r}")


def first_integral_scale(eta_v, state: ShapeState, p: PhysParams):
    """Sum of magnitudes of the terms of the corrected first integral (drift normaliser)."""
    s = state.g + state.h
    q = quantum_shape(state.f, state.fp, state.fpp)
    return (np.abs(s * s / 2) + np.abs(s * eta_v / 2) + np.abs(2 * p.n * state.f / p.m)
            + np.abs(p.hbar**2 / p.m**2 * q))


# -------------------------------------------------------------- residuals


def continuity_residual(eta_v, state: ShapeState, alpha: float, gp, hp):
    """-alpha f - (alpha/2) f' eta + f' g + f g' + f' h + f h'."""
    f, fp, g, h = state.f, state.fp, state.g, state.h
    return -alpha * f - 0.5 * alpha * fp * eta_v + fp * g + f * gp + fp * h + f * hp


def linear_continuity_residual(eta_v, state: ShapeState, gp, hp):
    """Continuity equation of the linear Schrodinger system (all exponents 1/2).

    -f/2 - f' eta/2 + f' g + f g' + f' h + f h'; vanishes identically for
    g + h = eta/2.
    """
    f, fp, g, h = state.f, state.fp, state.g, state.h
    return -0.5 * f - 0.5 * fp * eta_v + fp * g + f * gp + fp * h + f * hp


def momentum_residual(eta_v, state: ShapeState, fppp, alpha: float, p: PhysParams, gp, hp,
                      axis: Literal["x", "y"] = "x"):
    """Left minus right side of the x (g) or y (h) momentum equation."""
    f, fp, fpp, g, h = state.f, state.fp, state.fpp, state.g, state.h
    if axis == "x":
        v, vp = g, gp
    elif axis == "y":
        v, vp = h, hp
    else:
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    lhs = -(1.5 * alpha - 1) * v - 0.5 * alpha * vp * eta_v + g * vp + h * vp
    rhs = p.hbar**2 / (2 * p.m**2) * (fp**3 / (2 * f**3) - fp * fpp / f**2 + fppp / (2 * f)) - p.n / p.m * fp
    return lhs - rhs


# ------------------------------------------------------------ ShapeTable


@dataclass(frozen=True)
class ShapeTable:
    """Immutable dense-output record of a shape-function integration.

    ``trajectory`` covers eta >= its start.  ``mirror`` (optional) is the
    solution continued to negative eta, stored as a trajectory in -eta.
    State layouts: w_form (w, w'), f_form (f, f'), coupled (f, f', f'', g)
    with h = g.
    """

    trajectory: odecore.Trajectory
    form: Form
    params: PhysParams
    alpha: float = 1.0
    mirror: Optional[odecore.Trajectory] = None
    meta: dict = field(default_factory=dict)

    @property
    def eta_range(self) -> tuple[float, float]:
        lo = -self.mirror.end if self.mirror is not None else self.trajectory.start
        return lo, self.trajectory.end

    @property
    def nodes(self) -> np.ndarray:
        right = self.trajectory.nodes
        if self.mirror is None:
            return right
        return np.unique(np.concatenate([-self.mirror.nodes, right]))

    def _states(self, eta_v) -> tuple[np.ndarray, np.ndarray]:
        """Raw states at eta plus the orientation sign (+1 right, -1 mirrored)."""
        e = np.asarray(eta_v, dtype=float).ravel()
        lo, hi = self.eta_range
        if e.size and (e.min() < lo or e.max() > hi):
            raise RangeError(f"eta in [{e.min()}, {e.max()}] requested; table spans [{lo}, {hi}]")
        out = np.empty((e.size, self.trajectory.dimension))
        sign = np.ones(e.size)
        right = e >= self.trajectory.start
        if np.any(right):
            out[right] = self.trajectory(e[right])
        if np.any(~right):
            out[~right] = self.mirror(-e[~right])
            sign[~right] = -1.0
        return out, sign

    def _shape(self, eta_v, arr):
        return float(arr[0]) if np.ndim(eta_v) == 0 else arr.reshape(np.shape(eta_v))

    def profile(self, eta_v):
        """(f, f') at eta."""
        st, sign = self._states(eta_v)
        if self.form == "w_form":
            f = st[:, 0] ** 2
            fp = 2 * st[:, 0] * st[:, 1] * sign
        else:
            f = st[:, 0]
            fp = st[:, 1] * sign
        return self._shape(eta_v, f), self._shape(eta_v, fp)

    def f(self, eta_v):
        return self.profile(eta_v)[0]

    def fp(self, eta_v):
        return self.profile(eta_v)[1]

    def w(self, eta_v):
        """Amplitude with f = w^2: signed for w_form, sqrt(f) otherwise."""
        st, _ = self._states(eta_v)
        if self.form == "w_form":
            w = st[:, 0]
        else:
            w = np.sqrt(np.maximum(st[:, 0], 0.0))
        return self._shape(eta_v, w)

    def wp(self, eta_v):
        st, sign = self._states(eta_v)
        if self.form == "w_form":
            wp = st[:, 1] * sign
        else:
            wp = st[:, 1] * sign / (2 * np.sqrt(st[:, 0]))
        return self._shape(eta_v, wp)

    def zeros(self, tol: float = 1e-12) -> odecore.ZeroSet:
        """Zeros of w (w_form) on the right-hand trajectory."""
        if self.form != "w_form":
            raise ValueError("zero location needs a w_form table (f only touches zero)")
        return odecore.find_zeros(self.trajectory, 0, tol)


def _density_problem(p: PhysParams, form: Form) -> odecore.OdeProblem:
    if form == "w_form":
        return odecore.OdeProblem(2, lambda e, y: (y[1], rhs_density_w(e, y[0], y[1], p)))
    if form == "f_form":
        return odecore.OdeProblem(2, lambda e, y: (y[1], rhs_density_f(e, y[0], y[1], p)))
    raise ValueError(f"density form must be 'w_form' or 'f_form', got {form!r}")


def _check_run(traj: odecore.Trajectory, span) -> None:
    if traj.termination_reason == "step_underflow":
        raise NumericalError(traj.message)


def solve_density(
    n: float,
    f0: float = 1.0,
    fp0: float = 0.0,
    span=(0.0, 12.0),
    tol: float = 1e-10,
    form: Form = "w_form",
    *,
    params: Optional[PhysParams] = None,
    two_sided: bool = False,
) -> ShapeTable:
    """Integrate the zero-discriminant density equation from f(eta0) = f0, f'(eta0) = fp0.

    w_form starts from (sqrt(f0), fp0 / (2 sqrt(f0))).  ``two_sided`` (only
    with span start 0) also integrates towards negative eta; the equation is
    even in eta, so this is the same problem started with the slope negated.
    f_form runs stop (termination ``singularity``) where f reaches zero.
    """
    if not f0 > 0:
        raise DomainError(f"f0 must be positive, got {f0}")
    p = (params or PhysParams()).with_n(n)
    a, b = float(span[0]), float(span[1])
    if a < 0:
        raise DomainError("eta span must start at eta >= 0")
    if form == "w_form":
        w0 = math.sqrt(f0)
        y0 = (w0, fp0 / (2 * w0))
    else:
        y0 = (f0, fp0)
    problem = _density_problem(p, form)
    traj = odecore.integrate_adaptive(problem, y0, (a, b), tol, tol * 1e-2)
    _check_run(traj, span)
    mirror = None
    if two_sided:
        if a != 0:
            raise DomainError("two_sided integration needs a span starting at eta = 0")
        if fp0 == 0:
            mirror = traj
        else:
            mirror = odecore.integrate_adaptive(problem, (y0[0], -y0[1]), (a, b), tol, tol * 1e-2)
            _check_run(mirror, span)
    meta = {"n": n, "f0": f0, "fp0": fp0, "span": (a, b), "tol": tol}
    return ShapeTable(traj, form, p, 1.0, mirror, meta)


def solve_coupled(
    alpha: float,
    eta0: float,
    state0: Sequence[float],
    eta1: float,
    params: Optional[PhysParams] = None,
    tol: float = 1e-11,
) -> ShapeTable:
    """Integrate the coupled (f, f', f'', g) system with h = g from ``state0`` at ``eta0``."""
    p = params or PhysParams()
    problem = odecore.OdeProblem(4, lambda e, y: rhs_coupled(e, y, alpha, p))
    traj = odecore.integrate_adaptive(problem, state0, (eta0, eta1), tol, tol * 1e-2)
    _check_run(traj, (eta0, eta1))
    return ShapeTable(traj, "coupled", p, alpha, None, {"eta0": eta0, "state0": tuple(state0)})


def coupled_states(table: ShapeTable, eta_v) -> ShapeState:
    """ShapeState arrays (f, f', f'', g, h = g) sampled from a coupled table."""
    if table.form != "coupled":
        raise ValueError("coupled_states needs a coupled table")
    st = table.trajectory(np.asarray(eta_v, dtype=float))
    st = np.atleast_2d(st)
    return ShapeState(st[:, 0], st[:, 1], st[:, 2], st[:, 3], st[:, 3])


# ------------------------------------------------------------ diagnostics


def mass_integral(table: ShapeTable, eta_max: float, tol: float = 1e-9) -> float:
    """Integral of f over [table start, eta_max] by adaptive Simpson on the dense output."""
    lo = table.trajectory.start
    hi = table.trajectory.end
    if eta_max > hi or eta_max < lo:
        raise RangeError(f"eta_max = {eta_max} outside table range [{lo}, {hi}]")
    res = adaptive_simpson(table.f, lo, eta_max, tol, breakpoints=table.trajectory.nodes)
    return res.value


@dataclass(frozen=True)
class MassConvergence:
    eta_max: tuple
    integrals: tuple
    differences: tuple  # I_k - I_{k-1}

    @property
    def differences_shrink(self) -> bool:
        d = [abs(x) for x in self.differences]
        return all(b < a for a, b in zip(d, d[1:]))


def mass_convergence(table: ShapeTable, eta_maxes: Sequence[float], tol: float = 1e-9) -> MassConvergence:
    eta_maxes = tuple(float(e) for e in eta_maxes)
    vals = tuple(mass_integral(table, e, tol) for e in eta_maxes)
    diffs = tuple(b - a for a, b in zip(vals, vals[1:]))
    return MassConvergence(eta_maxes, vals, diffs)


def max_deviation(table: ShapeTable, reference: ShapeTable, eta_max: float, samples: int = 12001) -> float:
    """max |f - f_ref| on a uniform grid of [0, eta_max]."""
    e = np.linspace(0.0, eta_max, samples)
    return float(np.max(np.abs(table.f(e) - reference.f(e))))


def form_equivalence(n: float, span=(0.0, 8.0), f_floor: float = 1e-3, tol: float = 1e-11,
                     params: Optional[PhysParams] = None, samples: int = 4001):
    """Compare the w_form run with f_form runs restarted on every interval where f >= f_floor.

    Returns (max relative deviation |f_f - w^2| / w^2, number of intervals).
    """
    wt = solve_density(n, 1.0, 0.0, span, tol, "w_form", params=params)
    p = wt.params
    e = np.linspace(span[0], span[1], samples)
    fw = wt.f(e)
    above = fw >= f_floor
    edges = np.flatnonzero(np.diff(above.astype(int)))
    starts = [0] if above[0] else []
    ends = []
    for i in edges:
        if above[i + 1]:
            starts.append(i + 1)
        else:
            ends.append(i)
    if above[-1]:
        ends.append(samples - 1)
    worst = 0.0
    problem = _density_problem(p, "f_form")
    for i0, i1 in zip(starts, ends):
        if i1 <= i0:
            continue
        a, b = e[i0], e[i1]
        f0, fp0 = wt.profile(a)
        traj = odecore.integrate_adaptive(problem, (f0, fp0), (a, b), tol, tol * 1e-2)
        seg = e[i0 : i1 + 1]
        seg = seg[seg <= traj.end]
        ff = traj(seg, 0)
        worst = max(worst, float(np.max(np.abs(ff - fw[i0 : i0 + seg.size]) / fw[i0 : i0 + seg.size])))
        if traj.end < b:
            raise NumericalError(f"f_form run stopped early at eta = {traj.end} ({traj.termination_reason})")
    return worst, len(starts)
