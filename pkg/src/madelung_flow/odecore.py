"""Adaptive Dormand-Prince 5(4) integration with dense output and zero location."""

from __future__ import annotations

from dataclasses import dataclass
from math import isfinite
from typing import Callable, Literal, Optional

import numpy as np

from .errors import RangeError, SingularityError

Rhs = Callable[[float, np.ndarray], np.ndarray]
Termination = Literal["reached_end", "event", "singularity", "step_underflow"]

# Dormand & Prince (1980), "A family of embedded Runge-Kutta formulae",
# J. Comput. Appl. Math. 6, 19-26.  Dense-output weights are Hairer's
# continuous extension from DOPRI5 (Hairer, Norsett & Wanner, Solving ODEs I).
C2, C3, C4, C5 = 1 / 5, 3 / 10, 4 / 5, 8 / 9
A21 = 1 / 5
A31, A32 = 3 / 40, 9 / 40
A41, A42, A43 = 44 / 45, -56 / 15, 32 / 9
A51, A52, A53, A54 = 19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729
A61, A62, A63, A64, A65 = 9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656
A71, A73, A74, A75, A76 = 35 / 384, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84
E1, E3, E4, E5, E6, E7 = 71 / 57600, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40
D1 = -12715105075 / 11282082432
D3 = 87487479700 / 32700410799
D4 = -10690763975 / 1880347072
D5 = 701980252875 / 199316789632
D6 = -1453857185 / 822651844
D7 = 69997945 / 29380423

# Butcher rows as plain tuples; the stepper works on Python floats because the
# systems here have 2-4 components and numpy per-call overhead would dominate.
_C = (0.0, C2, C3, C4, C5, 1.0, 1.0)
_A = (
    (),
    (A21,),
    (A31, A32),
    (A41, A42, A43),
    (A51, A52, A53, A54),
    (A61, A62, A63, A64, A65),
    (A71, 0.0, A73, A74, A75, A76),
)
_E = (E1, 0.0, E3, E4, E5, E6, E7)
_D = (D1, 0.0, D3, D4, D5, D6, D7)

SAFETY = 0.9
FAC_MIN, FAC_MAX = 0.2, 5.0
UNDERFLOW = 1e-14


@dataclass(frozen=True)
class OdeProblem:
    """First-order system y' = rhs(x, y).

    ``rhs`` receives the state as a list of floats and must return
    ``dimension`` finite values (any sequence), or raise
    :class:`SingularityError`.  ``stop_predicate(state)`` returning True ends
    the integration after the accepted step (termination reason ``event``).
    """

    dimension: int
    rhs: Rhs
    stop_predicate: Optional[Callable[[np.ndarray], bool]] = None


@dataclass
class Trajectory:
    nodes: np.ndarray
    states: np.ndarray
    coeffs: np.ndarray  # (steps, 5, dimension)
    termination_reason: Termination
    message: str = ""
    rejected_steps: int = 0

    @property
    def start(self) -> float:
        return float(self.nodes[0])

    @property
    def end(self) -> float:
        return float(self.nodes[-1])

    @property
    def dimension(self) -> int:
        return self.states.shape[1]

    def __call__(self, x, component: Optional[int] = None):
        """Dense-output evaluation at scalar or array ``x`` within [start, end]."""
        xs = np.asarray(x, dtype=float)
        flat = np.atleast_1d(xs).ravel()
        if flat.size and (flat.min() < self.nodes[0] or flat.max() > self.nodes[-1]):
            raise RangeError(
                f"dense output requested on [{flat.min()}, {flat.max()}], "
                f"trajectory covers [{self.start}, {self.end}]"
            )
        if len(self.nodes) == 1:
            out = np.repeat(self.states[:1], flat.size, axis=0)
        else:
            idx = np.searchsorted(self.nodes, flat, side="right") - 1
            idx = np.clip(idx, 0, len(self.nodes) - 2)
            h = self.nodes[idx + 1] - self.nodes[idx]
            th = ((flat - self.nodes[idx]) / h)[:, None]
            r = self.coeffs[idx]
            th1 = 1.0 - th
            out = r[:, 0] + th * (r[:, 1] + th1 * (r[:, 2] + th * (r[:, 3] + th1 * r[:, 4])))
            exact = flat == self.nodes[idx + 1]
            out[exact] = self.states[idx[exact] + 1]
        if component is not None:
            out = out[:, component]
            return float(out[0]) if xs.ndim == 0 else out.reshape(xs.shape)
        return out[0] if xs.ndim == 0 else out.reshape(xs.shape + (self.dimension,))


@dataclass(frozen=True)
class ZeroSet:
    locations: np.ndarray
    component_index: int
    refinement_tol: float

    def __len__(self) -> int:
        return len(self.locations)


def _eval(rhs: Rhs, x: float, y: list) -> Optional[list]:
    try:
        d = [float(v) for v in rhs(x, y)]
    except (SingularityError, ZeroDivisionError, OverflowError, ValueError, FloatingPointError):
        return None
    for v in d:
        if not isfinite(v):
            return None
    return d


def _combine(y: list, h: float, row: tuple, K: list) -> list:
    out = []
    for j, yj in enumerate(y):
        acc = 0.0
        for a, k in zip(row, K):
            acc += a * k[j]
        out.append(yj + h * acc)
    return out


def _stages(f: Rhs, x: float, y: list, K: list, h: float, xnew: float) -> Optional[list]:
    """Fill stages K[1:] of one trial step (K[0] holds f(x, y)); None if singular."""
    for i in range(1, 6):
        d = _eval(f, x + _C[i] * h, _combine(y, h, _A[i], K))
        if d is None:
            return None
        K[i] = d
    ynew = _combine(y, h, _A[6], K)
    for v in ynew:
        if not isfinite(v):
            return None
    d = _eval(f, xnew, ynew)
    if d is None:
        return None
    K[6] = d
    return ynew


def _weighted(h: float, w: tuple, K: list, dim: int) -> list:
    return [h * sum(wi * k[j] for wi, k in zip(w, K)) for j in range(dim)]


def _initial_step(span: float, y0: np.ndarray, d0: np.ndarray, rtol: float, atol: float) -> float:
    scale = atol + rtol * np.abs(y0)
    dnorm = float(np.max(np.abs(d0) / scale)) if d0.size else 0.0
    ratio = 1.0 if dnorm == 0 else min(1.0, (1.0 / dnorm) ** 0.2)
    return min(span / 10, 1e-2 * span * ratio)


def integrate_adaptive(
    problem: OdeProblem,
    y0,
    span,
    rel_tol: float = 1e-10,
    abs_tol: float = 1e-12,
    *,
    max_steps: int = 2_000_000,
) -> Trajectory:
    """Integrate ``problem`` over ``span = (a, b)`` with local error control.

    Each accepted step satisfies ``|err_i| <= abs_tol + rel_tol * max(|y_i|, |y_new_i|)``
    for the embedded 4th-order estimate.  A non-finite or raising ``rhs`` makes
    the step shrink; if it persists down to the underflow step the run ends
    with ``termination_reason == "singularity"`` and the last good state kept.
    """
    a, b = float(span[0]), float(span[1])
    if not b > a:
        raise ValueError(f"integration span must satisfy a < b, got {span}")
    if not (rel_tol > 0 and abs_tol > 0):
        raise ValueError("tolerances must be positive")
    y = np.array(y0, dtype=float).reshape(-1)
    if y.size != problem.dimension:
        raise ValueError(f"y0 has {y.size} entries, problem dimension is {problem.dimension}")
    if not np.all(np.isfinite(y)):
        raise ValueError("y0 must be finite")

    return _integrate(problem, y, a, b, rel_tol, abs_tol, max_steps)


def _integrate(problem: OdeProblem, y: np.ndarray, a: float, b: float,
               rel_tol: float, abs_tol: float, max_steps: int) -> Trajectory:
    f = problem.rhs
    dim = y.size
    length = b - a
    hmin = UNDERFLOW * length
    yl = [float(v) for v in y]
    nodes = [a]
    states = [yl]
    coeffs: list = []

    k1 = _eval(f, a, yl)
    if k1 is None:
        return Trajectory(np.array(nodes), np.array(states), np.zeros((0, 5, dim)),
                          "singularity", f"rhs singular at initial point x = {a}")
    h = _initial_step(length, y, np.array(k1), rel_tol, abs_tol)
    K: list = [k1] + [None] * 6
    x = a
    reason: Termination = "reached_end"
    message = ""
    rejected = 0

    for _ in range(max_steps):
        if x >= b:
            break
        last = x + h >= b
        if last:
            h = b - x
        xnew = b if last else x + h
        ynew = _stages(f, x, yl, K, h, xnew)
        if ynew is None:
            h *= 0.5
            if h < hmin:
                reason = "singularity"
                message = f"rhs singular near x = {x!r}"
                break
            continue

        err = _weighted(h, _E, K, dim)
        enorm = 0.0
        for e, y0j, y1j in zip(err, yl, ynew):
            r = abs(e) / (abs_tol + rel_tol * max(abs(y0j), abs(y1j)))
            if r > enorm:
                enorm = r
        if enorm <= 1.0:
            k7 = K[6]
            k0 = K[0]
            dy = [y1j - y0j for y0j, y1j in zip(yl, ynew)]
            r3 = [h * k0[j] - dy[j] for j in range(dim)]
            r4 = [dy[j] - h * k7[j] - r3[j] for j in range(dim)]
            r5 = _weighted(h, _D, K, dim)
            coeffs.append((yl, dy, r3, r4, r5))
            x = xnew
            yl = ynew
            K[0] = k7
            nodes.append(x)
            states.append(yl)
            if problem.stop_predicate is not None and problem.stop_predicate(np.array(yl)):
                reason = "event"
                message = f"stop predicate fired at x = {x!r}"
                break
            fac = FAC_MAX if enorm == 0 else min(FAC_MAX, max(FAC_MIN, SAFETY * enorm ** -0.2))
            h *= fac
        else:
            rejected += 1
            h *= max(FAC_MIN, SAFETY * enorm ** -0.2)
        if h < hmin and x < b:
            reason = "step_underflow"
            message = f"step size below {hmin:g} at x = {x!r}"
            break
    else:
        reason = "step_underflow"
        message = f"max_steps = {max_steps} exhausted at x = {x!r}"

    return Trajectory(
        np.array(nodes),
        np.array(states),
        np.array(coeffs, dtype=float) if coeffs else np.zeros((0, 5, dim)),
        reason,
        message,
        rejected,
    )


def find_zeros(traj: Trajectory, component: int, tol: float = 1e-12, samples_per_step: int = 4) -> ZeroSet:
    """Sign changes of one component of the dense output, refined by bisection.

    Each step is sampled at ``samples_per_step`` sub-points to catch pairs of
    crossings inside one step; tangential zeros are not sought.
    """
    if not 0 <= component < traj.dimension:
        raise ValueError(f"component {component} out of range for dimension {traj.dimension}")
    if len(traj.nodes) < 2:
        return ZeroSet(np.zeros(0), component, tol)
    frac = np.linspace(0.0, 1.0, samples_per_step + 1)[:-1]
    h = np.diff(traj.nodes)
    grid = (traj.nodes[:-1, None] + frac[None, :] * h[:, None]).ravel()
    grid = np.append(grid, traj.nodes[-1])
    vals = traj(grid, component)
    sgn = np.sign(vals)
    found: list[float] = []
    nz = np.flatnonzero(sgn != 0)
    for i in np.flatnonzero(sgn == 0):
        # an exact zero counts only if the signal really crosses there
        k = np.searchsorted(nz, i)
        if 0 < k < nz.size and sgn[nz[k - 1]] != sgn[nz[k]]:
            found.append(float(grid[i]))
    for i in np.nonzero(sgn[:-1] * sgn[1:] < 0)[0]:
        lo, hi = float(grid[i]), float(grid[i + 1])
        slo = sgn[i]
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            vm = traj(mid, component)
            if vm == 0:
                lo = hi = mid
                break
            if np.sign(vm) == slo:
                lo = mid
            else:
                hi = mid
        found.append(0.5 * (lo + hi))
    found.sort()
    locs: list[float] = []
    for z in found:
        if not locs or z - locs[-1] > tol:
            locs.append(z)
    return ZeroSet(np.array(locs), component, tol)
