"""Wave function from the hydrodynamic shapes, and its GP residual.

Psi(x, y, t) = sqrt(t**-alpha f(eta)) exp(i S) with S = (m/hbar)(x+y)^2/(4t)
and eta = (x+y)/sqrt(t).  Fields depend on x and y only through s = x + y,
so grids are (x, t) with a fixed y offset and the 2D Laplacian becomes
2 d^2/ds^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np

from .errors import DomainError, RangeError
from .madelung import ShapeTable
from .similarity import PhysParams


def _check_uniform(v: np.ndarray, name: str) -> None:
    if v.ndim != 1 or v.size < 2:
        raise DomainError(f"{name} must be a 1-D sequence with at least 2 nodes")
    d = np.diff(v)
    if np.any(d <= 0):
        raise DomainError(f"{name} must be strictly increasing")
    if not np.allclose(d, d[0], rtol=1e-9, atol=0):
        raise DomainError(f"{name} must be uniformly spaced")


@dataclass(frozen=True)
class SpacetimeGrid:
    x_values: np.ndarray
    t_values: np.ndarray
    y: float = 0.0

    def __post_init__(self):
        x = np.asarray(self.x_values, dtype=float)
        t = np.asarray(self.t_values, dtype=float)
        _check_uniform(x, "x_values")
        _check_uniform(t, "t_values")
        if t[0] <= 0:
            raise DomainError("t_values must be strictly positive")
        object.__setattr__(self, "x_values", x)
        object.__setattr__(self, "t_values", t)

    @classmethod
    def uniform(cls, x_range=(-10.0, 10.0), nx: int = 801, t_range=(0.25, 3.0), nt: int = 56,
                y: float = 0.0) -> "SpacetimeGrid":
        return cls(np.linspace(*x_range, nx), np.linspace(*t_range, nt), y)

    @property
    def dx(self) -> float:
        return float(self.x_values[1] - self.x_values[0])

    @property
    def dt(self) -> float:
        return float(self.t_values[1] - self.t_values[0])

    def mesh(self):
        """(X, T) arrays indexed [ix, it]."""
        return np.meshgrid(self.x_values, self.t_values, indexing="ij")


@dataclass(frozen=True)
class ComplexField:
    """Complex samples on a grid; ``values`` shape matches the grid's mesh."""

    grid: object
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if not np.all(np.isfinite(v)):
            raise DomainError("field values must be finite")
        shape = getattr(self.grid, "shape", None)
        if shape is None and isinstance(self.grid, SpacetimeGrid):
            shape = (self.grid.x_values.size, self.grid.t_values.size)
        if shape is not None and tuple(v.shape) != tuple(shape):
            raise DomainError(f"field shape {v.shape} does not match grid {shape}")
        object.__setattr__(self, "values", v)


def phase_S(x, y, t, p: PhysParams):
    """(m/hbar)(x+y)^2 / (4t)."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr <= 0):
        raise DomainError("phase needs t > 0")
    s = np.asarray(x) + np.asarray(y)
    return p.m / p.hbar * s * s / (4 * t_arr)


def wavefunction(grid: SpacetimeGrid, table: ShapeTable, alpha: float = 1.0,
                 p: Optional[PhysParams] = None,
                 amplitude: Literal["abs", "signed"] = "abs") -> ComplexField:
    """Psi = sqrt(t^-alpha f(eta)) e^{iS} on an (x, t) grid.

    ``amplitude="abs"`` takes sqrt(f) = |w|; ``"signed"`` keeps the sign of w
    from a w_form table, which keeps Psi smooth through the zeros of f.
    """
    if alpha != 1.0:
        raise DomainError("the wave-function reconstruction is defined for alpha = 1")
    p = p or table.params
    X, T = grid.mesh()
    s = X + grid.y
    eta_v = s / np.sqrt(T)
    lo, hi = table.eta_range
    need = (float(eta_v.min()), float(eta_v.max()))
    if need[0] < lo or need[1] > hi:
        raise RangeError(f"grid needs eta in [{need[0]}, {need[1]}]; table spans [{lo}, {hi}]")
    w = table.w(eta_v)
    amp = np.abs(w) if amplitude == "abs" else w
    psi = amp / np.sqrt(T**alpha) * np.exp(1j * phase_S(X, grid.y, T, p))
    return ComplexField(grid, psi, {"alpha": alpha, "amplitude": amplitude, **table.meta})


def gp_residual(fld: ComplexField, p: PhysParams, laplacian_factor: float = 2.0) -> np.ndarray:
    """i hbar Psi_t - (-hbar^2/2m lap Psi + n |Psi|^2 Psi - mu Psi) on interior nodes.

    Second-order central differences; ``lap = laplacian_factor * d^2/dx^2``
    (2 for the combined x + y coordinate).  Result shape (nx - 2, nt - 2).
    """
    grid = fld.grid
    if not isinstance(grid, SpacetimeGrid):
        raise DomainError("gp_residual needs a SpacetimeGrid field")
    psi = fld.values
    if min(psi.shape) < 5:
        raise DomainError("gp_residual needs at least 5 nodes per axis")
    dx, dt = grid.dx, grid.dt
    c = psi[1:-1, 1:-1]
    psi_t = (psi[1:-1, 2:] - psi[1:-1, :-2]) / (2 * dt)
    psi_xx = (psi[2:, 1:-1] - 2 * c + psi[:-2, 1:-1]) / (dx * dx)
    lap = laplacian_factor * psi_xx
    return 1j * p.hbar * psi_t - (-(p.hbar**2) / (2 * p.m) * lap + p.n * np.abs(c) ** 2 * c - p.mu * c)


def residual_norm(res: np.ndarray) -> float:
    """Root-mean-square magnitude of a residual field."""
    return float(np.sqrt(np.mean(np.abs(res) ** 2)))


@dataclass(frozen=True)
class Projection:
    """Rows (x, t, Re Psi), t-major then x, plus metadata for the header."""

    x: np.ndarray
    t: np.ndarray
    re: np.ndarray  # shape (nx, nt)
    meta: dict

    def rows(self):
        for j, tj in enumerate(self.t):
            for i, xi in enumerate(self.x):
                yield (float(xi), float(tj), float(self.re[i, j]))

    def column_at(self, t0: float) -> np.ndarray:
        """Re Psi along x at the grid time nearest t0."""
        j = int(np.argmin(np.abs(self.t - t0)))
        return self.re[:, j]


def real_projection(fld: ComplexField) -> Projection:
    grid = fld.grid
    meta = dict(fld.meta)
    meta.update(
        x_range=(float(grid.x_values[0]), float(grid.x_values[-1])), nx=int(grid.x_values.size),
        t_range=(float(grid.t_values[0]), float(grid.t_values[-1])), nt=int(grid.t_values.size),
        y=float(grid.y),
    )
    return Projection(grid.x_values, grid.t_values, fld.values.real.copy(), meta)


def sign_changes(values: np.ndarray) -> int:
    """Number of strict sign changes in a sequence (exact zeros skipped)."""
    s = np.sign(np.asarray(values))
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))
