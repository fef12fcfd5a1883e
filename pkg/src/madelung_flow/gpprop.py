"""Split-step Fourier propagation of the GP equation on a periodic box.

    i hbar Psi_t = (-hbar^2/(2m) lap + n |Psi|^2 + U - mu) Psi

Strang splitting: half local step, full kinetic step in Fourier space, half
local step.  The Fourier transform is an in-house radix-2 decimation in time
routine, vectorised over every leading axis.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Literal, Optional

import numpy as np

from .errors import ConfigError, DomainError, RangeError
from .madelung import ShapeTable
from .reconstruct import ComplexField
from .similarity import PhysParams

EDGE_WARN = 1e-6


def _is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@lru_cache(maxsize=None)
def _plan(n: int, inverse: bool):
    """Bit-reversal permutation and per-stage twiddles for length n."""
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.intp)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    sign = 1.0 if inverse else -1.0
    tw = []
    m = 1
    while m < n:
        w = np.exp(sign * 1j * np.pi * np.arange(m) / m)
        w.setflags(write=False)
        tw.append(w)
        m *= 2
    rev.setflags(write=False)
    return rev, tuple(tw)


def dft(values, direction: Literal["forward", "inverse"] = "forward", axis: int = -1) -> np.ndarray:
    """Radix-2 DIT transform along ``axis``.

    forward: X_k = sum_j x_j exp(-2 pi i jk/N); inverse uses +i and 1/N.
    """
    if direction not in ("forward", "inverse"):
        raise ConfigError(f"unknown transform direction {direction!r}")
    a = np.moveaxis(np.asarray(values, dtype=complex), axis, -1)
    n = a.shape[-1]
    if not _is_pow2(n):
        raise DomainError(f"transform length must be a power of two, got {n}")
    inverse = direction == "inverse"
    rev, tw = _plan(n, inverse)
    lead = a.shape[:-1]
    x = a[..., rev]
    m = 1
    for w in tw:
        blocks = x.reshape(lead + (n // (2 * m), 2, m))
        even = blocks[..., 0, :]
        odd = blocks[..., 1, :] if m == 1 else blocks[..., 1, :] * w
        x = np.stack((even + odd, even - odd), axis=-2).reshape(lead + (n,))
        m *= 2
    if inverse:
        x = x / n
    return np.moveaxis(x, -1, axis)


def dft2(values, direction: Literal["forward", "inverse"] = "forward") -> np.ndarray:
    """Transform over the last two axes."""
    return dft(dft(values, direction, axis=-1), direction, axis=-2)


def _dftn(a: np.ndarray, direction: str) -> np.ndarray:
    out = a
    for ax in range(a.ndim):
        out = dft(out, direction, axis=ax)
    return out


@dataclass(frozen=True)
class SpectralGrid:
    """Periodic box centred on the origin; nodes at -L/2 + j L/N."""

    points_per_axis: tuple
    box_length: tuple

    def __post_init__(self):
        pts = tuple(int(v) for v in np.atleast_1d(self.points_per_axis))
        lens = tuple(float(v) for v in np.atleast_1d(self.box_length))
        if len(lens) == 1 and len(pts) > 1:
            lens = lens * len(pts)
        if len(pts) not in (1, 2) or len(lens) != len(pts):
            raise DomainError("SpectralGrid supports 1 or 2 axes with one box length per axis")
        for n in pts:
            if not _is_pow2(n) or n < 2:
                raise DomainError(f"points per axis must be a power of two, got {n}")
        for L in lens:
            if not (L > 0 and np.isfinite(L)):
                raise DomainError(f"box length must be positive, got {L}")
        object.__setattr__(self, "points_per_axis", pts)
        object.__setattr__(self, "box_length", lens)

    @property
    def ndim(self) -> int:
        return len(self.points_per_axis)

    @property
    def shape(self) -> tuple:
        return self.points_per_axis

    @property
    def cell_volume(self) -> float:
        return float(np.prod([L / n for n, L in zip(self.points_per_axis, self.box_length)]))

    def axis(self, i: int) -> np.ndarray:
        n, L = self.points_per_axis[i], self.box_length[i]
        return -L / 2 + L * np.arange(n) / n

    def wavenumbers(self, i: int) -> np.ndarray:
        """2 pi j / L, ordered 0, 1, ..., N/2 - 1, -N/2, ..., -1."""
        n, L = self.points_per_axis[i], self.box_length[i]
        j = np.arange(n)
        j = np.where(j < n // 2, j, j - n)
        return 2 * np.pi * j / L

    def mesh(self):
        return np.meshgrid(*[self.axis(i) for i in range(self.ndim)], indexing="ij")

    def k_squared(self) -> np.ndarray:
        ks = np.meshgrid(*[self.wavenumbers(i) for i in range(self.ndim)], indexing="ij")
        return sum(k * k for k in ks)

    def k_max_squared(self) -> float:
        return float(sum((np.pi * n / L) ** 2 for n, L in zip(self.points_per_axis, self.box_length)))


@dataclass(frozen=True)
class SelfSimilarPotential:
    """U(x, y, t) = t**(-2 beta) v((x + y) / t**beta)."""

    v_shape: Callable
    beta: float

    def __call__(self, x, y, t):
        t = float(t)
        if t <= 0:
            raise DomainError("self-similar potential needs t > 0")
        s = np.asarray(x, dtype=float) + np.asarray(y, dtype=float)
        return t ** (-2 * self.beta) * np.asarray(self.v_shape(s / t**self.beta), dtype=float)


def selfsimilar_potential(v_shape: Callable, beta: float) -> SelfSimilarPotential:
    return SelfSimilarPotential(v_shape, float(beta))


@dataclass(frozen=True)
class PropagationReport:
    final: ComplexField
    norm_history: np.ndarray
    energy_history: np.ndarray
    steps_taken: int
    t_final: float
    record_every: int = 1
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        expected = self.steps_taken // self.record_every + 1
        if len(self.norm_history) != expected or len(self.energy_history) != expected:
            raise DomainError("history length inconsistent with steps_taken")


def max_stable_dt(grid: SpectralGrid, p: PhysParams) -> float:
    """Largest |dt| with dt * hbar k_max^2 / (2m) < pi."""
    return 2 * np.pi * p.m / (p.hbar * grid.k_max_squared())


def _potential_values(potential, grid: SpectralGrid, t: float):
    if potential is None:
        return None
    X = grid.mesh()
    if grid.ndim == 1:
        return potential(X[0], 0.0, t)
    return potential(X[0], X[1], t)


def norm(psi: np.ndarray, grid: SpectralGrid) -> float:
    return float(np.sum(np.abs(psi) ** 2) * grid.cell_volume)


def energy(psi: np.ndarray, grid: SpectralGrid, p: PhysParams, u: Optional[np.ndarray] = None) -> float:
    """Kinetic + interaction + potential energy (minus mu N)."""
    dens = np.abs(psi) ** 2
    spec = _dftn(psi, "forward")
    kin = p.hbar**2 / (2 * p.m) * grid.cell_volume / psi.size * float(np.sum(grid.k_squared() * np.abs(spec) ** 2))
    local = p.n / 2 * dens * dens - p.mu * dens
    if u is not None:
        local = local + u * dens
    return kin + float(np.sum(local)) * grid.cell_volume


def _edge_amplitude(psi: np.ndarray) -> float:
    edges = [np.abs(np.take(psi, [0, -1], axis=ax)).max() for ax in range(psi.ndim)]
    return float(max(edges))


def split_step(initial: ComplexField, p: PhysParams, dt: float, steps: int,
               potential: Optional[Callable] = None, t0: float = 0.0,
               record_every: int = 1, edge_check: bool = True) -> PropagationReport:
    """Strang-split propagation for ``steps`` steps of size ``dt``.

    Negative ``dt`` runs the same scheme backward in time.  Norm and energy
    are recorded at the start and then every ``record_every`` steps.
    ``edge_check=False`` silences the box-edge warning for states that are
    periodic by construction (plane waves).
    """
    grid = initial.grid
    if not isinstance(grid, SpectralGrid):
        raise DomainError("split_step needs a field on a SpectralGrid")
    if not (np.isfinite(dt) and dt != 0):
        raise ConfigError("dt must be finite and nonzero")
    if steps < 0 or int(steps) != steps:
        raise ConfigError("steps must be a non-negative integer")
    if record_every < 1:
        raise ConfigError("record_every must be >= 1")
    dt_max = max_stable_dt(grid, p)
    if abs(dt) >= dt_max:
        raise ConfigError(f"dt = {dt} aliases the kinetic factor; need |dt| < {dt_max!r}")

    psi = initial.values.copy()
    kin = np.exp(-1j * dt * p.hbar * grid.k_squared() / (2 * p.m))
    half = dt / (2 * p.hbar)
    nonlinear = p.n != 0
    trivial_local = not nonlinear and potential is None and p.mu == 0

    def transform(a, direction):
        return dft(a, direction) if grid.ndim == 1 else dft2(a, direction)

    def local(a, u):
        if trivial_local:
            return a
        phase = -p.mu
        if nonlinear:
            phase = phase + p.n * (a.real**2 + a.imag**2)
        if u is not None:
            phase = phase + u
        return a * np.exp(-1j * half * phase)

    t = float(t0)
    u_now = _potential_values(potential, grid, t) if potential is not None else None
    norms = [norm(psi, grid)]
    energies = [energy(psi, grid, p, u_now)]
    if edge_check and _edge_amplitude(psi) > EDGE_WARN * max(np.abs(psi).max(), 1e-300):
        warnings.warn("initial field is not small at the box edge; periodic images will interact",
                      RuntimeWarning, stacklevel=2)
    for i in range(int(steps)):
        psi = local(psi, u_now)
        psi = transform(kin * transform(psi, "forward"), "inverse")
        t = float(t0) + (i + 1) * dt
        u_now = _potential_values(potential, grid, t) if potential is not None else None
        psi = local(psi, u_now)
        if (i + 1) % record_every == 0:
            norms.append(norm(psi, grid))
            energies.append(energy(psi, grid, p, u_now))
    peak = np.abs(psi).max()
    if edge_check and peak > 0 and _edge_amplitude(psi) > EDGE_WARN * peak:
        warnings.warn("field reached the box edge during propagation; enlarge the box",
                      RuntimeWarning, stacklevel=2)
    meta = {"dt": dt, "t0": t0, "n": p.n, "mu": p.mu}
    return PropagationReport(ComplexField(grid, psi, meta), np.array(norms), np.array(energies),
                             int(steps), t, record_every, meta)


def gaussian_packet(x, t: float, sigma: float = 1.0, k0: float = 0.0, x0: float = 0.0,
                    p: Optional[PhysParams] = None) -> np.ndarray:
    """Free Schroedinger Gaussian packet, unit norm, width sigma at t = 0."""
    p = p or PhysParams()
    a = p.hbar / p.m
    sig_t = sigma * (1 + 1j * a * t / (2 * sigma**2))  # sigma * sigma_t = sigma^2 + i a t / 2
    xc = np.asarray(x) - x0 - a * k0 * t
    amp = (2 * np.pi * sigma**2) ** -0.25 * np.sqrt(sigma / sig_t)
    return amp * np.exp(-xc**2 / (4 * sigma * sig_t) + 1j * k0 * (np.asarray(x) - x0 - a * k0 * t / 2))


def field_from_table(grid: SpectralGrid, table: ShapeTable, t: float, alpha: float = 1.0,
                     p: Optional[PhysParams] = None, amplitude: str = "abs") -> ComplexField:
    """Self-similar Psi sampled on a spectral grid at time t (y = 0 for 1D grids)."""
    from .reconstruct import phase_S

    if t <= 0:
        raise DomainError("t must be positive")
    p = p or table.params
    X = grid.mesh()
    s = X[0] if grid.ndim == 1 else X[0] + X[1]
    e = s / t ** (alpha / 2)
    lo, hi = table.eta_range
    if e.min() < lo or e.max() > hi:
        raise RangeError(f"grid needs eta in [{float(e.min())}, {float(e.max())}]; table spans [{lo}, {hi}]")
    w = table.w(e)
    amp = np.abs(w) if amplitude == "abs" else w
    psi = amp * t ** (-alpha / 2) * np.exp(1j * phase_S(s, 0.0, t, p))
    return ComplexField(grid, psi, {"t": t, "alpha": alpha})


def collapse_check(report: PropagationReport, table: ShapeTable, alpha: float = 1.0,
                   min_overlap: int = 8) -> float:
    """Relative L2 distance between t^alpha |Psi|^2 and f(eta) on the y = 0 row."""
    grid = report.final.grid
    t1 = report.t_final
    if t1 <= 0:
        raise DomainError("collapse check needs t1 > 0")
    psi = report.final.values
    x = grid.axis(0)
    if grid.ndim == 2:
        j0 = int(np.argmin(np.abs(grid.axis(1))))
        row, y0 = psi[:, j0], grid.axis(1)[j0]
    else:
        row, y0 = psi, 0.0
    e = (x + y0) / t1 ** (alpha / 2)
    lo, hi = table.eta_range
    keep = (e >= lo) & (e <= hi)
    if np.count_nonzero(keep) < min_overlap:
        raise RangeError(f"only {np.count_nonzero(keep)} grid nodes overlap the table range [{lo}, {hi}]")
    scaled = t1**alpha * np.abs(row[keep]) ** 2
    f = table.f(e[keep])
    ref = np.sqrt(np.sum(f * f))
    if ref == 0:
        raise DomainError("reference shape vanishes on the overlap")
    return float(np.sqrt(np.sum((scaled - f) ** 2)) / ref)
