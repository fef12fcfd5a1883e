"""Vectorised adaptive Simpson quadrature."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import NumericalError


@dataclass(frozen=True)
class QuadResult:
    value: float
    est_error: float
    evaluations: int


def adaptive_simpson(
    func: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    tol: float = 1e-9,
    breakpoints: Optional[Sequence[float]] = None,
    max_depth: int = 50,
    min_depth: int = 4,
) -> QuadResult:
    """Integrate ``func`` over [a, b] to absolute tolerance ``tol``.

    ``func`` must accept an array of abscissae.  The tolerance is shared out
    in proportion to sub-interval length, and each panel is accepted when
    ``|S_left + S_right - S_whole| <= 15 * tol_panel``; accepted panels carry
    the Richardson correction.  ``breakpoints`` seed the initial partition
    (e.g. the nodes of a piecewise polynomial).  No panel is accepted before
    ``min_depth`` bisections, which guards against samples that happen to
    alias an oscillation and agree by accident.
    """
    if not b > a:
        if a == b:
            return QuadResult(0.0, 0.0, 0)
        raise ValueError(f"need a <= b, got [{a}, {b}]")
    edges = np.array([a, b], dtype=float)
    if breakpoints is not None:
        bp = np.asarray(breakpoints, dtype=float)
        bp = bp[(bp > a) & (bp < b)]
        edges = np.unique(np.concatenate([edges, bp]))
    lo, hi = edges[:-1], edges[1:]
    mid = 0.5 * (lo + hi)
    pts = func(np.concatenate([lo, mid, hi]))
    n = lo.size
    flo, fmid, fhi = pts[:n], pts[n : 2 * n], pts[2 * n :]
    whole = (hi - lo) / 6 * (flo + 4 * fmid + fhi)
    total = b - a
    evals = 3 * n
    value = 0.0
    err_sum = 0.0
    for depth in range(max_depth):
        lm = 0.5 * (lo + mid)
        rm = 0.5 * (mid + hi)
        pts = func(np.concatenate([lm, rm]))
        evals += pts.size
        flm, frm = pts[: lo.size], pts[lo.size :]
        left = (mid - lo) / 6 * (flo + 4 * flm + fmid)
        right = (hi - mid) / 6 * (fmid + 4 * frm + fhi)
        diff = left + right - whole
        ok = np.abs(diff) <= 15 * tol * (hi - lo) / total
        if depth < min_depth:
            ok[:] = False
        value += float(np.sum((left + right + diff / 15)[ok]))
        err_sum += float(np.sum(np.abs(diff[ok]) / 15))
        bad = ~ok
        if not np.any(bad):
            return QuadResult(value, err_sum, evals)
        lo, mid, hi = (
            np.concatenate([lo[bad], mid[bad]]),
            np.concatenate([lm[bad], rm[bad]]),
            np.concatenate([mid[bad], hi[bad]]),
        )
        flo, fmid, fhi = (
            np.concatenate([flo[bad], fmid[bad]]),
            np.concatenate([flm[bad], frm[bad]]),
            np.concatenate([fmid[bad], fhi[bad]]),
        )
        whole = np.concatenate([left[bad], right[bad]])
    raise NumericalError(f"adaptive Simpson did not converge within depth {max_depth}")
