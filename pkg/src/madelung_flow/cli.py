"""``madelung-flow`` command-line front end.

    madelung-flow <command> [--config PATH] [--key value ...]

Config files are flat ``key = value`` text with ``#`` comments; command-line
flags override file values.  Every table is written atomically with a ``#``
header block holding the full parameter set.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import __version__
from .errors import ConfigError, DomainError, NumericalError, RangeError, SingularityError
from .gpprop import (
    SpectralGrid,
    collapse_check,
    field_from_table,
    gaussian_packet,
    max_stable_dt,
    split_step,
)
from .madelung import (
    ShapeState,
    continuity_residual,
    coupled_states,
    discriminant,
    first_integral,
    first_integral_scale,
    linear_continuity_residual,
    mass_convergence,
    max_deviation,
    momentum_residual,
    rhs_density_f,
    solve_coupled,
    solve_density,
)
from .reconstruct import (
    ComplexField,
    SpacetimeGrid,
    gp_residual,
    real_projection,
    residual_norm,
    sign_changes,
    wavefunction,
)
from .similarity import LinearShapeConstants, PhysParams, fit_constants, linear_density_profile

COMMANDS = ("linear", "solve", "scan", "reconstruct", "evolve", "diagnose")
EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3
THREADS_ENV = "MADELUNG_FLOW_THREADS"


# ----------------------------------------------------------------- values


def fmt(x) -> str:
    """Shortest round-trip decimal; integral values lose the trailing '.0'."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        r = repr(float(x))
        if r.endswith(".0"):
            r = r[:-2]
        return "0" if r == "-0" else r
    if isinstance(x, (tuple, list, np.ndarray)):
        return "[" + ",".join(fmt(v) for v in x) + "]"
    return str(x)


def _json_value(x):
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else fmt(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, (tuple, list, np.ndarray)):
        return [_json_value(v) for v in x]
    if isinstance(x, dict):
        return {k: _json_value(v) for k, v in x.items()}
    return x


def _float(s: str) -> float:
    try:
        v = float(s)
    except ValueError:
        raise ConfigError(f"not a number: {s!r}") from None
    if not math.isfinite(v):
        raise ConfigError(f"value must be finite: {s!r}")
    return v


def _int(s: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise ConfigError(f"not an integer: {s!r}") from None


def _floats(s: str) -> tuple:
    parts = [t for t in s.replace(" ", "").strip("[]").split(",") if t]
    if not parts:
        raise ConfigError("empty number list")
    return tuple(_float(t) for t in parts)


def _bool(s: str) -> bool:
    v = s.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {s!r}")


def _opt_float(s: str):
    return None if s.strip().lower() in ("", "none") else _float(s)


def _choice(*options: str) -> Callable[[str], str]:
    def parse(s: str) -> str:
        if s not in options:
            raise ConfigError(f"{s!r} is not one of {', '.join(options)}")
        return s
    return parse


_PHYS = {
    "hbar": (_float, "1"),
    "m": (_float, "1"),
    "n": (_float, "0"),
    "mu": (_float, "0"),
    "dim": (_int, "2"),
    "dim_factor": (_float, "1"),
    "format": (_choice("csv", "json"), "csv"),
    "output": (str, ""),
}
_SHAPE = {
    "f0": (_float, "1"),
    "fp0": (_float, "0"),
    "eta_start": (_float, "0"),
    "eta_end": (_float, "12"),
    "points": (_int, "1201"),
}

SCHEMA = {
    "linear": {**_PHYS, **_SHAPE, "c1": (_opt_float, "none"), "c2": (_opt_float, "none")},
    "solve": {**_PHYS, **_SHAPE, "tol": (_float, "1e-10"), "form": (_choice("w_form", "f_form"), "w_form")},
    "scan": {
        **_PHYS, **_SHAPE,
        "n_values": (_floats, "0,0.078,0.11,0.13"),
        "zero_span": (_float, "25"),
        "tol": (_float, "1e-10"),
        "out_dir": (str, "scan_out"),
    },
    "reconstruct": {
        **_PHYS,
        "f0": (_float, "1"), "fp0": (_float, "0"),
        "x_start": (_float, "-10"), "x_end": (_float, "10"), "nx": (_int, "801"),
        "t_start": (_float, "0.25"), "t_end": (_float, "3"), "nt": (_int, "56"),
        "y": (_float, "0"),
        "amplitude": (_choice("abs", "signed"), "abs"),
        "zero_field": (_bool, "false"),
        "tol": (_float, "1e-10"),
    },
    "evolve": {
        **_PHYS,
        "initial": (_choice("gaussian", "planewave", "selfsimilar"), "gaussian"),
        "dims": (_int, "1"),
        "points": (_int, "1024"),
        "box": (_float, "80"),
        "dt": (_float, "1e-3"),
        "steps": (_int, "1000"),
        "record_every": (_int, "10"),
        "sigma": (_float, "1"),
        "k0": (_float, "0"),
        "x0": (_float, "0"),
        "amplitude": (_float, "1"),
        "k_index": (_int, "1"),
        "t0": (_float, "1"),
        "f0": (_float, "1"), "fp0": (_float, "0"),
        "tol": (_float, "1e-10"),
    },
    "diagnose": {
        **_PHYS,
        "n": (_float, "0.078"),
        "alpha": (_float, "1"),
        "f0": (_float, "1"), "fp0": (_float, "0"),
        "eta_start": (_float, "0.5"),
        "eta_end": (_float, "6"),
        "points": (_int, "201"),
        "tol": (_float, "1e-11"),
        "mass_eta": (_floats, "20,40,80"),
    },
}


@dataclass(frozen=True)
class RunConfig:
    command: str
    values: dict

    def __getitem__(self, key):
        return self.values[key]

    @property
    def params(self) -> PhysParams:
        v = self.values
        return PhysParams(v["hbar"], v["m"], v["n"], v["mu"], v["dim"], v["dim_factor"])

    def output_path(self, stem: str) -> str:
        return self.values["output"] or f"{stem}.{self.values['format']}"


def read_config_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    out = {}
    for no, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{no}: expected 'key = value'")
        k, v = (s.strip() for s in line.split("=", 1))
        if not k:
            raise ConfigError(f"{path}:{no}: empty key")
        out[k.replace("-", "_")] = v
    return out


def parse_overrides(tokens: Sequence[str]) -> dict:
    out = {}
    it = iter(tokens)
    for tok in it:
        if not tok.startswith("--"):
            raise ConfigError(f"unexpected argument {tok!r}")
        key = tok[2:]
        if "=" in key:
            key, val = key.split("=", 1)
        else:
            try:
                val = next(it)
            except StopIteration:
                raise ConfigError(f"flag --{key} needs a value") from None
        out[key.replace("-", "_")] = val
    return out


def build_config(command: str, raw: dict) -> RunConfig:
    schema = SCHEMA[command]
    unknown = sorted(set(raw) - set(schema))
    if unknown:
        raise ConfigError(f"unknown key(s) for {command}: {', '.join(unknown)}")
    values = {k: parse(raw.get(k, default)) for k, (parse, default) in schema.items()}
    cfg = RunConfig(command, values)
    cfg.params  # PhysParams validation
    if "eta_start" in values and values["eta_start"] < 0:
        raise ConfigError("eta_start must be >= 0")
    if "eta_end" in values and values["eta_end"] < values.get("eta_start", 0.0):
        raise ConfigError("eta_end must be >= eta_start")
    for key in ("points", "nx", "nt", "steps", "record_every"):
        if key in values and values[key] < (0 if key == "steps" else 1):
            raise ConfigError(f"{key} must be positive")
    return cfg


# ----------------------------------------------------------------- output


def write_table(path: str, columns: Sequence[str], rows: Iterable[Sequence], meta: dict, fmt_kind: str) -> None:
    """Atomic CSV/JSON table write; numbers in shortest round-trip form."""
    meta = {"version": __version__, **meta}
    if fmt_kind == "csv":
        parts = [f"# {k} = {fmt(meta[k])}\n" for k in sorted(meta)]
        parts.append("# columns: " + ",".join(columns) + "\n")
        parts.extend(",".join(fmt(v) for v in r) + "\n" for r in rows)
        text = "".join(parts)
    else:
        doc = {"meta": _json_value(dict(sorted(meta.items()))), "columns": list(columns),
               "rows": [_json_value(list(r)) for r in rows]}
        text = json.dumps(doc, sort_keys=True) + "\n"
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _eta_grid(cfg: RunConfig) -> np.ndarray:
    a, b = cfg["eta_start"], cfg["eta_end"]
    if a == b:
        return np.array([a])
    return np.linspace(a, b, cfg["points"])


def _meta(cfg: RunConfig, **extra) -> dict:
    return {"command": cfg.command, **cfg.values, **extra}


# --------------------------------------------------------------- commands


def cmd_linear(cfg: RunConfig) -> list:
    p = cfg.params
    c1, c2 = cfg["c1"], cfg["c2"]
    if (c1 is None) != (c2 is None):
        raise ConfigError("c1 and c2 must be overridden together")
    c = fit_constants(cfg["f0"], cfg["fp0"], p) if c1 is None else LinearShapeConstants(c1, c2)
    e = _eta_grid(cfg)
    f, fp = linear_density_profile(e, c, p)
    path = cfg.output_path("linear")
    write_table(path, ("eta", "f", "fp"), zip(e, f, fp), _meta(cfg, c1_fitted=c.c1, c2_fitted=c.c2),
                cfg["format"])
    return [path]


def _zeros_sidecar(path: str) -> str:
    root, ext = os.path.splitext(path)
    return f"{root}.zeros{ext}"


def cmd_solve(cfg: RunConfig) -> list:
    p = cfg.params
    e = _eta_grid(cfg)
    span = (0.0, max(cfg["eta_end"], 0.0))
    table = solve_density(p.n, cfg["f0"], cfg["fp0"], span, cfg["tol"], cfg["form"], params=p)
    traj = table.trajectory
    if traj.end < span[1]:
        raise NumericalError(f"{cfg['form']} run stopped at eta = {traj.end!r} ({traj.termination_reason})")
    f, fp = table.profile(e)
    w, wp = table.w(e), table.wp(e)
    path = cfg.output_path("solve")
    meta = _meta(cfg, termination=traj.termination_reason, rejected_steps=traj.rejected_steps)
    write_table(path, ("eta", "f", "fp", "w", "wp"), zip(e, f, fp, w, wp), meta, cfg["format"])
    zeros = table.zeros().locations if cfg["form"] == "w_form" else ()
    side = _zeros_sidecar(path)
    write_table(side, ("index", "eta"), ((i, z) for i, z in enumerate(zeros)),
                _meta(cfg, zero_count=len(zeros)), cfg["format"])
    return [path, side]


def _dedupe(values: Sequence[float]) -> tuple:
    seen, out, dup = set(), [], []
    for v in values:
        if v in seen:
            dup.append(v)
            continue
        seen.add(v)
        out.append(v)
    if dup:
        msg = f"duplicate n values removed: {fmt(dup)}"
        warnings.warn(msg, UserWarning, stacklevel=2)
        print(f"madelung-flow: warning: {msg}", file=sys.stderr)
    return tuple(out)


def _scan_threads(count: int) -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return max(count, 1)
    try:
        v = int(raw)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if v < 1:
        raise ConfigError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return v


def cmd_scan(cfg: RunConfig) -> list:
    p = cfg.params
    ns = _dedupe(cfg["n_values"])
    for n in ns:
        p.with_n(n)  # rejects n < 0
    reach = max(cfg["eta_end"], cfg["zero_span"])
    todo = ns if 0.0 in ns else ns + (0.0,)

    def run(n):
        return solve_density(n, cfg["f0"], cfg["fp0"], (0.0, reach), cfg["tol"], params=p)

    with ThreadPoolExecutor(max_workers=_scan_threads(len(todo))) as pool:
        tables = dict(zip(todo, pool.map(run, todo)))
    ref = tables[0.0]
    e = _eta_grid(cfg)
    out_dir = cfg["out_dir"]
    ext = cfg["format"]
    written, summary = [], []
    for n in ns:
        t = tables[n]
        f, fp = t.profile(e)
        zs = [z for z in t.zeros().locations if z <= cfg["zero_span"]]
        dev = max_deviation(t, ref, cfg["eta_end"])
        path = os.path.join(out_dir, f"shape_n{fmt(n)}.{ext}")
        write_table(path, ("eta", "f", "fp", "w", "wp"), zip(e, f, fp, t.w(e), t.wp(e)),
                    _meta(cfg, n=n, deviation=dev, zero_count=len(zs)), ext)
        written.append(path)
        summary.append((n, dev, len(zs), zs[0] if zs else float("nan")))
    path = os.path.join(out_dir, f"summary.{ext}")
    write_table(path, ("n", "deviation", "zero_count", "first_zero"), summary,
                _meta(cfg, n_values=ns), ext)
    written.append(path)
    return written


def cmd_reconstruct(cfg: RunConfig) -> list:
    p = cfg.params
    if cfg["t_start"] <= 0:
        raise ConfigError("t_start must be > 0 (the field is singular at t = 0)")
    if cfg["t_end"] < cfg["t_start"] or cfg["x_end"] < cfg["x_start"]:
        raise ConfigError("ranges must be increasing")
    if min(cfg["nx"], cfg["nt"]) < 2:
        raise ConfigError("nx and nt must be at least 2")
    grid = SpacetimeGrid.uniform((cfg["x_start"], cfg["x_end"]), cfg["nx"],
                                 (cfg["t_start"], cfg["t_end"]), cfg["nt"], cfg["y"])
    if cfg["zero_field"]:
        fld = ComplexField(grid, np.zeros((cfg["nx"], cfg["nt"]), dtype=complex), {"zero_field": True})
    else:
        s_max = max(abs(cfg["x_start"] + cfg["y"]), abs(cfg["x_end"] + cfg["y"]))
        reach = s_max / math.sqrt(cfg["t_start"]) * (1 + 1e-9) + 1e-9
        table = solve_density(p.n, cfg["f0"], cfg["fp0"], (0.0, reach), cfg["tol"], params=p, two_sided=True)
        fld = wavefunction(grid, table, 1.0, p, cfg["amplitude"])
    proj = real_projection(fld)
    extra = {
        "sign_changes_first_t": sign_changes(proj.re[:, 0]),
        "sign_changes_last_t": sign_changes(proj.re[:, -1]),
        "peak_first_t": float(np.max(np.abs(proj.re[:, 0]))),
        "peak_last_t": float(np.max(np.abs(proj.re[:, -1]))),
    }
    path = cfg.output_path("reconstruct")
    write_table(path, ("x", "t", "re_psi"), proj.rows(), _meta(cfg, alpha=1.0, **extra), cfg["format"])
    return [path]


def cmd_evolve(cfg: RunConfig) -> list:
    p = cfg.params
    dims = cfg["dims"]
    if dims not in (1, 2):
        raise ConfigError("dims must be 1 or 2")
    try:
        grid = SpectralGrid((cfg["points"],) * dims, (cfg["box"],) * dims)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None
    dt_max = max_stable_dt(grid, p)
    if abs(cfg["dt"]) >= dt_max:
        raise ConfigError(f"dt = {fmt(cfg['dt'])} aliases the kinetic factor; maximal admissible dt is {fmt(dt_max)}")
    X = grid.mesh()
    s = X[0] if dims == 1 else X[0] + X[1]
    kind = cfg["initial"]
    t0 = cfg["t0"] if kind == "selfsimilar" else 0.0
    table = None
    if kind == "gaussian":
        psi0 = gaussian_packet(X[0], 0.0, cfg["sigma"], cfg["k0"], cfg["x0"], p)
        if dims == 2:
            psi0 = psi0 * gaussian_packet(X[1], 0.0, cfg["sigma"], 0.0, 0.0, p)
        fld = ComplexField(grid, psi0)
    elif kind == "planewave":
        k = 2 * math.pi * cfg["k_index"] / cfg["box"]
        fld = ComplexField(grid, cfg["amplitude"] * np.exp(1j * k * X[0]))
    else:
        reach = float(np.max(np.abs(s))) / math.sqrt(t0) * (1 + 1e-9) + 1e-9
        table = solve_density(p.n, cfg["f0"], cfg["fp0"], (0.0, reach), cfg["tol"], params=p, two_sided=True)
        fld = field_from_table(grid, table, t0, 1.0, p)

    report = split_step(fld, p, cfg["dt"], cfg["steps"], t0=t0, record_every=cfg["record_every"],
                        edge_check=kind == "gaussian")
    t1 = report.t_final
    extra = {"t_final": t1, "max_stable_dt": dt_max,
             "norm_drift": float(np.max(report.norm_history) - np.min(report.norm_history))}
    psi = report.final.values
    if kind == "gaussian":
        exact = gaussian_packet(X[0], t1, cfg["sigma"], cfg["k0"], cfg["x0"], p)
        if dims == 2:
            exact = exact * gaussian_packet(X[1], t1, cfg["sigma"], 0.0, 0.0, p)
        extra["l2_error_free_packet"] = float(np.sqrt(np.sum(np.abs(psi - exact) ** 2) * grid.cell_volume))
    elif kind == "planewave":
        k = 2 * math.pi * cfg["k_index"] / cfg["box"]
        a = cfg["amplitude"]
        omega = p.hbar * k * k / (2 * p.m) + (p.n * a * a - p.mu) / p.hbar
        exact = a * np.exp(1j * (k * X[0] - omega * t1))
        extra["max_error_planewave"] = float(np.max(np.abs(psi - exact)))
    else:
        extra["collapse_metric"] = collapse_check(report, table, 1.0)
    history = ((i * report.record_every, t0 + i * report.record_every * cfg["dt"], nv, ev)
               for i, (nv, ev) in enumerate(zip(report.norm_history, report.energy_history)))
    path = cfg.output_path("evolve")
    write_table(path, ("step", "t", "norm", "energy"), history, _meta(cfg, **extra), cfg["format"])
    return [path]


def _density_third(table, e: np.ndarray, p: PhysParams):
    """(f, f', f'', f''') of a w_form density table from w and its ODE."""
    w, wp = table.w(e), table.wp(e)
    c = p.dim_factor * p.m * p.m / (8 * p.hbar * p.hbar)
    g = 2 * p.n * p.m / p.hbar
    wpp = -c * e * e * w + g * w**3
    wppp = -c * (2 * e * w + e * e * wp) + 3 * g * w * w * wp
    return w * w, 2 * w * wp, 2 * wp * wp + 2 * w * wpp, 6 * wp * wpp + 2 * w * wppp


def cmd_diagnose(cfg: RunConfig) -> list:
    p = cfg.params
    alpha = cfg["alpha"]
    a, b = cfg["eta_start"], cfg["eta_end"]
    reach = max(b, max(cfg["mass_eta"]))
    table = solve_density(p.n, cfg["f0"], cfg["fp0"], (0.0, reach), cfg["tol"], params=p)
    e = _eta_grid(cfg)
    f, fp, fpp, fppp = _density_third(table, e, p)
    g = e / 4
    st = ShapeState(f, fp, fpp, g, g)
    cont = continuity_residual(e, st, alpha, 0.25, 0.25)
    lin = linear_continuity_residual(e, st, 0.25, 0.25)
    positive = f > 0
    safe = ShapeState(np.where(positive, f, 1.0), fp, fpp, g, g)
    with np.errstate(all="ignore"):
        mom = np.where(positive, momentum_residual(e, safe, fppp, alpha, p, 0.25, 0.25), np.nan)
        fc = np.where(positive, first_integral(e, safe, p, "corrected"), np.nan)
        fpr = np.where(positive, first_integral(e, safe, p, "printed"), np.nan)
        disc = np.where(positive, discriminant(e, safe.f, fp, fpp, p), np.nan)

    extra = {}
    f_a, fp_a = table.profile(a)
    if f_a > 0:
        state0 = (f_a, fp_a, rhs_density_f(a, f_a, fp_a, p), a / 4)
        ct = solve_coupled(alpha, a, state0, b, p, cfg["tol"])
        ce = e[(e >= a) & (e <= ct.trajectory.end)]
        cs = coupled_states(ct, ce)
        scale = float(np.max(first_integral_scale(ce, cs, p)))
        for mode in ("corrected", "printed"):
            vals = first_integral(ce, cs, p, mode)
            extra[f"coupled_drift_{mode}"] = float(np.ptp(vals)) / scale
        extra["coupled_termination"] = ct.trajectory.termination_reason
        extra["coupled_eta_end"] = ct.trajectory.end
    mc = mass_convergence(table, cfg["mass_eta"])
    extra.update(mass_eta=mc.eta_max, mass_integrals=mc.integrals, mass_differences=mc.differences,
                 mass_differences_shrink=mc.differences_shrink)

    grid = SpacetimeGrid.uniform((-4.0, 4.0), 161, (1.0, 2.0), 81)
    recon = solve_density(p.n, cfg["f0"], cfg["fp0"], (0.0, 4.0 + 1e-6), cfg["tol"], params=p, two_sided=True)
    extra["gp_residual_rms"] = residual_norm(gp_residual(wavefunction(grid, recon, 1.0, p, "signed"), p))

    path = cfg.output_path("diagnose")
    cols = ("eta", "f", "continuity", "continuity_linear", "momentum", "first_integral_corrected",
            "first_integral_printed", "discriminant")
    write_table(path, cols, zip(e, f, cont, lin, mom, fc, fpr, disc), _meta(cfg, **extra), cfg["format"])
    return [path]


HANDLERS = {
    "linear": cmd_linear,
    "solve": cmd_solve,
    "scan": cmd_scan,
    "reconstruct": cmd_reconstruct,
    "evolve": cmd_evolve,
    "diagnose": cmd_diagnose,
}


def run(command: str, raw: dict) -> list:
    """Validate ``raw`` string settings for ``command`` and execute it."""
    return HANDLERS[command](build_config(command, raw))


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(prog="madelung-flow", add_help=True)
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", default=None)
    try:
        args, rest = parser.parse_known_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        raw = read_config_file(args.config) if args.config else {}
        raw.update(parse_overrides(rest))
        paths = run(args.command, raw)
    except (ConfigError, DomainError, RangeError, ValueError) as exc:
        print(f"madelung-flow: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalError, SingularityError, ArithmeticError) as exc:
        print(f"madelung-flow: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except Exception as exc:  # noqa: BLE001 - valid configs must never crash the process
        print(f"madelung-flow: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    for path in paths:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
