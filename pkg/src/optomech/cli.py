"""Command-line front end.

Four modes, all emitting RFC-4180-style CSV with a mandatory header row and
17-significant-digit floats, so identical configs give byte-identical files:

* ``evolve``       one trajectory: optical amplitude, quadratures,
                   subsystem eigenvalues and the non-Gaussianity measure.
* ``sweep``        the measure and its bounds over 1-2 parameter axes.
* ``oracle-check`` side-by-side analytic vs truncated-Fock moments.
* ``mathieu``      numeric vs two-scale solutions of the modulated sector.

Configuration is a flat ``key = value`` text file with optional bracketed
section headers; every key is also a ``--key value`` flag that overrides the
file.  Exit codes: 0 success, 2 config error, 3 numerical-regime error,
4 oracle mismatch.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import fock
from .engine import evaluate_point, evaluate_trajectory
from .errors import (
    ConfigError,
    ConvergenceError,
    CutoffInsufficientError,
    OptomechError,
)
from .moments import InitialState
from .profiles import ConstantSqueezing, Coupling, ModulatedSqueezing, SystemParams
from .squeezing import mathieu_params, solve_quadratic, two_scale_solution

_EXIT_OK = 0
_EXIT_CONFIG = 2
_EXIT_REGIME = 3
_EXIT_MISMATCH = 4

_SWEEP_AXES = ("g0", "d2", "tau")

# certified envelope for the brute-force oracle
_ORACLE_LIMITS = {
    "g0": 1.0,
    "d2_constant": 1.0,
    "d2_modulated": 0.3,
    "mu": 2.0,
    "tau": 2.0 * np.pi,
    "dim": 60_000,
}


@dataclass(frozen=True)
class Axis:
    name: str
    start: float
    stop: float
    count: int
    spacing: str  # "linear" | "log"

    def values(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class RunConfig:
    mode: str
    omega_c: float = 1.0
    g0: float = 1.0
    d1: float = 0.0
    squeezing: str = "constant"
    d2: float = 0.0
    omega0: float = 2.0
    mu_c: complex = 1.0 + 0.0j
    mu_m: complex = 0.0 + 0.0j
    tau_max: float = 2.0 * np.pi
    points: int = 201
    resolution: float = 0.0
    lab_frame: bool = False
    tau: float = np.pi
    axis1: Axis | None = None
    axis2: Axis | None = None
    n_c: int = 0
    n_m: int = 0
    dt: float = 0.0
    tol: float = 1e-3
    workers: int = 0
    out: str = ""

    def system(self) -> SystemParams:
        if self.squeezing == "constant":
            profile = ConstantSqueezing(self.d2)
        elif self.squeezing == "modulated":
            profile = ModulatedSqueezing(self.d2, self.omega0)
        else:
            raise ConfigError(
                f"squeezing: unknown profile {self.squeezing!r} (constant|modulated)"
            )
        return SystemParams(
            omega_c=self.omega_c,
            coupling=Coupling(g=self.g0, drive=self.d1),
            squeezing=profile,
        )

    def initial_state(self) -> InitialState:
        return InitialState(mu_c=self.mu_c, mu_m=self.mu_m)


def _parse_float(key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{key}: expected a number, got {raw!r}") from None


def _parse_int(key: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {raw!r}") from None


def _parse_bool(key: str, raw: str) -> bool:
    low = raw.strip().lower()
    if low in ("true", "1", "yes", "on"):
        return True
    if low in ("false", "0", "no", "off"):
        return False
    raise ConfigError(f"{key}: expected true/false, got {raw!r}")


def _parse_complex(key: str, raw: str) -> complex:
    parts = [p.strip() for p in raw.split(",")]
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ConfigError(f"{key}: expected 're,im', got {raw!r}")


def _parse_axis(key: str, raw: str) -> Axis:
    parts = [p.strip() for p in raw.split(",")]
    if len(parts) != 5:
        raise ConfigError(f"{key}: expected 'name,start,stop,count,linear|log', got {raw!r}")
    name, start, stop, count, spacing = parts
    if name not in _SWEEP_AXES:
        raise ConfigError(f"{key}: axis name must be one of {_SWEEP_AXES}, got {name!r}")
    if spacing not in ("linear", "log"):
        raise ConfigError(f"{key}: spacing must be linear or log, got {spacing!r}")
    n = _parse_int(key, count)
    if n < 2:
        raise ConfigError(f"{key}: axis count must be >= 2, got {n}")
    lo, hi = _parse_float(key, start), _parse_float(key, stop)
    if spacing == "log" and (lo <= 0 or hi <= 0):
        raise ConfigError(f"{key}: log axis endpoints must be positive")
    return Axis(name=name, start=lo, stop=hi, count=n, spacing=spacing)


_PARSERS = {
    "omega_c": _parse_float,
    "g0": _parse_float,
    "d1": _parse_float,
    "squeezing": lambda key, raw: raw.strip().lower(),
    "d2": _parse_float,
    "omega0": _parse_float,
    "mu_c": _parse_complex,
    "mu_m": _parse_complex,
    "tau_max": _parse_float,
    "points": _parse_int,
    "resolution": _parse_float,
    "lab_frame": _parse_bool,
    "tau": _parse_float,
    "axis1": _parse_axis,
    "axis2": _parse_axis,
    "n_c": _parse_int,
    "n_m": _parse_int,
    "dt": _parse_float,
    "tol": _parse_float,
    "workers": _parse_int,
}


def parse_config_file(path: str) -> dict[str, str]:
    """Flat key=value file; bracketed section headers and # comments ignored."""
    raw: dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as handle:
            lines = handle.readlines()
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path!r} ({exc})") from None
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text or text.startswith("#") or text.startswith(";"):
            continue
        if text.startswith("[") and text.endswith("]"):
            continue
        if "=" not in text:
            raise ConfigError(f"config line {lineno}: expected 'key = value', got {text!r}")
        key, value = text.split("=", 1)
        raw[key.strip().lower()] = value.strip()
    return raw


def build_config(mode: str, file_values: dict[str, str], overrides: dict[str, str],
                 out: str) -> RunConfig:
    merged = dict(file_values)
    merged.update({k: v for k, v in overrides.items() if v is not None})
    cfg = RunConfig(mode=mode, out=out)
    for key, raw in merged.items():
        if key not in _PARSERS:
            raise ConfigError(f"{key}: unknown configuration key")
        cfg = replace(cfg, **{key: _PARSERS[key](key, raw)})
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig) -> None:
    if cfg.tau_max <= 0:
        raise ConfigError(f"tau_max: must be positive, got {cfg.tau_max:g}")
    if cfg.points < 2:
        raise ConfigError(f"points: must be >= 2, got {cfg.points}")
    if cfg.tau < 0:
        raise ConfigError(f"tau: must be non-negative, got {cfg.tau:g}")
    if cfg.tol <= 0:
        raise ConfigError(f"tol: must be positive, got {cfg.tol:g}")
    if cfg.axis2 is not None and cfg.axis1 is None:
        raise ConfigError("axis2: set axis1 before axis2")
    cfg.system()  # surfaces an invalid squeezing kind as a config error


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _write_csv(path: str, header: list[str], rows: list[list[float]]) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")


def run_evolve(cfg: RunConfig) -> int:
    system = cfg.system()
    init = cfg.initial_state()
    taus = np.linspace(0.0, cfg.tau_max, cfg.points)
    resolution = cfg.resolution if cfg.resolution > 0 else None
    records = evaluate_trajectory(system, init, taus, resolution=resolution)

    rows = []
    for rec in records:
        a = rec.moments.a
        if cfg.lab_frame:
            a *= np.exp(-1j * system.omega_c * rec.tau)
        rows.append(
            [
                rec.tau,
                a.real,
                a.imag,
                np.sqrt(2.0) * a.real,
                np.sqrt(2.0) * a.imag,
                rec.report.nu_op,
                rec.report.nu_me,
                rec.report.delta,
                rec.report.delta_min,
                rec.report.delta_max,
            ]
        )
    _write_csv(
        cfg.out,
        ["tau", "re_a", "im_a", "x1", "p1", "nu_op", "nu_me", "delta", "delta_min", "delta_max"],
        rows,
    )
    return _EXIT_OK


def _sweep_grid(cfg: RunConfig) -> tuple[list[str], list[tuple[float, ...]]]:
    if cfg.axis1 is None:
        raise ConfigError("axis1: sweep mode needs at least one axis")
    axes = [cfg.axis1] + ([cfg.axis2] if cfg.axis2 is not None else [])
    names = [ax.name for ax in axes]
    if len(set(names)) != len(names):
        raise ConfigError("axis2: sweep axes must differ")
    if len(axes) == 1:
        combos = [(v,) for v in axes[0].values()]
    else:
        combos = [(v1, v2) for v1 in axes[0].values() for v2 in axes[1].values()]
    return names, combos


def run_sweep(cfg: RunConfig) -> int:
    names, combos = _sweep_grid(cfg)
    init = cfg.initial_state()

    def eval_combo(combo: tuple[float, ...]) -> list[float]:
        point = dict(zip(names, combo))
        local = replace(
            cfg,
            g0=point.get("g0", cfg.g0),
            d2=point.get("d2", cfg.d2),
            tau=point.get("tau", cfg.tau),
        )
        rec = evaluate_point(
            local.system(),
            init,
            local.tau,
            resolution=cfg.resolution if cfg.resolution > 0 else None,
        )
        return list(combo) + [rec.report.delta, rec.report.delta_min, rec.report.delta_max]

    workers = cfg.workers if cfg.workers > 0 else min(8, len(combos))
    # points are independent and pure; gather keeps the row-major order
    with ThreadPoolExecutor(max_workers=max(workers, 1)) as pool:
        rows = list(pool.map(eval_combo, combos))

    _write_csv(cfg.out, names + ["delta", "delta_min", "delta_max"], rows)
    return _EXIT_OK


def run_mathieu(cfg: RunConfig) -> int:
    if cfg.squeezing != "modulated":
        raise ConfigError("squeezing: mathieu mode needs the modulated profile")
    a, q = mathieu_params(cfg.d2, cfg.omega0)
    sol = solve_quadratic(
        ModulatedSqueezing(cfg.d2, cfg.omega0),
        cfg.tau_max,
        cfg.resolution if cfg.resolution > 0 else None,
    )
    taus = np.linspace(0.0, cfg.tau_max, cfg.points)
    cos_ts, sin_ts = two_scale_solution(cfg.d2, taus)
    rows = []
    for i, t in enumerate(taus):
        xi = sol.mode(t)
        rows.append([t, xi.real, -xi.imag, cos_ts[i], sin_ts[i]])
    _write_csv(
        cfg.out,
        ["tau", "cos_sol", "sin_sol", "cos_two_scale", "sin_two_scale"],
        rows,
    )
    dev_cos = max(abs(r[1] - r[3]) for r in rows)
    dev_sin = max(abs(r[2] - r[4]) for r in rows)
    print(
        f"mathieu: a={_fmt(a)} q={_fmt(q)} "
        f"max|cos dev|={dev_cos:.3e} max|sin dev|={dev_sin:.3e}"
    )
    return _EXIT_OK


def _check_oracle_envelope(cfg: RunConfig, n_c: int, n_m: int) -> None:
    problems = []
    if abs(cfg.g0) > _ORACLE_LIMITS["g0"]:
        problems.append(f"g0={cfg.g0:g} exceeds {_ORACLE_LIMITS['g0']:g}")
    d2_cap = (
        _ORACLE_LIMITS["d2_constant"] if cfg.squeezing == "constant"
        else _ORACLE_LIMITS["d2_modulated"]
    )
    if abs(cfg.d2) > d2_cap:
        problems.append(f"d2={cfg.d2:g} exceeds {d2_cap:g} for {cfg.squeezing} squeezing")
    if abs(cfg.mu_c) > _ORACLE_LIMITS["mu"] or abs(cfg.mu_m) > _ORACLE_LIMITS["mu"]:
        problems.append(f"coherent amplitudes must stay within {_ORACLE_LIMITS['mu']:g}")
    if cfg.tau > _ORACLE_LIMITS["tau"]:
        problems.append(f"tau={cfg.tau:g} exceeds {_ORACLE_LIMITS['tau']:g}")
    if n_c * n_m > _ORACLE_LIMITS["dim"]:
        problems.append(f"truncated dimension {n_c * n_m} exceeds {_ORACLE_LIMITS['dim']}")
    if problems:
        raise ConvergenceError(
            "oracle-check refused, parameters outside the certified envelope: "
            + "; ".join(problems)
        )


_MOMENT_NAMES = ("a", "b", "a2", "b2", "na", "nb", "ab", "ab_dag")


def run_oracle_check(cfg: RunConfig) -> int:
    system = cfg.system()
    init = cfg.initial_state()
    rec = evaluate_point(system, init, cfg.tau)

    n_c, n_m = fock.default_cutoffs(init, rec.coeffs)
    if cfg.n_c > 0:
        n_c = cfg.n_c
    if cfg.n_m > 0:
        n_m = cfg.n_m
    _check_oracle_envelope(cfg, n_c, n_m)

    dt = cfg.dt if cfg.dt > 0 else None
    attempts = 0
    while True:
        try:
            psi0 = fock.product_coherent(init, n_c, n_m)
            final = fock.evolve(psi0, system, cfg.tau, dt)
            break
        except CutoffInsufficientError:
            attempts += 1
            # fixed cutoffs are an explicit user request; do not override them
            if attempts > 2 or cfg.n_c > 0 or cfg.n_m > 0:
                raise
            n_c, n_m = 2 * n_c, 2 * n_m
            _check_oracle_envelope(cfg, n_c, n_m)
    measured = fock.measure_moments(final, system.omega_c, cfg.tau)

    rows = []
    all_ok = True
    for name in _MOMENT_NAMES:
        ana = complex(getattr(rec.moments, name))
        orc = complex(getattr(measured, name))
        abs_err = abs(ana - orc)
        rel_err = abs_err / max(abs(ana), 1e-300)
        ok = abs_err <= max(cfg.tol * abs(ana), 1e-6)
        all_ok &= ok
        print(f"oracle-check {name}: {'PASS' if ok else 'FAIL'} rel_err={rel_err:.3e}")
        rows.append([ana.real, ana.imag, orc.real, orc.imag, abs_err, rel_err])

    header = ["analytic_re", "analytic_im", "oracle_re", "oracle_im", "abs_err", "rel_err"]
    lines = ["moment," + ",".join(header)]
    for name, row in zip(_MOMENT_NAMES, rows):
        lines.append(name + "," + ",".join(_fmt(v) for v in row))
    with open(cfg.out, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")
    return _EXIT_OK if all_ok else _EXIT_MISMATCH


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="optomech",
        description="Nonlinear optomechanical evolution with mechanical squeezing",
    )
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode in ("evolve", "sweep", "oracle-check", "mathieu"):
        p = sub.add_parser(mode)
        p.add_argument("--config", default=None, help="key = value configuration file")
        p.add_argument("--out", required=True, help="output CSV path")
        for key in _PARSERS:
            p.add_argument(f"--{key}", default=None, metavar="VALUE")
    return parser


_RUNNERS = {
    "evolve": run_evolve,
    "sweep": run_sweep,
    "oracle-check": run_oracle_check,
    "mathieu": run_mathieu,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        file_values = parse_config_file(args.config) if args.config else {}
        overrides = {key: getattr(args, key.replace("-", "_")) for key in _PARSERS}
        cfg = build_config(args.mode, file_values, overrides, args.out)
        return _RUNNERS[args.mode](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_CONFIG
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_CONFIG
    except OptomechError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_REGIME


if __name__ == "__main__":
    raise SystemExit(main())
