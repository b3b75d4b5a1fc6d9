"""Command-line interface.

    pdmfisher table     [--v0 V] [--a A ...] [--n N ...] [--format table|csv|json]
    pdmfisher spectrum  [--v0 V] [--n N ...] [--grid M]
    pdmfisher profile   [--v0 V] [--a A] [--n N] [--samples K]
    pdmfisher fisher    [--method closed|quadrature] ...

Exit codes: 0 success, 1 computation failure or tolerance miss, 2 invalid
arguments.  A ``--config`` file holds ``key = value`` lines with the same
keys as the long flags; flags given on the command line win.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import dataclass, replace

import numpy as np

from .measures import TABLE_COLUMNS, fisher_closed_form, fisher_quadrature, report
from .model import energy, params_from_v0, wavefunction_x
from .oracle import solve_spectrum
from .quadrature import QuadratureError

log = logging.getLogger("pdmfisher")

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


class ComputationFailure(Exception):
    """A computation finished but missed its tolerance."""


@dataclass(frozen=True)
class RunConfig:
    v0_dimensionless: float = 1.0 / 32.0
    a_values: tuple[float, ...] | None = None
    m0: float = 1.0
    levels: tuple[int, ...] | None = None
    format: str = "table"
    tolerance: float | None = None
    grid_points: int = 4096
    samples: int = 200
    method: str = "quadrature"

    def widths(self, default=(1.0, 2.0, 4.0)) -> tuple[float, ...]:
        return self.a_values if self.a_values is not None else default


_CONFIG_KEYS = {
    "v0": "v0_dimensionless",
    "a": "a_values",
    "m0": "m0",
    "n": "levels",
    "format": "format",
    "tol": "tolerance",
    "grid": "grid_points",
    "samples": "samples",
    "method": "method",
}


def _float_list(tokens) -> tuple[float, ...]:
    if isinstance(tokens, str):
        tokens = [tokens]
    return tuple(float(part) for tok in tokens for part in str(tok).replace(",", " ").split())


def _int_list(tokens) -> tuple[int, ...]:
    values = _float_list(tokens)
    if any(v != int(v) for v in values):
        raise ValueError("levels must be integers")
    return tuple(int(v) for v in values)


_CONVERTERS = {
    "v0_dimensionless": float,
    "a_values": _float_list,
    "m0": float,
    "levels": _int_list,
    "format": str,
    "tolerance": float,
    "grid_points": int,
    "samples": int,
    "method": str,
}


def read_config(path: str) -> dict:
    """Parse a ``key = value`` file into RunConfig field values."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.lstrip("-")
            if key not in _CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            name = _CONFIG_KEYS[key]
            values[name] = _CONVERTERS[name](value)
    return values


def _validate(cfg: RunConfig) -> None:
    if not 0.0 <= cfg.v0_dimensionless <= 0.25:
        raise ValueError("--v0 must lie in [0, 1/4] (bound-state condition)")
    if cfg.a_values is not None and (not cfg.a_values or any(not a > 0 for a in cfg.a_values)):
        raise ValueError("--a values must be positive")
    if not cfg.m0 > 0:
        raise ValueError("--m0 must be positive")
    if cfg.levels is not None and (not cfg.levels or any(n < 0 for n in cfg.levels)):
        raise ValueError("--n values must be non-negative integers")
    if cfg.format not in ("table", "csv", "json"):
        raise ValueError("--format must be table, csv or json")
    if cfg.tolerance is not None and not cfg.tolerance > 0:
        raise ValueError("--tol must be positive")
    if cfg.grid_points < 64:
        raise ValueError("--grid must be at least 64")
    if cfg.samples < 2:
        raise ValueError("--samples must be at least 2")
    if cfg.method not in ("closed", "quadrature"):
        raise ValueError("--method must be closed or quadrature")


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{value:.6g}"


def _json_value(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def _render(rows: list[dict], columns, fmt: str, meta: list[str] = (),
            unwrap_single: bool = False) -> str:
    """rows: dicts keyed by field name; columns: (field, header) pairs.

    With ``unwrap_single`` a one-row JSON result is written as a bare object.
    """
    if fmt == "json":
        payload = [{k: _json_value(v) for k, v in row.items()} for row in rows]
        if unwrap_single and len(payload) == 1:
            payload = payload[0]
        return json.dumps(payload, indent=2, allow_nan=False) + "\n"
    buf = io.StringIO()
    if fmt == "csv":
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([header for _, header in columns])
        for row in rows:
            writer.writerow([repr(row[key]) if isinstance(row[key], float) else row[key]
                             for key, _ in columns])
        return buf.getvalue()
    for line in meta:
        buf.write(f"# {line}\n")
    cells = [[header for _, header in columns]]
    cells += [[_fmt(row[key]) for key, _ in columns] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(columns))]
    for r in cells:
        buf.write("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n")
    return buf.getvalue()


def _meta(cfg: RunConfig) -> list[str]:
    p = params_from_v0(cfg.v0_dimensionless, 1.0, cfg.m0)
    lines = [f"calV0={cfg.v0_dimensionless:.12g} mu={p.mu:.12g} m0={cfg.m0:g}"]
    for a in cfg.widths():
        lines.append(f"a={a:g} V0={params_from_v0(cfg.v0_dimensionless, a, cfg.m0).V0:.12g}")
    return lines


def cmd_table(cfg: RunConfig) -> tuple[str, list[str]]:
    """One Table-1 row per (n, a), sorted by n then a."""
    tol = cfg.tolerance or 1e-11
    levels = cfg.levels if cfg.levels is not None else (0, 1, 2)
    rows, notes = [], []
    if cfg.v0_dimensionless == 0.25:
        notes.append("closed-form unavailable (mu=1/2): Fisher information and <p^2> diverge")
    for n in sorted(levels):
        for a in sorted(cfg.widths()):
            params = params_from_v0(cfg.v0_dimensionless, a, cfg.m0)
            rep = report(params, n, tol)
            bad = rep.violations()
            if bad:
                raise ComputationFailure(f"n={n}, a={a:g}: " + "; ".join(bad))
            row = rep.to_dict()
            row["V0"] = params.V0
            row["m0"] = params.m0
            rows.append(row)
    return _render(rows, TABLE_COLUMNS, cfg.format, _meta(cfg), unwrap_single=True), notes


_SPECTRUM_COLUMNS = (
    ("n", "n"),
    ("eps_analytic", "eps_analytic"),
    ("eps_oracle", "eps_oracle"),
    ("richardson_error", "richardson_error"),
    ("rel_diff", "rel_diff"),
)


def cmd_spectrum(cfg: RunConfig) -> tuple[str, list[str]]:
    """Analytic eps_n against the Richardson-extrapolated finite-difference oracle."""
    tol = cfg.tolerance or 1e-6
    levels = sorted(cfg.levels if cfg.levels is not None else (0, 1, 2, 3))
    est = solve_spectrum(cfg.v0_dimensionless, cfg.grid_points, max(levels) + 1)
    params = params_from_v0(cfg.v0_dimensionless, 1.0, cfg.m0)
    rows = []
    for n in levels:
        exact = energy(params, n).eps
        rows.append({
            "n": n,
            "eps_analytic": exact,
            "eps_oracle": float(est.eigenvalues[n]),
            "richardson_error": float(est.richardson_error[n]),
            "rel_diff": abs(float(est.eigenvalues[n]) - exact) / exact,
        })
    out = _render(rows, _SPECTRUM_COLUMNS, cfg.format,
                  [f"calV0={cfg.v0_dimensionless:.12g} grid={cfg.grid_points}/{cfg.grid_points // 2}"])
    worst = max(r["rel_diff"] for r in rows)
    if worst > tol:
        raise ComputationFailure(f"oracle disagrees with the analytic spectrum: {worst:.3g} > {tol:g}")
    return out, []


_PROFILE_COLUMNS = (("x", "x"), ("psi", "psi"), ("rho", "rho"))


def profile_grid(params, n: int, samples: int) -> np.ndarray:
    """Log-spaced x grid reaching the point where the density falls below 1e-12 of its peak."""
    probe = np.geomspace(1e-4, 64.0, 4000) / params.a
    dens = wavefunction_x(params, n, probe) ** 2
    peak = dens.max()
    beyond = np.nonzero((dens < 1e-12 * peak) & (probe > probe[np.argmax(dens)]))[0]
    x_max = probe[beyond[0]] if beyond.size else probe[-1]
    return np.geomspace(1e-4 / params.a, x_max, samples)


def cmd_profile(cfg: RunConfig) -> tuple[str, list[str]]:
    levels = cfg.levels if cfg.levels is not None else (0,)
    widths = cfg.widths(default=(1.0,))
    if len(levels) != 1 or len(widths) != 1:
        raise ValueError("profile takes exactly one --n and one --a")
    a = widths[0]
    params = params_from_v0(cfg.v0_dimensionless, a, cfg.m0)
    x = profile_grid(params, levels[0], cfg.samples)
    psi = wavefunction_x(params, levels[0], x)
    rows = [{"x": float(xi), "psi": float(p), "rho": float(p * p)} for xi, p in zip(x, psi)]
    return _render(rows, _PROFILE_COLUMNS, cfg.format), []


_FISHER_COLUMNS = (("n", "n"), ("a", "a"), ("method", "method"), ("fisher", "I_F"))


def cmd_fisher(cfg: RunConfig) -> tuple[str, list[str]]:
    levels = cfg.levels if cfg.levels is not None else (0, 1, 2)
    func = fisher_closed_form if cfg.method == "closed" else fisher_quadrature
    rows = []
    for n in sorted(levels):
        for a in sorted(cfg.widths()):
            params = params_from_v0(cfg.v0_dimensionless, a, cfg.m0)
            rows.append({"n": n, "a": a, "method": cfg.method, "fisher": func(params, n)})
    return _render(rows, _FISHER_COLUMNS, cfg.format), []


_HELP = {
    "table": "reproduce the uncertainty / Fisher table",
    "spectrum": "compare the analytic spectrum with the finite-difference oracle",
    "profile": "sample psi_n(x) and rho_n(x) for plotting",
    "fisher": "Fisher information by closed form or quadrature",
}

COMMANDS = {
    "table": cmd_table,
    "spectrum": cmd_spectrum,
    "profile": cmd_profile,
    "fisher": cmd_fisher,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pdmfisher",
        description="Fisher information and uncertainty products of the "
                    "solitonic-mass csch^2 bound states.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, func in COMMANDS.items():
        p = sub.add_parser(name, help=_HELP[name])
        p.add_argument("--v0", type=float, help="dimensionless depth delta*V0 (default 1/32)")
        p.add_argument("--a", nargs="+", help="mass-profile widths (default 1 2 4)")
        p.add_argument("--n", nargs="+", help="level indices")
        p.add_argument("--m0", type=float, help="mass scale (default 1)")
        p.add_argument("--format", choices=["table", "csv", "json"])
        p.add_argument("--tol", type=float, help="integration / agreement tolerance")
        p.add_argument("--grid", type=int, help="finite-difference grid points (default 4096)")
        p.add_argument("--samples", type=int, help="profile sample count (default 200)")
        p.add_argument("--method", choices=["closed", "quadrature"])
        p.add_argument("--config", help="key = value file; flags override it")
    return parser


def _config_from_args(args) -> RunConfig:
    values = read_config(args.config) if args.config else {}
    flags = {
        "v0_dimensionless": args.v0,
        "a_values": _float_list(args.a) if args.a else None,
        "m0": args.m0,
        "levels": _int_list(args.n) if args.n else None,
        "format": args.format,
        "tolerance": args.tol,
        "grid_points": args.grid,
        "samples": args.samples,
        "method": args.method,
    }
    values.update({k: v for k, v in flags.items() if v is not None})
    cfg = replace(RunConfig(), **values)
    _validate(cfg)
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        cfg = _config_from_args(args)
    except (ValueError, OSError) as exc:
        parser.print_usage(sys.stderr)
        print(f"pdmfisher: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    log.debug("running %s with %s", args.command, cfg)
    try:
        text, notes = COMMANDS[args.command](cfg)
    except (ComputationFailure, QuadratureError, ArithmeticError, ValueError, RuntimeError) as exc:
        print(f"pdmfisher: {args.command} failed: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    sys.stdout.write(text)
    for note in notes:
        print(f"note: {note}", file=sys.stderr)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
