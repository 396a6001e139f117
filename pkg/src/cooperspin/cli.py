"""Command-line front end.

    cooperspin coherence   v^2 and u v against eps_k / eps_F
    cooperspin sweep       g, f, F~, p, C and the PPT eigenvalue against k_F r
    cooperspin state       the 4x4 spin state at one separation
    cooperspin length      entanglement length and the scale comparison

Parameters come from flags, then a flat ``key = value`` config file, then
built-in defaults (gap 1 meV, Debye energy 100 meV, Fermi energy 1 eV).
Physical energies are converted to ratios here and nowhere else.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .correlators import sample
from .entanglement import (
    concurrence_werner,
    entanglement_length,
    ppt_min_eigenvalue,
    werner_from_gf,
    werner_matrix,
)
from .errors import ConfigError, CooperSpinError, NonConvergence
from .model import MaterialParams, uv, v2
from .quadrature import QuadratureSettings

DEFAULTS = {
    "gap_mev": 1.0,
    "debye_mev": 100.0,
    "fermi_ev": 1.0,
    "x_start": 0.01,
    "x_end": 20.0,
    "x_step": 0.01,
    "x": 0.0,
    "eps_step": 1e-4,
    "format": "csv",
    "rel_tol": 1e-9,
    "abs_tol": 1e-12,
}

_FLOAT_KEYS = {
    "delta", "debye_w", "gap_mev", "debye_mev", "fermi_ev",
    "x_start", "x_end", "x_step", "x", "eps_step", "rel_tol", "abs_tol",
}
_KNOWN_KEYS = _FLOAT_KEYS | {"format"}

SWEEP_COLUMNS = ("x", "g", "f", "f_tilde", "p", "concurrence", "ppt_min_eig")
COHERENCE_COLUMNS = ("eps_over_ef", "v2", "uv")


@dataclass
class RunConfig:
    params: MaterialParams = field(default_factory=MaterialParams)
    x_start: float = 0.01
    x_end: float = 20.0
    x_step: float = 0.01
    x: float = 0.0
    eps_step: float = 1e-4
    output_format: str = "csv"
    settings: QuadratureSettings = field(default_factory=QuadratureSettings)

    def grid(self) -> np.ndarray:
        if self.x_start < 0 or not self.x_step > 0 or not self.x_end > self.x_start:
            raise ConfigError(
                f"invalid grid: need x_start >= 0, x_step > 0, x_end > x_start "
                f"(got {self.x_start}, {self.x_end}, {self.x_step})"
            )
        n = int(math.floor((self.x_end - self.x_start) / self.x_step + 1e-9)) + 1
        return self.x_start + self.x_step * np.arange(n)


def read_config_file(path) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment, dashes equal underscores."""
    out = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_").lower()
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = _coerce(key, value, f"{path}:{lineno}")
    return out


def _coerce(key, value, where):
    if key == "format":
        if value not in ("csv", "json"):
            raise ConfigError(f"{where}: format must be csv or json, got {value!r}")
        return value
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"{where}: {key} must be a number, got {value!r}") from None


def build_config(flags: dict, file_values: dict | None = None) -> RunConfig:
    """Merge flag values over config-file values over defaults."""
    layers = [flags, file_values or {}, DEFAULTS]

    def lookup(key):
        for level, layer in enumerate(layers):
            if layer.get(key) is not None:
                return layer[key], level
        return None, len(layers)

    def ratio(ratio_key, energy_key):
        value, level = lookup(ratio_key)
        energy, e_level = lookup(energy_key)
        fermi, f_level = lookup("fermi_ev")
        if value is not None and level <= min(e_level, f_level):
            return value
        return energy / (1000.0 * fermi)

    def get(key):
        return lookup(key)[0]

    try:
        params = MaterialParams(delta=ratio("delta", "gap_mev"), w=ratio("debye_w", "debye_mev"))
        settings = QuadratureSettings(rel_tol=get("rel_tol"), abs_tol=get("abs_tol"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    cfg = RunConfig(
        params=params,
        x_start=get("x_start"),
        x_end=get("x_end"),
        x_step=get("x_step"),
        x=get("x"),
        eps_step=get("eps_step"),
        output_format=get("format"),
        settings=settings,
    )
    if cfg.x < 0:
        raise ConfigError(f"x must be >= 0, got {cfg.x}")
    if not cfg.eps_step > 0:
        raise ConfigError(f"eps_step must be > 0, got {cfg.eps_step}")
    return cfg


def _fmt(v) -> str:
    return repr(float(v))


def _emit_table(columns, rows, fmt, out):
    if fmt == "json":
        json.dump([dict(zip(columns, map(float, r))) for r in rows], out, indent=1)
        out.write("\n")
        return
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([_fmt(v) for v in r])


def coherence_rows(cfg: RunConfig) -> list[tuple]:
    n = int(math.floor(2.0 / cfg.eps_step + 1e-9)) + 1
    eps = cfg.eps_step * np.arange(n)
    kappa = np.sqrt(eps)
    return list(zip(eps, v2(kappa, cfg.params), uv(kappa, cfg.params)))


def sweep_rows(cfg: RunConfig) -> list[tuple]:
    rows = []
    for x in cfg.grid():
        try:
            s = sample(x, cfg.params, cfg.settings)
        except NonConvergence as exc:
            raise NonConvergence(f"at x={x!r}: {exc}", exc.value, exc.err_est, x) from exc
        rho, state = werner_from_gf(s.g, s.f)
        rows.append((s.x, s.g, s.f, s.f_tilde, state.p, concurrence_werner(state.p), ppt_min_eigenvalue(rho)))
    return rows


def state_report(cfg: RunConfig) -> dict:
    s = sample(cfg.x, cfg.params, cfg.settings)
    rho, state = werner_from_gf(s.g, s.f)
    explicit = rho.m.real
    from_p = werner_matrix(state.p)
    return {
        "x": s.x,
        "g": s.g,
        "f": s.f,
        "p": state.p,
        "concurrence": concurrence_werner(state.p),
        "ppt_min_eig": ppt_min_eigenvalue(rho),
        "rho": explicit.tolist(),
        "rho_werner": from_p.tolist(),
        "max_abs_difference": float(np.max(np.abs(explicit - from_p))),
    }


def length_report(cfg: RunConfig) -> dict:
    res = entanglement_length(cfg.params, cfg.settings)
    report = {
        "delta": cfg.params.delta,
        "w": cfg.params.w,
        "x_c": res.x_c,
        "rc_over_lambda_f": res.rc_over_lambda_f,
        "kf_xi0": res.kf_xi0,
        "xi0_over_rc": res.xi0_over_rc,
        "checked_up_to_x": res.x_max,
        "max_p_beyond": res.max_p_beyond,
        "reentrant": res.reentrant,
        "entangled_region_much_smaller_than_coherence_length": bool(res.x_c < 0.01 * res.kf_xi0),
    }
    return report


def _emit_mapping(report: dict, fmt, out):
    if fmt == "json":
        json.dump(report, out, indent=1)
        out.write("\n")
        return
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(("key", "value"))
    for key, value in report.items():
        if isinstance(value, list):
            for i, row in enumerate(value):
                for j, v in enumerate(row):
                    writer.writerow((f"{key}[{i}][{j}]", _fmt(v)))
        elif isinstance(value, bool):
            writer.writerow((key, str(value).lower()))
        else:
            writer.writerow((key, _fmt(value)))


def cmd_coherence(cfg: RunConfig, out=None):
    _emit_table(COHERENCE_COLUMNS, coherence_rows(cfg), cfg.output_format, out or sys.stdout)


def cmd_sweep(cfg: RunConfig, out=None):
    _emit_table(SWEEP_COLUMNS, sweep_rows(cfg), cfg.output_format, out or sys.stdout)


def cmd_state(cfg: RunConfig, out=None):
    _emit_mapping(state_report(cfg), cfg.output_format, out or sys.stdout)


def cmd_length(cfg: RunConfig, out=None):
    _emit_mapping(length_report(cfg), cfg.output_format, out or sys.stdout)


COMMANDS = {
    "coherence": cmd_coherence,
    "sweep": cmd_sweep,
    "state": cmd_state,
    "length": cmd_length,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("model")
    g.add_argument("--delta", type=float, help="gap / Fermi energy")
    g.add_argument("--debye-w", type=float, help="Debye energy / Fermi energy")
    g.add_argument("--gap-mev", type=float, help="gap in meV (default 1)")
    g.add_argument("--debye-mev", type=float, help="Debye energy in meV (default 100)")
    g.add_argument("--fermi-ev", type=float, help="Fermi energy in eV (default 1)")
    g = common.add_argument_group("grid")
    g.add_argument("--x-start", type=float, help="first k_F r (default 0.01)")
    g.add_argument("--x-end", type=float, help="last k_F r (default 20)")
    g.add_argument("--x-step", type=float, help="k_F r spacing (default 0.01)")
    g.add_argument("--x", type=float, help="k_F r for the state command (default 0)")
    g.add_argument("--eps-step", type=float, help="eps_k/eps_F spacing for coherence (default 1e-4)")
    g = common.add_argument_group("output and numerics")
    g.add_argument("--format", choices=("csv", "json"))
    g.add_argument("--config", type=Path, help="flat key = value file mirroring the flags")
    g.add_argument("--rel-tol", type=float, help="quadrature relative tolerance (default 1e-9)")
    g.add_argument("--abs-tol", type=float, help="quadrature absolute tolerance (default 1e-12)")

    parser = argparse.ArgumentParser(prog="cooperspin", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("coherence", parents=[common], help="coherence factors against eps_k/eps_F")
    sub.add_parser("sweep", parents=[common], help="correlators and entanglement against k_F r")
    sub.add_parser("state", parents=[common], help="two-spin density matrix at one separation")
    sub.add_parser("length", parents=[common], help="entanglement length report")
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    buf = io.StringIO()
    status = 0
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            file_values = read_config_file(args.config) if args.config else {}
            COMMANDS[args.command](build_config(flags, file_values), buf)
        except CooperSpinError as exc:
            print(f"cooperspin {args.command}: error: {exc}", file=stderr)
            status = 1
    for w in caught:
        print(f"cooperspin {args.command}: warning: {w.message}", file=stderr)
    if status == 0:
        stdout.write(buf.getvalue())
    return status


if __name__ == "__main__":
    sys.exit(main())
