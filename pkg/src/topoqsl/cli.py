"""Command-line front end: single-point bound computation and axis scans.

Two subcommands:

* ``compute`` prints one key=value line per requested bath with the
  unified/ML/MT bound times and diagnostics.
* ``scan`` sweeps one axis (``s``, ``tau`` or ``b``) and writes a CSV
  table (and optionally a self-contained SVG line chart).

All times are dimensionless in cutoff units (gamma0 = 1 by default);
the initial state is the maximally coherent one.  Flags override
config-file values, which override built-in defaults.  Exit codes:
0 success, 2 bad usage or parameters, 3 output I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, fields

from .bath import BathKind, BathParams, FermiGammaConvention
from .qsl import QslResult, ScanAxis, ScanTable, Window, qsl_unified, scan
from .qubit import MAXIMALLY_COHERENT

__all__ = ["CSV_HEADER", "RunConfig", "load_config", "main"]

CSV_HEADER = (
    "axis,value,bath,tau_qsl_unified,tau_qsl_ml,tau_qsl_mt,"
    "alpha_tau,alpha_target,f_rel_purity"
)

_BATH_CHOICES = ("fermionic", "bosonic", "both")
_AXIS_CHOICES = ("s", "tau", "b")
_FORMAT_CHOICES = ("csv", "svg", "both")
_CONVENTION_CHOICES = ("half", "full")


@dataclass
class RunConfig:
    bath: str = "both"
    s: float = 1.0
    b: float = 0.4
    tau: float = 1.0
    tau_d: float = 1.0
    gamma0: float = 1.0
    nsc: float = 1.0
    epsilon: float = 1.0
    gamma_convention: str = "half"
    axis: str | None = None
    lo: float = 0.0
    hi: float = 1.0
    points: int = 100
    out: str = "scan.csv"
    format: str = "csv"


_CONFIG_KEYS = {f.name for f in fields(RunConfig)}
_FLOAT_KEYS = {"s", "b", "tau", "tau_d", "gamma0", "nsc", "epsilon", "lo", "hi"}
_CHOICE_KEYS = {
    "bath": _BATH_CHOICES,
    "gamma_convention": _CONVENTION_CHOICES,
    "axis": _AXIS_CHOICES,
    "format": _FORMAT_CHOICES,
}


class ConfigError(ValueError):
    pass


def load_config(path: str) -> dict[str, object]:
    """Parse a flat ``key = value`` file ('#' comments, blank lines ok)."""
    values: dict[str, object] = {}
    try:
        fh = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    with fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
            key, _, text = line.partition("=")
            key = key.strip().replace("-", "_")
            text = text.strip()
            if key not in _CONFIG_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                values[key] = _convert(key, text)
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: {exc}") from None
    return values


def _convert(key: str, text: str) -> object:
    if key in _FLOAT_KEYS:
        return float(text)
    if key == "points":
        return int(text)
    if key in _CHOICE_KEYS:
        if text not in _CHOICE_KEYS[key]:
            raise ValueError(f"{key} must be one of {', '.join(_CHOICE_KEYS[key])}")
        return text
    return text


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topoqsl",
        description="Quantum-speed-limit times for a topological qubit dephasing "
        "in Ohmic-like fermionic/bosonic environments.",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--config", help="flat key = value config file")
    common.add_argument("--bath", choices=_BATH_CHOICES, help="environment kind (default both)")
    common.add_argument("--s", type=float, help="Ohmic exponent s in (0, 4]")
    common.add_argument("--b", type=float, help="magnetic coupling B >= 0")
    common.add_argument("--tau", type=float, help="initial time >= 0")
    common.add_argument("--tau-d", type=float, dest="tau_d", help="driving time > 0")
    common.add_argument("--gamma0", type=float, help="cutoff frequency > 0 (time unit)")
    common.add_argument("--nsc", type=float, help="bosonic degrees-of-freedom count")
    common.add_argument("--epsilon", type=float, help="bosonic UV length cutoff")
    common.add_argument(
        "--gamma-convention",
        choices=_CONVENTION_CHOICES,
        dest="gamma_convention",
        help="Gamma argument in the fermionic coefficient: (s+1)/2 or s+1",
    )

    sub.add_parser(
        "compute",
        parents=[common],
        help="bound times at a single parameter point (one line per bath)",
    )

    scan_parser = sub.add_parser(
        "scan",
        parents=[common],
        help="sweep one axis and write CSV (and optionally SVG)",
    )
    scan_parser.add_argument("--axis", choices=_AXIS_CHOICES, help="swept parameter")
    scan_parser.add_argument("--lo", type=float, help="axis start")
    scan_parser.add_argument("--hi", type=float, help="axis end")
    scan_parser.add_argument("--points", type=int, help="number of axis points (>= 2)")
    scan_parser.add_argument("--out", help="output path (default scan.csv)")
    scan_parser.add_argument("--format", choices=_FORMAT_CHOICES, help="csv, svg or both")
    return parser


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if args.config is not None:
        for key, value in load_config(args.config).items():
            setattr(cfg, key, value)
    for key in _CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            setattr(cfg, key, value)
    return cfg


def _bath_kinds(cfg: RunConfig) -> list[BathKind]:
    if cfg.bath == "both":
        return sorted(BathKind, key=lambda k: k.value)
    return [BathKind(cfg.bath)]


def _bath_params(cfg: RunConfig, kind: BathKind) -> BathParams:
    return BathParams(
        kind=kind,
        s=cfg.s,
        b_field=cfg.b,
        gamma0=cfg.gamma0,
        n_sc=cfg.nsc,
        epsilon=cfg.epsilon,
        fermi_gamma_convention=FermiGammaConvention(cfg.gamma_convention),
    )


def _fmt(x: float) -> str:
    return format(x, ".12g")


def _result_line(kind: BathKind, cfg: RunConfig, res: QslResult) -> str:
    pairs = (
        ("bath", kind.value),
        ("s", _fmt(cfg.s)),
        ("b", _fmt(cfg.b)),
        ("tau", _fmt(cfg.tau)),
        ("tau_d", _fmt(cfg.tau_d)),
        ("gamma0", _fmt(cfg.gamma0)),
        ("tau_qsl_unified", _fmt(res.unified)),
        ("tau_qsl_ml", _fmt(res.ml)),
        ("tau_qsl_mt", _fmt(res.mt)),
        ("alpha_tau", _fmt(res.alpha_at_tau)),
        ("alpha_target", _fmt(res.alpha_at_target)),
        ("f_rel_purity", _fmt(res.f_rel_purity)),
        ("ml_den", _fmt(res.ml_denominator)),
        ("mt_den", _fmt(res.mt_denominator)),
    )
    return " ".join(f"{key}={value}" for key, value in pairs)


def _cmd_compute(cfg: RunConfig) -> int:
    if cfg.axis is not None:
        raise ValueError("compute does not take an axis; use the scan subcommand")
    window = Window(tau=cfg.tau, tau_d=cfg.tau_d)
    for kind in _bath_kinds(cfg):
        res = qsl_unified(_bath_params(cfg, kind), MAXIMALLY_COHERENT, window)
        print(_result_line(kind, cfg, res))
    return 0


def _csv_lines(table: ScanTable):
    yield CSV_HEADER
    for row in table.rows:
        head = f"{row.axis},{_fmt(row.value)},{row.kind.value}"
        if row.error is not None:
            note = row.error.replace(",", ";").replace("\n", " ")
            yield f"{head},,,,,,,error: {note}"
        else:
            r = row.result
            yield ",".join(
                (
                    head,
                    _fmt(r.unified),
                    _fmt(r.ml),
                    _fmt(r.mt),
                    _fmt(r.alpha_at_tau),
                    _fmt(r.alpha_at_target),
                    _fmt(r.f_rel_purity),
                )
            )


_SERIES_COLORS = {"fermionic": "#d62728", "bosonic": "#1f77b4"}


def _render_svg(table: ScanTable, axis_label: str) -> str:
    """Minimal self-contained line chart: unified bound vs axis value."""
    width, height = 720, 480
    left, right, top, bottom = 70, 20, 20, 50
    pw, ph = width - left - right, height - top - bottom

    series: dict[str, list[tuple[float, float]]] = {}
    for row in table.rows:
        if row.result is None:
            continue
        series.setdefault(row.kind.value, []).append((row.value, row.result.unified))

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    points = [p for pts in series.values() for p in pts]
    if not points:
        parts.append(f'<text x="{width / 2}" y="{height / 2}" text-anchor="middle">no data</text>')
        parts.append("</svg>")
        return "\n".join(parts)

    xmin = min(p[0] for p in points)
    xmax = max(p[0] for p in points)
    ymin = min(p[1] for p in points)
    ymax = max(p[1] for p in points)
    if xmax == xmin:
        xmin, xmax = xmin - 1.0, xmax + 1.0
    if ymax == ymin:
        ymin, ymax = ymin - 1.0, ymax + 1.0

    def px(x: float) -> float:
        return left + (x - xmin) / (xmax - xmin) * pw

    def py(y: float) -> float:
        return top + (ymax - y) / (ymax - ymin) * ph

    parts.append(
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" '
        'fill="none" stroke="black"/>'
    )
    for i in range(5):
        fx = xmin + (xmax - xmin) * i / 4
        fy = ymin + (ymax - ymin) * i / 4
        parts.append(
            f'<line x1="{px(fx):.2f}" y1="{top + ph}" x2="{px(fx):.2f}" '
            f'y2="{top + ph + 5}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{px(fx):.2f}" y="{top + ph + 20}" text-anchor="middle" '
            f'font-size="12">{fx:.4g}</text>'
        )
        parts.append(
            f'<line x1="{left - 5}" y1="{py(fy):.2f}" x2="{left}" '
            f'y2="{py(fy):.2f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{left - 8}" y="{py(fy):.2f}" text-anchor="end" '
            f'dominant-baseline="middle" font-size="12">{fy:.4g}</text>'
        )
    parts.append(
        f'<text x="{left + pw / 2}" y="{height - 12}" text-anchor="middle" '
        f'font-size="13">{axis_label}</text>'
    )
    parts.append(
        f'<text x="16" y="{top + ph / 2}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 16 {top + ph / 2})">tau_qsl_unified</text>'
    )
    for i, (name, pts) in enumerate(sorted(series.items())):
        color = _SERIES_COLORS.get(name, "black")
        coords = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in pts)
        parts.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        ly = top + 16 + 18 * i
        parts.append(
            f'<line x1="{left + pw - 140}" y1="{ly}" x2="{left + pw - 110}" y2="{ly}" '
            f'stroke="{color}" stroke-width="1.5"/>'
        )
        parts.append(
            f'<text x="{left + pw - 104}" y="{ly + 4}" font-size="12">{name}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


def _svg_path(out: str) -> str:
    return (out[: -len(".csv")] if out.endswith(".csv") else out) + ".svg"


def _cmd_scan(cfg: RunConfig) -> int:
    if cfg.axis is None:
        raise ValueError("scan requires --axis (s, tau or b)")
    if cfg.points < 2:
        raise ValueError("points must be >= 2")
    if not cfg.lo < cfg.hi:
        raise ValueError("axis range must satisfy lo < hi")
    template = _bath_params(cfg, _bath_kinds(cfg)[0])
    window = Window(tau=cfg.tau, tau_d=cfg.tau_d)
    table = scan(
        template,
        MAXIMALLY_COHERENT,
        window,
        ScanAxis(cfg.axis),
        cfg.lo,
        cfg.hi,
        cfg.points,
        kinds=_bath_kinds(cfg),
    )
    if cfg.format in ("csv", "both"):
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            for line in _csv_lines(table):
                fh.write(line + "\n")
    if cfg.format in ("svg", "both"):
        path = cfg.out if cfg.format == "svg" else _svg_path(cfg.out)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(_render_svg(table, cfg.axis) + "\n")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _resolve_config(args)
        if args.command == "compute":
            return _cmd_compute(cfg)
        return _cmd_scan(cfg)
    except (ConfigError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"cannot write output: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
