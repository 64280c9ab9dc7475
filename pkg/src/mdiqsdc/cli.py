"""Command-line front end: parameter sweeps, Monte Carlo runs, and
verification, with CSV and hand-emitted SVG output.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration
error, 3 insufficient statistics. CSV uses 12 significant digits, ``.``
decimals, LF line endings and a single header row, so identical
invocations produce byte-identical files.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .curves import AnalyticPoint, analytic_point, analytic_point_for_config, zero_crossing
from .infotheory import binary_entropy, shannon_entropy
from .protocol import (
    AttackModel,
    NoisePlacement,
    Protocol,
    ProtocolConfig,
    TranscriptStats,
    run,
)
from .quantum import PauliLabel
from .verification import KNOWN_FAULTS, run_all_checks

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_INSUFFICIENT_STATS = 3

CSV_HEADER = (
    "x,p,protocol,eps_z,eps_x,eps_y,H_of_E,eve_info,"
    "capacity_raw,capacity_clamped,source,seed,rounds"
)

_PROTOCOL_ORDER = (Protocol.MDI_TS, Protocol.TWO_STEP, Protocol.MDI_DL04, Protocol.DL04)
_ENCODINGS = {"x": PauliLabel.X, "y": PauliLabel.Y, "z": PauliLabel.Z}

_SVG_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class SweepRow:
    """One CSV row; ``seed`` and ``rounds`` stay empty on analytic rows."""

    x: float
    p: float
    protocol: Protocol
    eps_z: float | None
    eps_x: float | None
    eps_y: float | None
    h_of_e: float | None
    eve_info: float | None
    capacity_raw: float
    capacity_clamped: float
    source: str
    seed: int | None
    rounds: int | None

    def to_csv(self) -> str:
        cells = [
            _fmt(self.x),
            _fmt(self.p),
            self.protocol.value,
            _fmt(self.eps_z),
            _fmt(self.eps_x),
            _fmt(self.eps_y),
            _fmt(self.h_of_e),
            _fmt(self.eve_info),
            _fmt(self.capacity_raw),
            _fmt(self.capacity_clamped),
            self.source,
            "" if self.seed is None else str(self.seed),
            "" if self.rounds is None else str(self.rounds),
        ]
        return ",".join(cells)


def _fmt(value: float | None) -> str:
    if value is None:
        return ""
    return format(float(value), ".12g")


def _row_from_analytic(point: AnalyticPoint) -> SweepRow:
    return SweepRow(
        x=point.x,
        p=point.p,
        protocol=point.protocol,
        eps_z=point.eps_z,
        eps_x=point.eps_x,
        eps_y=point.eps_y,
        h_of_e=point.message_entropy,
        eve_info=point.eve_info,
        capacity_raw=point.capacity.raw,
        capacity_clamped=point.capacity.clamped,
        source="analytic",
        seed=None,
        rounds=None,
    )


def _row_from_stats(cfg: ProtocolConfig, stats: TranscriptStats) -> SweepRow:
    if cfg.protocol == Protocol.MDI_TS:
        h_of_e = shannon_entropy(stats.message_errors)
        eve_info = binary_entropy(stats.eps_z.rate) + binary_entropy(stats.eps_x.rate)
    else:
        h_of_e = binary_entropy(stats.bit_error)
        eve_info = binary_entropy(stats.qber(cfg.dl04_encoding).rate)
    return SweepRow(
        x=cfg.channel_p / 2.0,
        p=cfg.channel_p,
        protocol=cfg.protocol,
        eps_z=stats.eps_z.rate if stats.eps_z else None,
        eps_x=stats.eps_x.rate if stats.eps_x else None,
        eps_y=stats.eps_y.rate if stats.eps_y else None,
        h_of_e=h_of_e,
        eve_info=eve_info,
        capacity_raw=stats.capacity.raw,
        capacity_clamped=stats.capacity.clamped,
        source="montecarlo",
        seed=cfg.seed,
        rounds=cfg.rounds,
    )


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)


def _csv_text(rows: list[SweepRow]) -> str:
    return "\n".join([CSV_HEADER] + [row.to_csv() for row in rows]) + "\n"


def _svg_text(curves: list[tuple[str, list[float], list[float]]], title: str) -> str:
    """Hand-emitted line plot: one polyline per curve, clamped capacities.

    Every polyline carries the untransformed values in a ``data-points``
    attribute, one ``x,y`` pair per CSV grid point.
    """
    width, height = 840, 560
    left, right, top, bottom = 70, 30, 46, 64
    plot_w, plot_h = width - left - right, height - top - bottom
    x_max = max((max(xs) for _, xs, _ in curves if xs), default=1.0) or 1.0
    y_max = max((max(ys) for _, _, ys in curves if ys), default=1.0)
    y_max = max(y_max, 1.0)

    def sx(x: float) -> float:
        return left + plot_w * x / x_max

    def sy(y: float) -> float:
        return top + plot_h * (1.0 - y / y_max)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<desc>{escape(title)}</desc>',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{escape(title)}</text>',
    ]
    axis_style = 'stroke="#333" stroke-width="1"'
    parts.append(
        f'<line x1="{left}" y1="{top + plot_h}" x2="{left + plot_w}" '
        f'y2="{top + plot_h}" {axis_style}/>'
    )
    parts.append(f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + plot_h}" {axis_style}/>')
    x_ticks = 10
    for i in range(x_ticks + 1):
        x = x_max * i / x_ticks
        px = sx(x)
        parts.append(
            f'<line x1="{px:.2f}" y1="{top + plot_h}" x2="{px:.2f}" '
            f'y2="{top + plot_h + 5}" {axis_style}/>'
        )
        parts.append(
            f'<text x="{px:.2f}" y="{top + plot_h + 20}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{x:g}</text>'
        )
    y_ticks = 8
    for i in range(y_ticks + 1):
        y = y_max * i / y_ticks
        py = sy(y)
        parts.append(
            f'<line x1="{left - 5}" y1="{py:.2f}" x2="{left}" y2="{py:.2f}" {axis_style}/>'
        )
        parts.append(
            f'<text x="{left - 9}" y="{py + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{y:g}</text>'
        )
    parts.append(
        f'<text x="{left + plot_w / 2:.1f}" y="{height - 18}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">channel parameter x = p/2</text>'
    )
    parts.append(
        f'<text x="20" y="{top + plot_h / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 20 {top + plot_h / 2:.1f})">secrecy capacity (bits)</text>'
    )
    for idx, (label, xs, ys) in enumerate(curves):
        color = _SVG_COLORS[idx % len(_SVG_COLORS)]
        points = " ".join(f"{sx(x):.3f},{sy(y):.3f}" for x, y in zip(xs, ys))
        raw = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in zip(xs, ys))
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.6" '
            f'points="{points}" data-label="{escape(label)}" data-points="{raw}"/>'
        )
        legend_y = top + 16 + 18 * idx
        parts.append(
            f'<line x1="{left + plot_w - 150}" y1="{legend_y - 4}" '
            f'x2="{left + plot_w - 122}" y2="{legend_y - 4}" stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{left + plot_w - 116}" y="{legend_y}" font-family="sans-serif" '
            f'font-size="12">{escape(label)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _parse_grid(text: str) -> list[float]:
    try:
        start_s, stop_s, step_s = text.split(":")
        start, stop, step = float(start_s), float(stop_s), float(step_s)
    except ValueError as exc:
        raise UsageError(f"grid must be start:stop:step, got {text!r}") from exc
    if step <= 0 or stop < start:
        raise UsageError(f"invalid grid {text!r}")
    count = int(round((stop - start) / step))
    grid = [start + i * step for i in range(count + 1)]
    # accumulated endpoints may overshoot stop by an ulp; pin them back
    return [min(x, stop) for x in grid if x <= stop + 1e-12]


def _load_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            for lineno, line in enumerate(handle, 1):
                stripped = line.strip()
                if not stripped or stripped.startswith("#"):
                    continue
                if "=" not in stripped:
                    raise UsageError(f"{path}:{lineno}: expected key = value")
                key, _, value = stripped.partition("=")
                values[key.strip().replace("_", "-")] = value.strip()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    return values


def _merged(args: argparse.Namespace, key: str, default):
    """Flag value if given, else config-file value, else the default."""
    cli_value = getattr(args, key.replace("-", "_"))
    if cli_value is not None:
        return cli_value
    if args.config_values and key in args.config_values:
        return args.config_values[key]
    return default


def _as_float(name: str, value) -> float:
    try:
        return float(value)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"{name} must be a number, got {value!r}") from exc


def _as_int(name: str, value) -> int:
    try:
        return int(str(value), 0)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"{name} must be an integer, got {value!r}") from exc


def _add_shared_flags(sub: argparse.ArgumentParser, *, simulate: bool) -> None:
    sub.add_argument(
        "--protocol",
        help="mdi-ts, mdi-dl04, two-step, dl04, a comma list, or 'all' (sweep only)",
    )
    sub.add_argument("--p", help="depolarizing channel parameter per leg")
    sub.add_argument("--x", help="sweep position x = p/2")
    sub.add_argument("--noise", help="first-leg-only (default) or both-legs")
    sub.add_argument("--encoding", help="single-photon bit-1 operator: x, y (default), or z")
    sub.add_argument("--q", help="decoding gain Q (default 1)")
    sub.add_argument("--eta", help="gain gap eta (default 1)")
    sub.add_argument("--csv", help="CSV output path (default: stdout)")
    sub.add_argument("--config", help="key = value file; flags win on conflict")
    if simulate:
        sub.add_argument("--rounds", help="Monte Carlo rounds (default 100000)")
        sub.add_argument("--seed", help="64-bit RNG seed (default 1)")
        sub.add_argument("--check-fraction", help="per-round check probability (default 0.25)")
        sub.add_argument("--attack", help="none (default) or intercept-resend")
    else:
        sub.add_argument("--grid", help="x grid start:stop:step (default 0:0.5:0.005)")
        sub.add_argument("--svg", help="SVG output path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mdiqsdc",
        description="Secrecy-capacity sweeps and Monte Carlo runs of "
        "measurement-device-independent QSDC protocols.",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    sweep = commands.add_parser("sweep", help="analytic capacity curves over x = p/2")
    _add_shared_flags(sweep, simulate=False)
    simulate = commands.add_parser("simulate", help="Monte Carlo protocol run")
    _add_shared_flags(simulate, simulate=True)
    verify = commands.add_parser("verify", help="oracle-equivalence and invariant checks")
    verify.add_argument(
        "--inject-fault",
        choices=list(KNOWN_FAULTS),
        help="corrupt a named check to demonstrate failure reporting",
    )
    return parser


def _parse_protocols(value: str | None, *, default_all: bool) -> list[Protocol]:
    if value is None or value == "all":
        if default_all:
            return list(_PROTOCOL_ORDER)
        raise UsageError("simulate needs --protocol mdi-ts or mdi-dl04")
    out = []
    for name in str(value).split(","):
        try:
            out.append(Protocol(name.strip()))
        except ValueError as exc:
            raise UsageError(f"unknown protocol {name!r}") from exc
    return out


def _resolve_x(args: argparse.Namespace) -> float | None:
    x_flag = _merged(args, "x", None)
    p_flag = _merged(args, "p", None)
    if x_flag is not None and p_flag is not None:
        raise UsageError("--x and --p are mutually exclusive")
    if x_flag is not None:
        return _as_float("x", x_flag)
    if p_flag is not None:
        return _as_float("p", p_flag) / 2.0
    return None


def _resolve_common(args: argparse.Namespace):
    noise = str(_merged(args, "noise", NoisePlacement.FIRST_LEG_ONLY.value))
    try:
        noise_placement = NoisePlacement(noise)
    except ValueError as exc:
        raise UsageError(f"unknown noise placement {noise!r}") from exc
    encoding_name = str(_merged(args, "encoding", "y")).lower()
    if encoding_name not in _ENCODINGS:
        raise UsageError(f"unknown encoding {encoding_name!r}")
    q = _as_float("q", _merged(args, "q", 1.0))
    eta = _as_float("eta", _merged(args, "eta", 1.0))
    return noise_placement, _ENCODINGS[encoding_name], q, eta


def cmd_sweep(args: argparse.Namespace) -> int:
    protocols = _parse_protocols(_merged(args, "protocol", None), default_all=True)
    noise, encoding, q, eta = _resolve_common(args)
    single_x = _resolve_x(args)
    if single_x is not None:
        grid = [single_x]
    else:
        grid = _parse_grid(str(_merged(args, "grid", "0:0.5:0.005")))

    rows: list[SweepRow] = []
    curves: list[tuple[str, list[float], list[float]]] = []
    for protocol in protocols:
        points = [
            analytic_point(protocol, x, noise=noise, encoding=encoding, q=q, eta=eta)
            for x in grid
        ]
        rows.extend(_row_from_analytic(pt) for pt in points)
        curves.append(
            (protocol.value, [pt.x for pt in points], [pt.capacity.clamped for pt in points])
        )
        crossing = zero_crossing(protocol, noise=noise, encoding=encoding, q=q, eta=eta)
        where = "none in [0, 0.5]" if crossing is None else f"x = {crossing:.6f}"
        print(f"zero-crossing {protocol.value}: {where}", file=sys.stderr)

    _write_text(_merged(args, "csv", None), _csv_text(rows))
    svg_path = _merged(args, "svg", None)
    if svg_path is not None:
        _write_text(str(svg_path), _svg_text(curves, "secrecy capacity vs channel parameter"))
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    protocols = _parse_protocols(_merged(args, "protocol", None), default_all=False)
    if len(protocols) != 1:
        raise UsageError("simulate takes exactly one protocol")
    protocol = protocols[0]
    noise, encoding, q, eta = _resolve_common(args)
    x = _resolve_x(args)
    if x is None:
        raise UsageError("simulate needs --p or --x")
    attack_name = str(_merged(args, "attack", AttackModel.NONE.value))
    try:
        attack = AttackModel(attack_name)
    except ValueError as exc:
        raise UsageError(f"unknown attack model {attack_name!r}") from exc

    try:
        cfg = ProtocolConfig(
            protocol=protocol,
            rounds=_as_int("rounds", _merged(args, "rounds", 100_000)),
            channel_p=2.0 * x,
            seed=_as_int("seed", _merged(args, "seed", 1)),
            check_fraction=_as_float(
                "check-fraction", _merged(args, "check-fraction", 0.25)
            ),
            noise=noise,
            q_override=q if _merged(args, "q", None) is not None else None,
            eta=eta,
            dl04_encoding=encoding,
            attack=attack,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc

    stats = run(cfg)
    if not stats.estimate_available:
        print(f"insufficient statistics: {stats.unavailable_reason}", file=sys.stderr)
        return EXIT_INSUFFICIENT_STATS

    analytic_row = _row_from_analytic(analytic_point_for_config(cfg))
    mc_row = _row_from_stats(cfg, stats)
    _write_text(_merged(args, "csv", None), _csv_text([analytic_row, mc_row]))
    _print_summary(cfg, stats)
    return EXIT_OK


def _print_summary(cfg: ProtocolConfig, stats: TranscriptStats) -> None:
    lines = [
        f"protocol {cfg.protocol.value}  p={cfg.channel_p:g}  rounds={cfg.rounds}  "
        f"seed={cfg.seed}  attack={'on' if stats.attack_active else 'off'}",
        f"rounds: {stats.check_rounds} checks, {stats.message_rounds} messages, "
        f"gain Q = {stats.gain:.6f}",
    ]
    for est in (stats.eps_z, stats.eps_x, stats.eps_y):
        if est is not None:
            lines.append(
                f"eps_{est.basis.name.lower()} = {est.rate:.6f} +- {est.se:.6f} "
                f"({est.errors}/{est.samples})"
            )
    if stats.message_errors is not None:
        probs = ", ".join(f"{p:.6f}" for p in stats.message_errors.probabilities)
        lines.append(f"message error distribution = ({probs})")
    if stats.bit_error is not None:
        lines.append(f"bit error = {stats.bit_error:.6f} +- {stats.bit_error_se:.6f}")
    lines.append(
        f"capacity = {stats.capacity.raw:.6f} +- {stats.capacity_se:.6f} "
        f"(clamped {stats.capacity.clamped:.6f})"
    )
    print("\n".join(lines), file=sys.stderr)


def cmd_verify(args: argparse.Namespace) -> int:
    results = run_all_checks(inject_fault=args.inject_fault)
    failed = [r for r in results if not r.passed]
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{status} {result.name}: {result.detail}")
    if failed:
        print(f"{len(failed)} of {len(results)} checks failed", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    print(f"all {len(results)} checks passed", file=sys.stderr)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config_path = getattr(args, "config", None)
    try:
        args.config_values = _load_config_file(config_path) if config_path else {}
        if args.command == "sweep":
            return cmd_sweep(args)
        if args.command == "simulate":
            return cmd_simulate(args)
        return cmd_verify(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
