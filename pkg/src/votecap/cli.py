"""Command line driver: alpha sweeps to CSV, optionally SVG, or simulation.

Flags mirror the config file keys one to one (n, beta, egoists, mu, sigma,
s, principle, alpha, mode, replications, seed, out, format). A config file
holds plain `key = value` lines; explicit flags win over it. Parameters
are never adjusted silently: any rounding is reported on stderr.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import math
import sys
from pathlib import Path

from .chart import render_sweep_svg
from .expectations import (
    EvalMode,
    ModelParams,
    Principle,
    group_support_probability,
    _acceptance_tails,
    sweep,
)
from .simulator import SimConfig, run

CSV_COLUMNS = [
    "alpha",
    "principle",
    "mode",
    "egoist_step",
    "group_step",
    "egoist_total_s",
    "group_total_s",
    "p_gamma",
    "p_alpha",
    "p_group_support",
]

_CONFIG_KEYS = {
    "n", "beta", "egoists", "mu", "sigma", "s", "principle",
    "alpha", "mode", "replications", "seed", "out", "format",
}


def _fmt(value: float) -> str:
    return format(value, ".12g")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="votecap",
        description="Expected capital increments of egoists and group members "
        "under threshold voting, swept over the decision threshold alpha.",
    )
    parser.add_argument("--config", type=Path, metavar="FILE",
                        help="key=value file supplying any of the flags below")
    parser.add_argument("--n", type=int, help="number of participants")
    parser.add_argument("--beta", type=float, help="egoist share: egoists = 2*beta*n")
    parser.add_argument("--egoists", type=int, help="egoist count (alternative to --beta)")
    parser.add_argument("--mu", type=float, help="mean of each capital increment")
    parser.add_argument("--sigma", type=float, help="spread of each capital increment")
    parser.add_argument("--s", type=int, help="steps per experiment (scales the totals)")
    parser.add_argument("--principle", type=str,
                        help="comma list from A, B, Aprime, Adoubleprime (default A)")
    parser.add_argument("--alpha", type=str,
                        help="single value, or start:stop[:step]; step 'auto' means 1/(2n)")
    parser.add_argument("--mode", type=str,
                        choices=["exact", "approx", "auto", "simulate", "both"],
                        help="analytic mode, simulation, or both (default exact)")
    parser.add_argument("--replications", type=int, help="simulation replications (default 1000)")
    parser.add_argument("--seed", type=int, help="simulation seed (default 0)")
    parser.add_argument("--out", type=str, help="output path; '-' or absent writes CSV to stdout")
    parser.add_argument("--format", type=str, choices=["csv", "svg", "both"],
                        help="output format (default csv)")
    return parser


def _read_config_file(path: Path) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        text = path.read_text()
    except OSError as exc:
        raise ValueError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value
    return values


_KEY_TYPES = {
    "n": int, "egoists": int, "s": int, "replications": int, "seed": int,
    "beta": float, "mu": float, "sigma": float,
    "principle": str, "alpha": str, "mode": str, "out": str, "format": str,
}


def _merge_config(args: argparse.Namespace) -> argparse.Namespace:
    if args.config is None:
        return args
    file_values = _read_config_file(args.config)
    for key, text in file_values.items():
        if getattr(args, key) is None:
            try:
                setattr(args, key, _KEY_TYPES[key](text))
            except ValueError as exc:
                raise ValueError(f"config key {key}: cannot parse {text!r}") from exc
    return args


def parse_alpha_grid(text: str, n: int) -> list[float]:
    """Parse 'v', 'start:stop' or 'start:stop:step' into grid values.

    The stop is inclusive up to floating-point slack; step 'auto' (the
    default) is 1/(2n), which samples every acceptance breakpoint twice.
    """
    def to_float(piece: str) -> float:
        try:
            return float(piece)
        except ValueError:
            raise ValueError(
                f"alpha must be 'v' or 'start:stop[:step]', got {text!r}"
            ) from None

    parts = text.split(":")
    if len(parts) == 1:
        values = [to_float(parts[0])]
    elif len(parts) in (2, 3):
        start, stop = to_float(parts[0]), to_float(parts[1])
        step_text = parts[2] if len(parts) == 3 else "auto"
        step = 1.0 / (2 * n) if step_text == "auto" else to_float(step_text)
        if step <= 0.0:
            raise ValueError(f"alpha step must be positive, got {step}")
        if stop < start:
            raise ValueError(f"alpha range runs backwards: {text!r}")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        values = [start + k * step for k in range(count)]
    else:
        raise ValueError(f"alpha must be 'v' or 'start:stop[:step]', got {text!r}")
    for v in values:
        if not 0.0 <= v < 1.0:
            raise ValueError(f"alpha values must lie in [0, 1), got {v}")
    return values


def _resolve_params(args: argparse.Namespace) -> ModelParams:
    if args.n is None:
        raise ValueError("missing required parameter: n")
    if args.mu is None or args.sigma is None:
        raise ValueError("missing required parameters: mu and sigma")
    if (args.beta is None) == (args.egoists is None):
        raise ValueError("exactly one of beta and egoists must be given")
    if args.beta is not None:
        implied = 2.0 * args.beta * args.n
        egoists = round(implied)
        if abs(implied - egoists) > 1e-9:
            realized = egoists / (2.0 * args.n)
            print(
                f"note: beta={args.beta} implies {implied:.6g} egoists; "
                f"rounded to {egoists} (beta={realized:.6g})",
                file=sys.stderr,
            )
    else:
        egoists = args.egoists
    # alpha is swept; the placeholder value never reaches any output row.
    return ModelParams(n=args.n, egoists=egoists, mu=args.mu, sigma=args.sigma, alpha=0.0)


def _validate_combo(params: ModelParams, principles: list[Principle]) -> None:
    if params.group < 1:
        raise ValueError(
            "no group members (egoists = n); group principles are undefined"
        )
    if Principle.A_PRIME in principles and params.egoists == 0:
        raise ValueError("principle Aprime needs beta > 0 (no egoists given)")


def _analytic_rows(params, principles, grid, steps, mode):
    rows = []
    for principle in principles:
        points = sweep(params, principle, grid, steps, mode)
        for point in points:
            at = dataclasses.replace(params, alpha=point.alpha)
            resolved = mode.resolve(at)
            rows.append({
                "alpha": point.alpha,
                "principle": principle.value,
                "mode": resolved.value,
                "egoist_step": point.egoist_step_mean,
                "group_step": point.group_step_mean,
                "egoist_total_s": point.egoist_total,
                "group_total_s": point.group_total,
                "p_gamma": point.p_accept_given_support,
                "p_alpha": point.p_accept_given_no_support,
                "p_group_support": group_support_probability(at, principle),
            })
    return rows


def _simulation_rows(params, principles, grid, steps, replications, seed):
    rows = []
    for principle in principles:
        for alpha in grid:
            at = dataclasses.replace(params, alpha=alpha)
            stats = run(SimConfig(at, principle, steps, replications, seed))
            pass_alone, pass_supported = _acceptance_tails(at, EvalMode.EXACT)
            rows.append({
                "alpha": alpha,
                "principle": principle.value,
                "mode": "simulate",
                "egoist_step": stats.mean_egoist_increment / steps,
                "group_step": stats.mean_group_increment / steps,
                "egoist_total_s": stats.mean_egoist_increment,
                "group_total_s": stats.mean_group_increment,
                "p_gamma": pass_supported,
                "p_alpha": pass_alone,
                "p_group_support": group_support_probability(at, principle),
            })
    return rows


def _write_csv(rows: list[dict], stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([
            _fmt(row["alpha"]),
            row["principle"],
            row["mode"],
            _fmt(row["egoist_step"]),
            _fmt(row["group_step"]),
            _fmt(row["egoist_total_s"]),
            _fmt(row["group_total_s"]),
            _fmt(row["p_gamma"]),
            _fmt(row["p_alpha"]),
            _fmt(row["p_group_support"]),
        ])


def _svg_series(rows: list[dict]) -> list[dict]:
    series = []
    seen = []
    for row in rows:
        key = (row["principle"], row["mode"])
        if key not in seen:
            seen.append(key)
    for principle, mode in seen:
        subset = [r for r in rows if (r["principle"], r["mode"]) == (principle, mode)]
        suffix = f" ({mode})" if len({m for _, m in seen}) > 1 else ""
        series.append({
            "label": f"{principle} group{suffix}",
            "principle": principle,
            "alphas": [r["alpha"] for r in subset],
            "totals": [r["group_total_s"] for r in subset],
        })
        series.append({
            "label": f"{principle} egoist{suffix}",
            "principle": principle,
            "dashed": True,
            "alphas": [r["alpha"] for r in subset],
            "totals": [r["egoist_total_s"] for r in subset],
        })
    return series


def _emit(rows: list[dict], out: str | None, fmt: str) -> None:
    if fmt in ("svg", "both") and (out is None or out == "-"):
        raise ValueError("format svg requires --out PATH")
    if out is None or out == "-":
        _write_csv(rows, sys.stdout)
        return
    path = Path(out)
    if fmt == "csv":
        with path.open("w", newline="") as fh:
            _write_csv(rows, fh)
    elif fmt == "svg":
        path.write_text(render_sweep_svg(_svg_series(rows)))
    else:
        csv_path = path.with_suffix(".csv")
        with csv_path.open("w", newline="") as fh:
            _write_csv(rows, fh)
        path.with_suffix(".svg").write_text(render_sweep_svg(_svg_series(rows)))


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = _merge_config(args)
        if args.s is None:
            raise ValueError("missing required parameter: s")
        if args.s < 1:
            raise ValueError(f"s must be >= 1, got {args.s}")
        params = _resolve_params(args)
        principles = [Principle.parse(tok) for tok in (args.principle or "A").split(",")]
        _validate_combo(params, principles)
        if args.alpha is None:
            raise ValueError("missing required parameter: alpha")
        grid = parse_alpha_grid(args.alpha, params.n)
        mode_text = args.mode or "exact"
        replications = 1000 if args.replications is None else args.replications
        seed = 0 if args.seed is None else args.seed
        rows: list[dict] = []
        if mode_text in ("exact", "approx", "auto", "both"):
            analytic = EvalMode.EXACT if mode_text == "both" else EvalMode(mode_text)
            rows.extend(_analytic_rows(params, principles, grid, args.s, analytic))
        if mode_text in ("simulate", "both"):
            rows.extend(
                _simulation_rows(params, principles, grid, args.s, replications, seed)
            )
        _emit(rows, args.out, args.format or "csv")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
