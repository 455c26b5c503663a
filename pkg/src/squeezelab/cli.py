"""Command-line surface: distributions, grids, reports and verification,
emitted as reproducible CSV or JSON.

Output bytes are deterministic for a fixed command line: no timestamps,
floats printed with 17 significant digits (full double round-trip), and
the configuration echoed into the header of every file.

Exit codes: 0 success, 2 argument error, 3 verification failure,
4 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__, analysis, verify
from .semiclassical import OverlapParams, approx_p, classical_boundary
from .squeezed_number import (NonConvergenceError, SqueezedNumberState,
                              momentum_wf, photon_distribution, position_wf,
                              q_grid, q_slice_imag, resolve_threads)
from .tables import GridSpec

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFY = 3
EXIT_NONCONVERGENCE = 4


@dataclass(frozen=True)
class RunConfig:
    """Echo of one command invocation, serialized into every output header."""

    command: str
    params: dict

    def as_json(self) -> str:
        return json.dumps({"command": self.command, **self.params}, sort_keys=True)


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def _write_table(config: RunConfig, columns, rows, fmt: str, out: str | None,
                 extra_header: dict | None = None):
    """Emit a column table as CSV (with # header comments) or JSON v1."""
    if fmt == "csv":
        lines = [f"# squeezelab {__version__} schema v1",
                 f"# config {config.as_json()}"]
        if extra_header:
            lines.append(f"# {json.dumps(extra_header, sort_keys=True)}")
        lines.append(",".join(columns))
        for row in rows:
            lines.append(",".join(_fmt(v) for v in row))
        text = "\n".join(lines) + "\n"
    else:
        payload = {
            "schema": "v1",
            "generator": f"squeezelab {__version__}",
            "config": {"command": config.command, **config.params},
            "columns": list(columns),
            "rows": [[(int(v) if isinstance(v, (int, np.integer)) else float(v))
                      for v in row] for row in rows],
        }
        if extra_header:
            payload["meta"] = extra_header
        text = json.dumps(payload, sort_keys=True, indent=1) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def _slice_companion_path(out: str) -> str:
    root, ext = os.path.splitext(out)
    return f"{root}_slice{ext or '.csv'}"


def cmd_photon(args) -> int:
    state = SqueezedNumberState(args.m, args.r)
    table = photon_distribution(state, args.tail_eps)
    config = RunConfig("photon", {"m": args.m, "r": args.r, "tail_eps": args.tail_eps,
                                  "format": args.format})
    rows = [(int(n), p) for n, p in zip(table.coords, table.probs)]
    _write_table(config, ["n", "probability"], rows, args.format, args.out,
                 extra_header=dict(table.meta.truncation))
    return EXIT_OK


def cmd_quad(args) -> int:
    state = SqueezedNumberState(args.m, args.r)
    scale = math.exp(state.r) if args.kind == "momentum" else math.exp(-state.r)
    lo = args.min if args.min is not None else -scale * (math.sqrt(2 * state.m + 1) + 4.0)
    hi = args.max if args.max is not None else -lo
    if not lo < hi:
        raise UsageError("--min must be below --max")
    coords = np.linspace(lo, hi, args.points)
    wf = momentum_wf if args.kind == "momentum" else position_wf
    amps = [complex(wf(float(x), state)) for x in coords]
    config = RunConfig("quad", {"kind": args.kind, "m": args.m, "r": args.r,
                                "min": lo, "max": hi, "points": args.points,
                                "amplitude": bool(args.amplitude), "format": args.format})
    if args.amplitude:
        columns = ["coord", "prob", "re", "im"]
        rows = [(x, abs(a) ** 2, a.real, a.imag) for x, a in zip(coords, amps)]
    else:
        columns = ["coord", "prob"]
        rows = [(x, abs(a) ** 2) for x, a in zip(coords, amps)]
    _write_table(config, columns, rows, args.format, args.out)
    return EXIT_OK


def cmd_qfunc(args) -> int:
    state = SqueezedNumberState(args.m, args.r)
    if args.re_min is None:
        lim = math.exp(-state.r) * math.sqrt(2 * state.m + 1) + 3.0
        args.re_min, args.re_max = -lim, lim
    if args.im_min is None:
        lim = math.exp(state.r) * math.sqrt(2 * state.m + 1) + 3.0
        args.im_min, args.im_max = -lim, lim
    grid = GridSpec(args.re_min, args.re_max, args.im_min, args.im_max,
                    args.n_re, args.n_im)
    threads = resolve_threads(_threads_from_env())
    values = q_grid(state, grid, threads=threads)
    re, im = grid.axes()
    config = RunConfig("qfunc", {"m": args.m, "r": args.r, **asdict(grid),
                                 "format": args.format})
    rows = [(re[j], im[i], values[i, j])
            for i in range(grid.n_im) for j in range(grid.n_re)]
    _write_table(config, ["re", "im", "Q"], rows, args.format, args.out,
                 extra_header={"row_major": "im is the slow axis"})
    # companion file: the imaginary-axis slice the oscillations live on
    slice_out = args.slice_out
    if slice_out is None and args.out is not None:
        slice_out = _slice_companion_path(args.out)
    if slice_out is not None:
        sl = q_slice_imag(im, state)
        slice_rows = [(im[i], sl[i]) for i in range(grid.n_im)]
        slice_config = RunConfig("qfunc-slice", {"m": args.m, "r": args.r,
                                                 "im_min": grid.im_min,
                                                 "im_max": grid.im_max,
                                                 "n_im": grid.n_im,
                                                 "format": args.format})
        _write_table(slice_config, ["im", "Q"], slice_rows, args.format, slice_out)
    return EXIT_OK


def cmd_semiclassical(args) -> int:
    state = SqueezedNumberState(args.m, args.r)
    bound = classical_boundary(state.m, state.r)
    y_lo = args.y_min if args.y_min is not None else 0.0
    y_hi = args.y_max if args.y_max is not None else bound * 1.05
    ys = np.linspace(y_lo, y_hi, args.points)
    exact = q_slice_imag(ys, state)
    approx = np.full(len(ys), math.nan)
    valid = np.zeros(len(ys), dtype=int)
    for i, y in enumerate(ys):
        p = OverlapParams(state.m, state.r, float(y))
        if p.depth() > 0.0:
            approx[i] = approx_p(p)
            valid[i] = 1
    if not valid.any():
        sys.stderr.write("warning: no point of the range lies inside the "
                         "classical boundary; every row is flagged invalid\n")
        scale = math.nan
    else:
        mask = (valid == 1) & (ys < 0.8 * bound)
        if not mask.any():
            mask = valid == 1
        denom = float(approx[mask] @ approx[mask])
        scale = float(approx[mask] @ exact[mask]) / denom if denom > 0 else math.nan
    config = RunConfig("semiclassical", {"m": args.m, "r": args.r, "y_min": y_lo,
                                         "y_max": y_hi, "points": args.points,
                                         "format": args.format})
    rows = [(y, a, e, int(v)) for y, a, e, v in zip(ys, approx, exact, valid)]
    _write_table(config, ["y", "approx", "exact_slice", "valid"], rows,
                 args.format, args.out,
                 extra_header={"classical_boundary": bound, "fitted_scale": scale})
    return EXIT_OK


def cmd_maxima(args) -> int:
    state = SqueezedNumberState(args.m, args.r)
    rep = args.representation
    if rep == "photon":
        table = photon_distribution(state, args.tail_eps)
        refine = False
    elif rep == "position":
        table = analysis.position_density_table(state)
        refine = True
    elif rep == "momentum":
        table = analysis.momentum_density_table(state)
        refine = True
    else:
        table = analysis.q_slice_table(state)
        refine = True
    report = analysis.find_maxima(table, floor=args.floor, refine=refine)
    config = RunConfig("maxima", {"representation": rep, "m": args.m, "r": args.r,
                                  "floor": args.floor, "format": args.format})
    rows = [(int(p) if rep == "photon" else float(p), v)
            for p, v in zip(report.positions, report.values)]
    _write_table(config, ["position", "value"], rows, args.format, args.out,
                 extra_header={"count": report.count})
    return EXIT_OK


def cmd_transition(args) -> int:
    result = analysis.transition_scan(args.m, args.r_lo, args.r_hi, args.step,
                                      prominence=args.prominence)
    config = RunConfig("transition", {"m": args.m, "r_lo": args.r_lo,
                                      "r_hi": args.r_hi, "step": args.step,
                                      "prominence": args.prominence,
                                      "format": args.format})
    rows = [(r, int(c)) for r, c in result.trace]
    _write_table(config, ["r", "prominent_maxima"], rows, args.format, args.out,
                 extra_header={"r_star": result.r_star, "target": result.target})
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify.run_suites([args.suite], max_m=args.max_m)
    text = json.dumps(report, sort_keys=True, indent=1) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    return EXIT_OK if report["passed"] else EXIT_VERIFY


class UsageError(ValueError):
    pass


def _threads_from_env() -> int | None:
    raw = os.environ.get("SQUEEZELAB_THREADS")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"SQUEEZELAB_THREADS must be an integer, got {raw!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="squeezelab",
        description="Squeezed number states: distributions, Husimi grids and "
                    "self-verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_state=True):
        if with_state:
            p.add_argument("--m", type=int, required=True, help="photon index of the state")
            p.add_argument("--r", type=float, required=True, help="squeeze parameter")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None, help="output path (default: stdout)")

    p = sub.add_parser("photon", help="photon-number distribution")
    add_common(p)
    p.add_argument("--tail-eps", type=float, default=1e-10, dest="tail_eps")
    p.set_defaults(func=cmd_photon)

    p = sub.add_parser("quad", help="quadrature probability density")
    add_common(p)
    p.add_argument("--kind", choices=("position", "momentum"), required=True)
    p.add_argument("--min", type=float, default=None)
    p.add_argument("--max", type=float, default=None)
    p.add_argument("--points", type=int, default=2001)
    p.add_argument("--amplitude", action="store_true",
                   help="also emit real and imaginary amplitude columns")
    p.set_defaults(func=cmd_quad)

    p = sub.add_parser("qfunc", help="Husimi Q on a grid, plus the Im-axis slice")
    add_common(p)
    p.add_argument("--re-min", type=float, default=None, dest="re_min")
    p.add_argument("--re-max", type=float, default=None, dest="re_max")
    p.add_argument("--im-min", type=float, default=None, dest="im_min")
    p.add_argument("--im-max", type=float, default=None, dest="im_max")
    p.add_argument("--n-re", type=int, default=201, dest="n_re")
    p.add_argument("--n-im", type=int, default=201, dest="n_im")
    p.add_argument("--slice-out", default=None, dest="slice_out",
                   help="path of the companion Im-axis slice file")
    p.set_defaults(func=cmd_qfunc)

    p = sub.add_parser("semiclassical",
                       help="area-of-overlap approximation vs the exact slice")
    add_common(p)
    p.add_argument("--y-min", type=float, default=None, dest="y_min")
    p.add_argument("--y-max", type=float, default=None, dest="y_max")
    p.add_argument("--points", type=int, default=1500)
    p.set_defaults(func=cmd_semiclassical)

    p = sub.add_parser("maxima", help="local maxima of one representation")
    add_common(p)
    p.add_argument("--representation",
                   choices=("photon", "position", "momentum", "qslice"),
                   required=True)
    p.add_argument("--tail-eps", type=float, default=1e-10, dest="tail_eps")
    p.add_argument("--floor", type=float, default=analysis.DEFAULT_FLOOR)
    p.set_defaults(func=cmd_maxima)

    p = sub.add_parser("transition", help="scan r for the oscillation onset")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r-lo", type=float, required=True, dest="r_lo")
    p.add_argument("--r-hi", type=float, required=True, dest="r_hi")
    p.add_argument("--step", type=float, default=0.02)
    p.add_argument("--prominence", type=float, default=0.1)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_transition)

    p = sub.add_parser("verify", help="run self-verification suites")
    p.add_argument("--suite", default="all",
                   choices=("parity", "normalization", "oracle", "genfun",
                            "fourier", "transition", "all"))
    p.add_argument("--max-m", type=int, default=None, dest="max_m")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.exit(EXIT_USAGE, f"error: {exc}\n")
    except (ValueError,) as exc:
        parser.exit(EXIT_USAGE, f"error: {exc}\n")
    except (NonConvergenceError, analysis.ScanError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        if isinstance(exc, analysis.ScanError) and exc.trace:
            sys.stderr.write("trace (r, count): "
                             + " ".join(f"({r:.4g},{c})" for r, c in exc.trace) + "\n")
        return EXIT_NONCONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
