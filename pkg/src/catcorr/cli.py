"""Command-line front end: parameter sweeps, phase-space maps, reports.

Exit codes: 0 on success, 2 on usage errors, 3 when ``--strict`` is set and
a quadrature failed to converge.  CSV output is UTF-8 with LF line endings,
a header row, and floats at 12 significant digits; runs with identical
configuration produce byte-identical files.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .algebra import DyadOperator, DegenerateOddCatError
from .catalog import StateId, build, fock_limit_qubit_matrix
from .config import DEFAULT_CONFIG, Config, load_config
from .gaussian import non_gaussianity
from .minneg import MinNegativityResult, OptimizerSpec, min_negativity
from .phasespace import QuadratureSpec, negativity_volume, max_label, wigner
from .photon import mandel_q_mode, mandel_q_su2, squeezing_d
from .qubit import (
    classical_correlation,
    correlation_rank,
    geometric_discord,
    lqu,
    mutual_information,
    qubit_matrix,
    t_det,
)
from .svgplot import write_heatmap

__all__ = ["main"]

SWEEP_STATES = ("pp", "pm", "sigma_q_pp", "sigma_q_pm", "sigma_c_pp", "sigma_c_pm")
QUANTITIES = ("neg", "ng", "q", "d", "discord", "lqu", "dg", "i", "j", "rank")
SQRT2 = float(np.sqrt(2.0))


def _format(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.12g}"


def _parse_range(text: str) -> list[float]:
    try:
        start, stop, step = (float(part) for part in text.split(":"))
    except ValueError:
        raise ValueError(f"expected start:stop:step, got {text!r}") from None
    if step <= 0.0 or stop < start:
        raise ValueError(f"need start <= stop and step > 0 in {text!r}")
    values = []
    k = 0
    while True:
        value = start + k * step
        if value > stop + step * 1e-9:
            break
        values.append(round(value, 12))
        k += 1
    return values


def _parse_grid(text: str) -> np.ndarray:
    try:
        lo_s, hi_s, n_s = text.split(":")
        lo, hi, n = float(lo_s), float(hi_s), int(n_s)
    except ValueError:
        raise ValueError(f"expected lo:hi:n, got {text!r}") from None
    if n <= 0 or hi <= lo:
        raise ValueError(f"need lo < hi and n > 0 in {text!r}")
    return np.linspace(lo, hi, n)


class _Measurements:
    """Per (state, gamma) computation shared by sweep and report."""

    def __init__(self, config: Config):
        self.config = config
        self.all_converged = True

    def state(self, name: str, gamma: float) -> DyadOperator:
        return build(StateId.from_name(name), gamma)

    def columns(self, name: str, gamma: float, quantities) -> dict:
        rho = self.state(name, gamma)
        out: dict[str, object] = {}
        needs_qubit = {"discord", "lqu", "dg", "i", "j", "rank"} & set(quantities)
        rhoq = qubit_matrix(rho, gamma) if needs_qubit else None
        base = self.config.log_base
        for quantity in quantities:
            if quantity == "neg":
                spec = QuadratureSpec(
                    max_label(rho) + self.config.box_margin, self.config.nodes
                )
                res = negativity_volume(rho, spec, threads=self.config.threads)
                out[f"neg_{name}"] = res.value
                out[f"_converged_{name}"] = res.converged
                self.all_converged &= res.converged
            elif quantity == "ng":
                out[f"ng_{name}"] = non_gaussianity(rho)
            elif quantity == "q":
                out[f"q_{name}"] = mandel_q_mode(rho, 0)
            elif quantity == "d":
                d1, d2 = squeezing_d(rho)
                out[f"d1_{name}"] = d1
                out[f"d2_{name}"] = d2
            elif quantity == "discord":
                out[f"discord_{name}"] = mutual_information(rhoq, base) - \
                    classical_correlation(rhoq, base)[0]
            elif quantity == "lqu":
                out[f"lqu_{name}"] = lqu(rhoq)
            elif quantity == "dg":
                out[f"dg_{name}"] = geometric_discord(rhoq)
            elif quantity == "i":
                out[f"i_{name}"] = mutual_information(rhoq, base)
            elif quantity == "j":
                out[f"j_{name}"] = classical_correlation(rhoq, base)[0]
            elif quantity == "rank":
                out[f"rank_{name}"] = correlation_rank(rhoq)
            else:
                raise ValueError(f"unknown quantity {quantity!r}")
        return out


def _write_rows(path: str, header: list[str], rows: list[list[str]]) -> None:
    lines = [",".join(header)] + [",".join(row) for row in rows]
    text = "\n".join(lines) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)


def _resolve_config(args) -> Config:
    config = DEFAULT_CONFIG
    if getattr(args, "config", None):
        config = load_config(args.config, config)
    overrides = {}
    if getattr(args, "nodes", None) is not None:
        overrides["nodes"] = args.nodes
    if getattr(args, "threads", None) is not None:
        overrides["threads"] = args.threads
    if getattr(args, "strict", False):
        overrides["strict"] = True
    if overrides:
        from dataclasses import replace

        config = replace(config, **overrides)
    return config


def _cmd_sweep(args) -> int:
    config = _resolve_config(args)
    states = [s for s in args.states.split(",") if s]
    quantities = [q for q in args.quantities.split(",") if q]
    if not quantities or not states:
        print("error: empty state or quantity list", file=sys.stderr)
        return 2
    for s in states:
        if s not in SWEEP_STATES:
            print(f"error: unknown state {s!r}", file=sys.stderr)
            return 2
    for q in quantities:
        if q not in QUANTITIES:
            print(f"error: unknown quantity {q!r}", file=sys.stderr)
            return 2
    gammas = _parse_range(args.gamma)

    measure = _Measurements(config)
    records = []
    for gamma in gammas:
        record: dict[str, object] = {
            "gamma": gamma,
            "Gamma": float(np.exp(-2.0 * gamma * gamma)),
        }
        for name in states:
            record.update(measure.columns(name, gamma, quantities))
        records.append(record)

    header = ["gamma", "Gamma"]
    for quantity in quantities:
        for name in states:
            if quantity == "d":
                header += [f"d1_{name}", f"d2_{name}"]
            else:
                header.append(f"{quantity}_{name}")
    if "neg" in quantities:
        header += [f"neg_{name}_converged" for name in states]
    rows = []
    for record in records:
        row = []
        for column in header:
            if column.endswith("_converged"):
                row.append(_format(record[f"_converged_{column[4:-10]}"]))
            else:
                row.append(_format(record[column]))
        rows.append(row)
    _write_rows(args.out, header, rows)
    if config.strict and not measure.all_converged:
        print("error: quadrature did not converge", file=sys.stderr)
        return 3
    return 0


def _cmd_wigner(args) -> int:
    try:
        state = StateId.from_name(args.state)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    axis = _parse_grid(args.grid)
    try:
        rho = build(state, args.gamma)
    except DegenerateOddCatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    # Grid coordinates are quadratures; the map value keeps the per-mode
    # normalization integral W d(Re z) d(Im z) = 1 with z = (q + i p)/sqrt(2).
    zgrid = (axis[:, None] + 1j * axis[None, :]) / SQRT2
    if rho.modes == 1:
        values = wigner(rho, zgrid)
        header = ["q", "p", "W"]
        rows = [
            [_format(axis[i]), _format(axis[j]), _format(values[i, j])]
            for i in range(axis.size)
            for j in range(axis.size)
        ]
    else:
        q2, p2 = (float(part) for part in args.at.split(","))
        z2 = complex(q2, p2) / SQRT2
        values = wigner(rho, zgrid, np.full_like(zgrid, z2))
        header = ["q1", "p1", "q2", "p2", "W"]
        rows = [
            [
                _format(axis[i]),
                _format(axis[j]),
                _format(q2),
                _format(p2),
                _format(values[i, j]),
            ]
            for i in range(axis.size)
            for j in range(axis.size)
        ]
    _write_rows(args.out, header, rows)
    if args.svg:
        write_heatmap(
            args.svg,
            values,
            axis,
            axis,
            title=f"Wigner map: {state.value}, gamma={args.gamma:g}",
        )
    return 0


_REPORT_STATES = SWEEP_STATES


def _cmd_report(args) -> int:
    if args.gamma < 0:
        print("error: gamma must be nonnegative", file=sys.stderr)
        return 2
    config = _resolve_config(args)
    lines = [f"catcorr report  gamma={args.gamma:g}"]
    if args.gamma == 0.0:
        lines.append(
            "note: gamma=0 uses the vacuum/single-photon limit basis; "
            "phase-space quantities are unavailable at the degenerate point"
        )
        header = ["state", "discord", "lqu", "dg", "i", "j", "rank", "tdet"]
        lines.append("  ".join(f"{h:>12}" for h in header))
        for name in _REPORT_STATES:
            rhoq = fock_limit_qubit_matrix(StateId.from_name(name))
            j_val, _ = classical_correlation(rhoq, config.log_base)
            i_val = mutual_information(rhoq, config.log_base)
            row = [
                name,
                f"{i_val - j_val:.6g}",
                f"{lqu(rhoq):.6g}",
                f"{geometric_discord(rhoq):.6g}",
                f"{i_val:.6g}",
                f"{j_val:.6g}",
                str(correlation_rank(rhoq)),
                f"{t_det(rhoq):.6g}",
            ]
            lines.append("  ".join(f"{cell:>12}" for cell in row))
    else:
        measure = _Measurements(config)
        header = [
            "state", "neg", "conv", "ng", "q", "d1", "d2",
            "discord", "lqu", "dg", "i", "j", "rank", "tdet",
        ]
        lines.append("  ".join(f"{h:>10}" for h in header))
        values = {}
        for name in _REPORT_STATES:
            cols = measure.columns(
                name, args.gamma,
                ["neg", "ng", "q", "d", "discord", "lqu", "dg", "i", "j", "rank"],
            )
            rhoq = qubit_matrix(measure.state(name, args.gamma), args.gamma)
            cols[f"tdet_{name}"] = t_det(rhoq)
            values[name] = cols
            row = [
                name,
                f"{cols[f'neg_{name}']:.5g}",
                "yes" if cols[f"_converged_{name}"] else "NO",
                f"{cols[f'ng_{name}']:.5g}",
                f"{cols[f'q_{name}']:.5g}",
                f"{cols[f'd1_{name}']:.5g}",
                f"{cols[f'd2_{name}']:.5g}",
                f"{cols[f'discord_{name}']:.5g}",
                f"{cols[f'lqu_{name}']:.5g}",
                f"{cols[f'dg_{name}']:.5g}",
                f"{cols[f'i_{name}']:.5g}",
                f"{cols[f'j_{name}']:.5g}",
                str(cols[f"rank_{name}"]),
                f"{cols[f'tdet_{name}']:.5g}",
            ]
            lines.append("  ".join(f"{cell:>10}" for cell in row))
        gap = abs(values["pp"]["neg_pp"] - values["pm"]["neg_pm"])
        if gap < 0.02:
            lines.append(
                f"note: global negativities of pp and pm agree within 0.02 "
                f"(|difference| = {gap:.4g})"
            )
        if not measure.all_converged and config.strict:
            print("\n".join(lines))
            print("error: quadrature did not converge", file=sys.stderr)
            return 3
    text = "\n".join(lines) + "\n"
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_minneg(args) -> int:
    try:
        state = StateId.from_name(args.state)
        rho = build(state, args.gamma)
    except (ValueError, DegenerateOddCatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    opt = OptimizerSpec(
        points_per_angle=args.points,
        coarse_nodes=args.coarse_nodes,
        refine_nodes=args.nodes,
        refine_seeds=args.seeds,
        maxfev=args.maxfev,
    )
    result: MinNegativityResult = min_negativity(rho, args.gamma, opt)
    angles = result.params.as_array()
    print(f"state              {state.value}")
    print(f"gamma              {args.gamma:g}")
    print(f"negativity         {result.raw_value:.6g}")
    print(f"minimum negativity {result.value:.6g}")
    print(f"feasible           {'yes' if result.feasible else 'no'}")
    print(
        "angles A (theta, phi, psi)  "
        + "  ".join(f"{a:.6f}" for a in angles[:3])
    )
    print(
        "angles B (theta, phi, psi)  "
        + "  ".join(f"{a:.6f}" for a in angles[3:])
    )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catcorr",
        description=(
            "Nonclassicality and quantum-correlation measures for two-mode "
            "coherent-state superpositions."
        ),
    )
    parser.add_argument("--version", action="version", version=f"catcorr {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="tabulate measures over an amplitude range")
    sweep.add_argument("--states", default="pp,pm", help="comma list of state names")
    sweep.add_argument(
        "--quantities", required=True,
        help=f"comma list from {{{','.join(QUANTITIES)}}}",
    )
    sweep.add_argument("--gamma", required=True, help="range start:stop:step")
    sweep.add_argument("--out", default="-", help="CSV path (default stdout)")
    sweep.add_argument("--config", help="key = value configuration file")
    sweep.add_argument("--strict", action="store_true")
    sweep.add_argument("--threads", type=int)
    sweep.add_argument("--nodes", type=int)
    sweep.set_defaults(func=_cmd_sweep)

    wig = sub.add_parser("wigner", help="dump a Wigner map on a quadrature grid")
    wig.add_argument("--state", required=True)
    wig.add_argument("--gamma", type=float, required=True)
    wig.add_argument("--grid", required=True, help="axis grid lo:hi:n")
    wig.add_argument(
        "--at", default="0,0", help="fixed (q2,p2) slice point for two-mode states"
    )
    wig.add_argument("--out", default="-", help="CSV path (default stdout)")
    wig.add_argument("--svg", help="also write an SVG heatmap")
    wig.set_defaults(func=_cmd_wigner)

    rep = sub.add_parser("report", help="one-screen table of every measure")
    rep.add_argument("--gamma", type=float, required=True)
    rep.add_argument("--out", default="-")
    rep.add_argument("--config", help="key = value configuration file")
    rep.add_argument("--strict", action="store_true")
    rep.add_argument("--threads", type=int)
    rep.add_argument("--nodes", type=int)
    rep.set_defaults(func=_cmd_report)

    mn = sub.add_parser("minneg", help="negativity minimized over local unitaries")
    mn.add_argument("--state", required=True)
    mn.add_argument("--gamma", type=float, required=True)
    mn.add_argument("--points", type=int, default=5, help="coarse points per angle")
    mn.add_argument("--coarse-nodes", type=int, default=48)
    mn.add_argument("--nodes", type=int, default=96)
    mn.add_argument("--seeds", type=int, default=3)
    mn.add_argument("--maxfev", type=int, default=300)
    mn.set_defaults(func=_cmd_minneg)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
