"""Batch front door: load a scenario (config file or preset), run its task,
and write deterministic CSV artifacts plus a sha256 manifest.

Exit codes: 0 success, 2 config error, 3 numerical-validity error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import presets
from .dynamics import (
    IdentificationError,
    ProtocolSegment,
    StepSizeError,
    adiabatic_sweep,
    run_protocol,
)
from .effcoupling import EliminationError, PROCESSES
from .scenario import (
    ConfigError,
    Scenario,
    auto_window,
    config_text,
    half_rabi_period,
    parse_config,
)
from .spectrum import SearchError, locate_anticrossing, sweep_levels

_NUMERICAL_ERRORS = (SearchError, EliminationError, IdentificationError,
                     StepSizeError, np.linalg.LinAlgError)


def _locate(s: Scenario, p) -> float:
    """Numerically located anticrossing frequency for the scenario's process."""
    proc = s.conversion()
    result = locate_anticrossing(s.kind, p, proc.pair, auto_window(proc, p), s.cfg)
    return result.omega_q_star


def _resolve_omega(s: Scenario, token, resonance: float | None) -> float:
    if token.kind == "abs":
        return token.value
    if resonance is None:
        raise ConfigError("'res' token used but no resonance available")
    return resonance + token.value


def _resolve_duration(s: Scenario, token) -> float:
    if token.kind == "abs":
        return token.value
    proc = s.conversion()
    p = s.params(omega_q=proc.resonance(s.omega_a, s.omega_b))
    return token.value * half_rabi_period(proc, p)


def _write_rows(path: Path, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([x if isinstance(x, str) else repr(float(x)) for x in row])


def run_scenario(s: Scenario, out_dir: str | Path | None = None,
                 quiet: bool = False) -> list[Path]:
    """Execute the scenario task and write its CSV outputs and manifest."""
    out = Path(out_dir if out_dir is not None else s.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    outputs: list[Path] = []

    def say(msg: str) -> None:
        if not quiet:
            print(msg)

    if s.task == "spectrum-sweep":
        lo, hi, count = s.grid
        grid = np.linspace(lo, hi, count)
        table = sweep_levels(s.kind, s.params(omega_q=lo), grid, s.cfg,
                             track=s.track)
        path = out / f"{s.name}_levels.csv"
        table.write_csv(path)
        outputs.append(path)
        say(f"level sweep over {count} points -> {path}")

    elif s.task == "anticrossing":
        nominal = 0.5 * (s.window[0] + s.window[1])
        result = locate_anticrossing(s.kind, s.params(omega_q=nominal),
                                     s.pair, s.window, s.cfg)
        path = out / f"{s.name}_anticross.csv"
        _write_rows(path,
                    ["omega_q_star", "delta_min", "geff_numeric",
                     "level_lo", "level_hi"],
                    [[result.omega_q_star, result.delta_min,
                      result.geff_numeric,
                      str(result.level_lo), str(result.level_hi)]])
        outputs.append(path)
        say(f"anticrossing at omega_q = {result.omega_q_star:.6f}, "
            f"splitting {result.delta_min:.6e} -> {path}")

    elif s.task == "geff-compare":
        proc = s.conversion()
        rows = []
        for g in s.g_values:
            p = replace(s.params(omega_q=proc.resonance(s.omega_a, s.omega_b)),
                        g_a=g, g_b=g)
            result = locate_anticrossing(s.kind, p, proc.pair,
                                         auto_window(proc, p), s.cfg)
            if proc.rwa_analytic is None:
                rows.append([g, proc.analytic(p), result.geff_numeric])
            else:
                rows.append([g, proc.analytic(p), proc.rwa_analytic(p),
                             result.geff_numeric])
        header = (["g", "analytic", "numeric"] if proc.rwa_analytic is None
                  else ["g", "analytic_rabi", "analytic_jc", "numeric"])
        path = out / f"{s.name}_geff.csv"
        _write_rows(path, header, rows)
        outputs.append(path)
        say(f"coupling comparison over {len(rows)} couplings -> {path}")

    elif s.task == "protocol":
        resonance = None
        if any(seg.omega.kind == "res" for seg in s.segments):
            proc = s.conversion()
            resonance = _locate(
                s, s.params(omega_q=proc.resonance(s.omega_a, s.omega_b)))
            say(f"located resonance at omega_q = {resonance:.6f}")
        segments = [ProtocolSegment(omega_q=_resolve_omega(s, seg.omega, resonance),
                                    duration=_resolve_duration(s, seg.duration))
                    for seg in s.segments]
        series = run_protocol(segments, s.initial, s.kind,
                              s.params(omega_q=segments[0].omega_q), s.cfg,
                              s.rates, sample_dt=s.sample_dt)
        path = out / f"{s.name}_timeseries.csv"
        series.write_csv(path)
        outputs.append(path)
        say(f"protocol over {sum(seg.duration for seg in segments):.1f} time "
            f"units, peak n_b = {series.n_b.max():.3f} -> {path}")

    elif s.task == "adiabatic-sweep":
        proc = s.conversion()
        resonance = None
        if s.ramp_from.kind == "res" or s.ramp_to.kind == "res":
            resonance = _locate(
                s, s.params(omega_q=proc.resonance(s.omega_a, s.omega_b)))
            say(f"located resonance at omega_q = {resonance:.6f}")
        start = _resolve_omega(s, s.ramp_from, resonance)
        stop = _resolve_omega(s, s.ramp_to, resonance)
        ramp_time = _resolve_duration(s, s.ramp_time)
        result = adiabatic_sweep(start, stop, ramp_time, s.segment_count,
                                 s.initial, s.target, s.kind,
                                 s.params(omega_q=start), s.cfg, s.rates,
                                 sample_dt=s.sample_dt)
        ts_path = out / f"{s.name}_sweep_timeseries.csv"
        result.timeseries.write_csv(ts_path)
        outputs.append(ts_path)
        summary = out / f"{s.name}_sweep_summary.csv"
        _write_rows(summary,
                    ["fidelity", "target_level", "target_overlap",
                     "omega_start", "omega_stop", "ramp_time", "segment_count"],
                    [[result.fidelity, str(result.target_level),
                      result.target_overlap, start, stop, ramp_time,
                      str(s.segment_count)]])
        outputs.append(summary)
        say(f"adiabatic sweep fidelity = {result.fidelity:.4f} -> {ts_path}")

    else:
        raise ConfigError(f"unknown task {s.task!r}")

    manifest = out / "manifest.tsv"
    with open(manifest, "w") as fh:
        for path in outputs:
            digest = hashlib.sha256(path.read_bytes()).hexdigest()
            fh.write(f"{path.name}\t{digest}\n")
    outputs.append(manifest)
    return outputs


_TASK_BY_COMMAND = {
    "spectrum": "spectrum-sweep",
    "anticross": "anticrossing",
    "geff": "geff-compare",
    "protocol": "protocol",
    "sweep": "adiabatic-sweep",
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freqconv",
        description="Qubit-mediated photon frequency conversion simulator")
    sub = parser.add_subparsers(dest="command", required=True)
    descriptions = {
        "spectrum": "eigenenergies versus qubit frequency",
        "anticross": "locate one avoided crossing and its minimum splitting",
        "geff": "analytic versus numerical effective coupling over a g grid",
        "protocol": "rapid-tune conversion protocol time traces",
        "sweep": "adiabatic ramp through an anticrossing",
    }
    for command, task in _TASK_BY_COMMAND.items():
        p = sub.add_parser(command, help=descriptions[command])
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--config", type=Path, help="scenario config file")
        group.add_argument("--preset", choices=presets.PRESET_NAMES,
                           help="bundled figure preset")
        p.add_argument("--out", type=Path, default=Path("out"),
                       help="output directory (default: ./out)")
        p.add_argument("--cutoff", type=int, default=None,
                       help="override both Fock cutoffs")
        p.add_argument("--quiet", action="store_true")
        p.add_argument("--dump-config", action="store_true",
                       help="print the resolved config text and exit")
        p.set_defaults(task=task)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.preset is not None:
            scenario = presets.build(args.preset, task=args.task)
        else:
            try:
                text = args.config.read_text()
            except OSError as exc:
                print(f"config error: cannot read {args.config}: {exc}",
                      file=sys.stderr)
                return 2
            scenario = parse_config(text)
            if scenario.task != args.task:
                raise ConfigError(
                    f"config declares task {scenario.task!r} but the "
                    f"{args.command!r} subcommand runs {args.task!r}")
        if args.cutoff is not None:
            if args.cutoff < 2:
                raise ConfigError("--cutoff must be >= 2")
            scenario = scenario.with_cutoffs(args.cutoff)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    if args.dump_config:
        print(config_text(scenario), end="")
        return 0

    try:
        run_scenario(scenario, out_dir=args.out, quiet=args.quiet)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
