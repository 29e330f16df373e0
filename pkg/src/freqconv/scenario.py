"""Scenario definition and the flat key = value config format.

A scenario bundles the physical parameters of one conversion setup with a
task (spectrum sweep, anticrossing location, coupling comparison, rapid-tune
protocol, or adiabatic sweep) and the task's parameters.  All frequency-like
values in a config are expressed in units of omega_q_ref; durations are in
units of 1/omega_q_ref.

Protocol and ramp entries may use two resolve-at-run tokens:
  'res'      the numerically located anticrossing frequency (+- offset), and
  'half'     half a Rabi period pi/(2 |g_eff|) from the analytic coupling
             (optionally scaled, e.g. 'half*12').
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, replace
from typing import NamedTuple

from .dynamics import DecoherenceRates
from .effcoupling import PROCESSES, ConversionProcess
from .fockspace import BasisLabel, SpaceConfig
from .models import MODEL_KINDS, ModelParams

TASKS = ("spectrum-sweep", "anticrossing", "geff-compare", "protocol",
         "adiabatic-sweep")

BASE_KEYS = ("model", "omega_a", "omega_b", "omega_q_ref", "g_a", "g_b",
             "theta", "cutoff_a", "cutoff_b", "kappa_a", "kappa_b", "gamma",
             "task")

TASK_KEYS = {
    "spectrum-sweep": {"required": ("grid_min", "grid_max", "grid_count"),
                       "optional": ("track",)},
    "anticrossing": {"required": ("pair", "window_lo", "window_hi"),
                     "optional": ()},
    "geff-compare": {"required": ("process", "g_values"), "optional": ()},
    "protocol": {"required": ("process", "initial", "segments"),
                 "optional": ("sample_dt",)},
    "adiabatic-sweep": {"required": ("process", "initial", "target",
                                     "ramp_from", "ramp_to", "ramp_time",
                                     "segment_count"),
                        "optional": ("sample_dt",)},
}


class ConfigError(ValueError):
    """Malformed or inconsistent scenario configuration."""


class OmegaToken(NamedTuple):
    """A qubit frequency: absolute value, or offset from the located resonance."""

    kind: str     # "abs" | "res"
    value: float  # absolute frequency, or offset from the anticrossing

    def text(self) -> str:
        if self.kind == "abs":
            return repr(self.value)
        if self.value == 0.0:
            return "res"
        sign = "+" if self.value > 0 else "-"
        return f"res{sign}{abs(self.value)!r}"


class DurationToken(NamedTuple):
    """A duration: absolute, or a multiple of the half Rabi period."""

    kind: str     # "abs" | "half"
    value: float  # absolute duration, or multiplier for pi/(2 |g_eff|)

    def text(self) -> str:
        if self.kind == "abs":
            return repr(self.value)
        if self.value == 1.0:
            return "half"
        return f"half*{self.value!r}"


class SegmentSpec(NamedTuple):
    omega: OmegaToken
    duration: DurationToken

    def text(self) -> str:
        return f"{self.omega.text()}@{self.duration.text()}"


@dataclass(frozen=True)
class Scenario:
    """A fully validated scenario; frequencies normalized to omega_q_ref = 1."""

    name: str
    kind: str
    omega_a: float
    omega_b: float
    g_a: float
    g_b: float
    theta: float
    omega_q_ref: float            # raw reference from the config
    cfg: SpaceConfig
    rates: DecoherenceRates
    task: str
    process: str | None = None
    grid: tuple[float, float, int] | None = None
    track: tuple[BasisLabel, ...] = ()
    pair: tuple[BasisLabel, BasisLabel] | None = None
    window: tuple[float, float] | None = None
    g_values: tuple[float, ...] | None = None
    initial: BasisLabel | None = None
    target: BasisLabel | None = None
    segments: tuple[SegmentSpec, ...] | None = None
    ramp_from: OmegaToken | None = None
    ramp_to: OmegaToken | None = None
    ramp_time: DurationToken | None = None
    segment_count: int | None = None
    sample_dt: float = 1.0
    out_dir: str = "out"

    def params(self, omega_q: float) -> ModelParams:
        return ModelParams(omega_a=self.omega_a, omega_b=self.omega_b,
                           omega_q=omega_q, g_a=self.g_a, g_b=self.g_b,
                           theta=self.theta)

    def conversion(self) -> ConversionProcess:
        if self.process is None:
            raise ConfigError("scenario has no conversion process")
        return PROCESSES[self.process]

    def with_cutoffs(self, cutoff: int) -> "Scenario":
        return replace(self, cfg=SpaceConfig(cutoff_a=cutoff, cutoff_b=cutoff))


_NAME_RE = re.compile(r"^[A-Za-z0-9._-]+$")


def _parse_float(raw: str, key: str) -> float:
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"key {key!r}: cannot parse number from {raw!r}") from exc


def _parse_int(raw: str, key: str) -> int:
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"key {key!r}: cannot parse integer from {raw!r}") from exc


def _parse_label(raw: str, key: str) -> BasisLabel:
    try:
        return BasisLabel.from_text(raw)
    except ValueError as exc:
        raise ConfigError(f"key {key!r}: {exc}") from exc


def _parse_label_list(raw: str, key: str) -> tuple[BasisLabel, ...]:
    items = [s for s in (part.strip() for part in raw.split(";")) if s]
    return tuple(_parse_label(s, key) for s in items)


def _parse_omega_token(raw: str, key: str, scale: float) -> OmegaToken:
    raw = raw.strip()
    if raw == "res":
        return OmegaToken("res", 0.0)
    if raw.startswith("res+") or raw.startswith("res-"):
        off = _parse_float(raw[4:], key)
        sign = 1.0 if raw[3] == "+" else -1.0
        return OmegaToken("res", sign * off / scale)
    return OmegaToken("abs", _parse_float(raw, key) / scale)


def _parse_duration_token(raw: str, key: str) -> DurationToken:
    raw = raw.strip()
    if raw == "half":
        return DurationToken("half", 1.0)
    if raw.startswith("half*"):
        mult = _parse_float(raw[5:], key)
        if mult <= 0:
            raise ConfigError(f"key {key!r}: half-period multiplier must be > 0")
        return DurationToken("half", mult)
    value = _parse_float(raw, key)
    if value <= 0:
        raise ConfigError(f"key {key!r}: duration must be > 0")
    return DurationToken("abs", value)


def _parse_segments(raw: str, key: str, scale: float) -> tuple[SegmentSpec, ...]:
    specs = []
    for item in (part.strip() for part in raw.split(";")):
        if not item:
            continue
        if "@" not in item:
            raise ConfigError(f"key {key!r}: segment {item!r} is not omega@duration")
        omega_raw, dur_raw = item.split("@", 1)
        specs.append(SegmentSpec(_parse_omega_token(omega_raw, key, scale),
                                 _parse_duration_token(dur_raw, key)))
    if not specs:
        raise ConfigError(f"key {key!r}: no segments given")
    return tuple(specs)


def parse_config(text: str) -> Scenario:
    """Parse and fully validate a flat key = value scenario config."""
    entries: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected key = value, got {line!r}")
        key, _, value = stripped.partition("=")
        key, value = key.strip(), value.strip()
        if key in entries:
            raise ConfigError(f"duplicate key {key!r}")
        entries[key] = value

    for key in BASE_KEYS:
        if key not in entries:
            raise ConfigError(f"missing required key {key!r}")
    task = entries["task"]
    if task not in TASKS:
        raise ConfigError(f"key 'task': unknown task {task!r}, expected one of {TASKS}")

    allowed = set(BASE_KEYS) | {"name"} | set(TASK_KEYS[task]["required"]) \
        | set(TASK_KEYS[task]["optional"])
    for key in entries:
        if key not in allowed:
            raise ConfigError(f"unknown key {key!r} for task {task!r}")
    for key in TASK_KEYS[task]["required"]:
        if key not in entries:
            raise ConfigError(f"missing required key {key!r} for task {task!r}")

    name = entries.get("name", "scenario")
    if not _NAME_RE.match(name):
        raise ConfigError(f"key 'name': {name!r} is not filesystem-safe")

    kind = entries["model"]
    if kind not in MODEL_KINDS:
        raise ConfigError(f"key 'model': unknown model {kind!r}")

    ref = _parse_float(entries["omega_q_ref"], "omega_q_ref")
    if ref <= 0:
        raise ConfigError("key 'omega_q_ref': reference frequency must be > 0")

    def freq(key: str) -> float:
        return _parse_float(entries[key], key) / ref

    cutoff_a = _parse_int(entries["cutoff_a"], "cutoff_a")
    cutoff_b = _parse_int(entries["cutoff_b"], "cutoff_b")
    try:
        cfg = SpaceConfig(cutoff_a=cutoff_a, cutoff_b=cutoff_b)
    except ValueError as exc:
        raise ConfigError(f"key 'cutoff_a'/'cutoff_b': {exc}") from exc

    try:
        rates = DecoherenceRates(kappa_a=freq("kappa_a"), kappa_b=freq("kappa_b"),
                                 gamma=freq("gamma"))
    except ValueError as exc:
        raise ConfigError(f"key 'kappa_a'/'kappa_b'/'gamma': {exc}") from exc

    theta = _parse_float(entries["theta"], "theta")
    omega_a, omega_b = freq("omega_a"), freq("omega_b")
    g_a, g_b = freq("g_a"), freq("g_b")
    try:
        ModelParams(omega_a=omega_a, omega_b=omega_b, omega_q=1.0,
                    g_a=g_a, g_b=g_b, theta=theta)
    except ValueError as exc:
        raise ConfigError(f"model parameters: {exc}") from exc
    if kind != "generalized_rabi" and theta != 0.0:
        raise ConfigError(f"key 'theta': model {kind!r} requires theta = 0")

    fields: dict = {}
    if task == "spectrum-sweep":
        lo = freq("grid_min")
        hi = freq("grid_max")
        count = _parse_int(entries["grid_count"], "grid_count")
        if not hi > lo:
            raise ConfigError("key 'grid_min'/'grid_max': need grid_min < grid_max")
        if count < 2:
            raise ConfigError("key 'grid_count': need at least 2 grid points")
        if lo < 0:
            raise ConfigError("key 'grid_min': qubit frequency must be >= 0")
        fields["grid"] = (lo, hi, count)
        if "track" in entries:
            fields["track"] = _parse_label_list(entries["track"], "track")
    elif task == "anticrossing":
        pair = _parse_label_list(entries["pair"], "pair")
        if len(pair) != 2:
            raise ConfigError("key 'pair': exactly two labels required")
        fields["pair"] = (pair[0], pair[1])
        lo, hi = freq("window_lo"), freq("window_hi")
        if not hi > lo:
            raise ConfigError("key 'window_lo'/'window_hi': need window_lo < window_hi")
        fields["window"] = (lo, hi)
    elif task == "geff-compare":
        fields["process"] = _parse_process(entries["process"], kind)
        values = tuple(_parse_float(s, "g_values") / ref
                       for s in entries["g_values"].split(";") if s.strip())
        if not values:
            raise ConfigError("key 'g_values': no values given")
        if any(v <= 0 for v in values):
            raise ConfigError("key 'g_values': couplings must be > 0")
        fields["g_values"] = values
    elif task == "protocol":
        fields["process"] = _parse_process(entries["process"], kind)
        fields["initial"] = _parse_label(entries["initial"], "initial")
        fields["segments"] = _parse_segments(entries["segments"], "segments", ref)
    elif task == "adiabatic-sweep":
        fields["process"] = _parse_process(entries["process"], kind)
        fields["initial"] = _parse_label(entries["initial"], "initial")
        fields["target"] = _parse_label(entries["target"], "target")
        fields["ramp_from"] = _parse_omega_token(entries["ramp_from"], "ramp_from", ref)
        fields["ramp_to"] = _parse_omega_token(entries["ramp_to"], "ramp_to", ref)
        fields["ramp_time"] = _parse_duration_token(entries["ramp_time"], "ramp_time")
        count = _parse_int(entries["segment_count"], "segment_count")
        if count < 1:
            raise ConfigError("key 'segment_count': must be >= 1")
        fields["segment_count"] = count

    if "sample_dt" in entries:
        sample_dt = _parse_float(entries["sample_dt"], "sample_dt")
        if sample_dt <= 0:
            raise ConfigError("key 'sample_dt': must be > 0")
        fields["sample_dt"] = sample_dt

    # label range checks against the cutoffs
    for lbl in list(fields.get("track", ())) + list(fields.get("pair", ()) or ()) \
            + [fields.get("initial"), fields.get("target")]:
        if lbl is not None and (lbl.n_a >= cfg.cutoff_a or lbl.n_b >= cfg.cutoff_b):
            raise ConfigError(f"label {lbl.text()} outside cutoffs "
                              f"({cfg.cutoff_a}, {cfg.cutoff_b})")

    return Scenario(name=name, kind=kind, omega_a=omega_a, omega_b=omega_b,
                    g_a=g_a, g_b=g_b, theta=theta, omega_q_ref=ref, cfg=cfg,
                    rates=rates, task=task, **fields)


def _parse_process(raw: str, kind: str) -> str:
    if raw not in PROCESSES:
        raise ConfigError(f"key 'process': unknown process {raw!r}, "
                          f"expected one of {sorted(PROCESSES)}")
    if PROCESSES[raw].kind != kind:
        raise ConfigError(f"key 'process': {raw!r} requires model "
                          f"{PROCESSES[raw].kind!r}, config says {kind!r}")
    return raw


def config_text(s: Scenario) -> str:
    """Canonical config rendering; parse_config(config_text(s)) == s
    (with omega_q_ref = 1)."""
    lines = [
        f"name = {s.name}",
        f"model = {s.kind}",
        f"omega_a = {s.omega_a!r}",
        f"omega_b = {s.omega_b!r}",
        "omega_q_ref = 1.0",
        f"g_a = {s.g_a!r}",
        f"g_b = {s.g_b!r}",
        f"theta = {s.theta!r}",
        f"cutoff_a = {s.cfg.cutoff_a}",
        f"cutoff_b = {s.cfg.cutoff_b}",
        f"kappa_a = {s.rates.kappa_a!r}",
        f"kappa_b = {s.rates.kappa_b!r}",
        f"gamma = {s.rates.gamma!r}",
        f"task = {s.task}",
    ]
    if s.task == "spectrum-sweep":
        lines.append(f"grid_min = {s.grid[0]!r}")
        lines.append(f"grid_max = {s.grid[1]!r}")
        lines.append(f"grid_count = {s.grid[2]}")
        if s.track:
            lines.append("track = " + "; ".join(l.text() for l in s.track))
    elif s.task == "anticrossing":
        lines.append("pair = " + "; ".join(l.text() for l in s.pair))
        lines.append(f"window_lo = {s.window[0]!r}")
        lines.append(f"window_hi = {s.window[1]!r}")
    elif s.task == "geff-compare":
        lines.append(f"process = {s.process}")
        lines.append("g_values = " + "; ".join(repr(v) for v in s.g_values))
    elif s.task == "protocol":
        lines.append(f"process = {s.process}")
        lines.append(f"initial = {s.initial.text()}")
        lines.append("segments = " + "; ".join(seg.text() for seg in s.segments))
        lines.append(f"sample_dt = {s.sample_dt!r}")
    elif s.task == "adiabatic-sweep":
        lines.append(f"process = {s.process}")
        lines.append(f"initial = {s.initial.text()}")
        lines.append(f"target = {s.target.text()}")
        lines.append(f"ramp_from = {s.ramp_from.text()}")
        lines.append(f"ramp_to = {s.ramp_to.text()}")
        lines.append(f"ramp_time = {s.ramp_time.text()}")
        lines.append(f"segment_count = {s.segment_count}")
        lines.append(f"sample_dt = {s.sample_dt!r}")
    return "\n".join(lines) + "\n"


def auto_window(process: ConversionProcess, p: ModelParams) -> tuple[float, float]:
    """Search window around the nominal resonance, wide enough to cover the
    coupling-induced shift of the anticrossing center (which grows like g^2
    and dominates the splitting scale already at moderate coupling)."""
    center = process.resonance(p.omega_a, p.omega_b)
    g_max = max(p.g_a, p.g_b)
    half = 0.02 + 3.2 * g_max**2 + 20.0 * abs(process.analytic(p))
    return center - half, center + half


def half_rabi_period(process: ConversionProcess, p: ModelParams) -> float:
    """pi / (2 |g_eff|) from the analytic on-resonance coupling."""
    g_eff = abs(process.analytic(p))
    if g_eff == 0.0:
        raise ValueError("analytic effective coupling vanishes; no Rabi period")
    return math.pi / (2.0 * g_eff)
