"""Bundled scenario presets for the studied figure-style parameter sets.

Three parameter families cover the three conversion processes:

  single-photon  |1,0,g> <-> |0,1,e>   generalized model, g = 0.15, theta = pi/6,
                                       omega_a = 3, omega_b = 2, kappa = 4e-5
  two-photon ge  |1,0,g> <-> |0,2,e>   quantum Rabi, g = 0.2, omega_a = 5,
                                       omega_b = 2, kappa = 2e-5
  two-photon eg  |1,0,e> <-> |0,2,g>   quantum Rabi, g = 0.125, omega_a = 3,
                                       omega_b = 2, kappa = 4e-5

Each preset name selects a family plus a default task (level sweep, rapid-tune
protocol, or analytic/numeric coupling comparison); any subcommand can load
any preset, picking up that family's defaults for its task.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .dynamics import DecoherenceRates
from .effcoupling import PROCESSES
from .fockspace import SpaceConfig
from .scenario import (
    ConfigError,
    DurationToken,
    OmegaToken,
    Scenario,
    SegmentSpec,
    auto_window,
)

_DETUNED = 0.9          # far-detuned parking frequency for rapid-tune protocols
_DEFAULT_CUTOFF = 6


@dataclass(frozen=True)
class _Family:
    process: str
    kind: str
    omega_a: float
    omega_b: float
    g: float
    theta: float
    kappa: float
    geff_grid: tuple[float, ...]
    protocol_sample_dt: float


def _grid(start: float, stop: float, step: float) -> tuple[float, ...]:
    n = round((stop - start) / step) + 1
    return tuple(round(start + i * step, 12) for i in range(n))


_FAMILIES = {
    "single": _Family(process="single_photon", kind="generalized_rabi",
                      omega_a=3.0, omega_b=2.0, g=0.15, theta=math.pi / 6,
                      kappa=4e-5, geff_grid=_grid(0.01, 0.20, 0.01),
                      protocol_sample_dt=0.5),
    "ge": _Family(process="two_photon_ge", kind="quantum_rabi",
                  omega_a=5.0, omega_b=2.0, g=0.2, theta=0.0,
                  kappa=2e-5, geff_grid=_grid(0.02, 0.30, 0.02),
                  protocol_sample_dt=1.0),
    "eg": _Family(process="two_photon_eg", kind="quantum_rabi",
                  omega_a=3.0, omega_b=2.0, g=0.125, theta=0.0,
                  kappa=4e-5, geff_grid=_grid(0.01, 0.15, 0.01),
                  protocol_sample_dt=0.5),
}

_PRESET_FAMILY = {
    "fig2": "single", "fig3b": "single", "fig4": "single",
    "fig5": "ge", "fig5b": "ge", "fig6": "ge",
    "fig7": "eg", "fig7b": "eg", "fig8": "eg",
}

_PRESET_TASK = {
    "fig2": "spectrum-sweep", "fig3b": "protocol", "fig4": "geff-compare",
    "fig5": "spectrum-sweep", "fig5b": "protocol", "fig6": "geff-compare",
    "fig7": "spectrum-sweep", "fig7b": "protocol", "fig8": "geff-compare",
}

PRESET_NAMES = tuple(_PRESET_FAMILY)


def build(name: str, task: str | None = None) -> Scenario:
    """Construct a preset scenario, optionally overriding its default task."""
    if name not in _PRESET_FAMILY:
        raise ConfigError(f"unknown preset {name!r}, expected one of {PRESET_NAMES}")
    fam = _FAMILIES[_PRESET_FAMILY[name]]
    task = task or _PRESET_TASK[name]
    proc = PROCESSES[fam.process]

    base = Scenario(
        name=name, kind=fam.kind, omega_a=fam.omega_a, omega_b=fam.omega_b,
        g_a=fam.g, g_b=fam.g, theta=fam.theta, omega_q_ref=1.0,
        cfg=SpaceConfig(_DEFAULT_CUTOFF, _DEFAULT_CUTOFF),
        rates=DecoherenceRates(kappa_a=fam.kappa, kappa_b=fam.kappa,
                               gamma=fam.kappa),
        task=task,
    )
    pair = proc.pair
    p = base.params(omega_q=proc.resonance(fam.omega_a, fam.omega_b))
    base = replace(base, process=fam.process)

    if task == "spectrum-sweep":
        return replace(base, process=None, grid=(0.5, 1.5, 501), track=pair)
    if task == "anticrossing":
        return replace(base, process=None, pair=pair, window=auto_window(proc, p))
    if task == "geff-compare":
        return replace(base, g_values=fam.geff_grid)
    if task == "protocol":
        segments = (
            SegmentSpec(OmegaToken("abs", _DETUNED), DurationToken("abs", 60.0)),
            SegmentSpec(OmegaToken("res", 0.0), DurationToken("half", 1.0)),
            SegmentSpec(OmegaToken("abs", _DETUNED), DurationToken("abs", 120.0)),
        )
        return replace(base, initial=pair[0], segments=segments,
                       sample_dt=fam.protocol_sample_dt)
    if task == "adiabatic-sweep":
        span = 8.0 * abs(proc.analytic(p))
        ramp_time = DurationToken("half", 12.0)
        sample = max(1.0, 12.0 * math.pi / (2.0 * abs(proc.analytic(p))) / 1000.0)
        return replace(base, initial=pair[0], target=pair[1],
                       ramp_from=OmegaToken("res", -span),
                       ramp_to=OmegaToken("res", +span),
                       ramp_time=ramp_time, segment_count=400,
                       sample_dt=round(sample, 6))
    raise ConfigError(f"unknown task {task!r}")
