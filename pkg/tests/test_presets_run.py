"""Every bundled preset parses, runs to completion and produces its files.

Protocol and ramp presets run here at reduced cutoffs to keep the suite
quick; the full-cutoff physics is exercised by the acceptance suite.
"""

import csv
from dataclasses import replace

import pytest

from freqconv import presets
from freqconv.cli import run_scenario
from freqconv.fockspace import SpaceConfig
from freqconv.scenario import DurationToken, config_text, parse_config

CHEAP_TASKS = {"spectrum-sweep", "anticrossing", "geff-compare"}


def small(s):
    """Shrink a preset for smoke testing without changing its structure."""
    s = replace(s, cfg=SpaceConfig(4, 4))
    if s.task == "spectrum-sweep":
        s = replace(s, grid=(s.grid[0], s.grid[1], 41))
    if s.task == "protocol":
        s = replace(s, sample_dt=4.0)
    if s.task == "adiabatic-sweep":
        s = replace(s, ramp_time=DurationToken("half", 0.05),
                    segment_count=100, sample_dt=2.0)
    return s


@pytest.mark.parametrize("name", presets.PRESET_NAMES)
def test_default_task_runs(name, tmp_path):
    scenario = small(presets.build(name))
    outputs = run_scenario(scenario, tmp_path, quiet=True)
    assert (tmp_path / "manifest.tsv").exists()
    assert len(outputs) >= 2
    for path in outputs:
        assert path.exists() and path.stat().st_size > 0


@pytest.mark.parametrize("name", ["fig2", "fig5", "fig7"])
def test_anticross_task_runs(name, tmp_path):
    scenario = small(presets.build(name, task="anticrossing"))
    run_scenario(scenario, tmp_path, quiet=True)
    with open(tmp_path / f"{name}_anticross.csv") as fh:
        rows = list(csv.reader(fh))
    omega_star = float(rows[1][0])
    assert 0.95 < omega_star < 1.25


def test_sweep_task_runs(tmp_path):
    scenario = small(presets.build("fig2", task="adiabatic-sweep"))
    run_scenario(scenario, tmp_path, quiet=True)
    with open(tmp_path / "fig2_sweep_summary.csv") as fh:
        rows = list(csv.reader(fh))
    assert 0.0 <= float(rows[1][0]) <= 1.0


def test_two_photon_eg_protocol_converts(tmp_path):
    """The |1,0,e> -> |0,2,g> rapid tune ends with two photons in b and the
    qubit de-excited."""
    scenario = small(presets.build("fig7b"))
    run_scenario(scenario, tmp_path, quiet=True)
    with open(tmp_path / "fig7b_timeseries.csv") as fh:
        rows = list(csv.reader(fh))
    data = [[float(x) for x in row] for row in rows[1:]]
    peak_nb = max(row[2] for row in data)
    final_nq = data[-1][3]
    assert peak_nb > 1.7
    assert final_nq < 0.1


@pytest.mark.parametrize("name", presets.PRESET_NAMES)
def test_config_text_round_trip_default_task(name):
    built = presets.build(name)
    assert parse_config(config_text(built)) == built
