import math

import pytest

from freqconv import presets
from freqconv.fockspace import BasisLabel
from freqconv.scenario import (
    ConfigError,
    DurationToken,
    OmegaToken,
    config_text,
    parse_config,
)


def base_config(**overrides):
    entries = {
        "name": "t1",
        "model": "generalized_rabi",
        "omega_a": "3.0",
        "omega_b": "2.0",
        "omega_q_ref": "1.0",
        "g_a": "0.15",
        "g_b": "0.15",
        "theta": repr(math.pi / 6),
        "cutoff_a": "4",
        "cutoff_b": "4",
        "kappa_a": "4e-5",
        "kappa_b": "4e-5",
        "gamma": "4e-5",
        "task": "spectrum-sweep",
        "grid_min": "0.8",
        "grid_max": "1.2",
        "grid_count": "11",
    }
    entries.update({k: v for k, v in overrides.items() if v is not None})
    for key, value in overrides.items():
        if value is None:
            entries.pop(key, None)
    return "\n".join(f"{k} = {v}" for k, v in entries.items())


class TestParse:
    def test_basic(self):
        s = parse_config(base_config())
        assert s.name == "t1"
        assert s.kind == "generalized_rabi"
        assert s.grid == (0.8, 1.2, 11)
        assert s.cfg.dim == 32

    def test_comments_and_blanks(self):
        text = "# header\n\n" + base_config() + "\n  # trailing\n"
        assert parse_config(text).name == "t1"

    def test_single_photon_preset_parameters(self):
        """The bundled single-photon preset carries the generalized model at
        g = 0.15, theta = pi/6, omega_a = 3, omega_b = 2, kappa = gamma = 4e-5."""
        s = presets.build("fig2")
        assert s.kind == "generalized_rabi"
        assert (s.g_a, s.g_b) == (0.15, 0.15)
        assert s.theta == pytest.approx(math.pi / 6, abs=0)
        assert (s.omega_a, s.omega_b) == (3.0, 2.0)
        assert s.rates.kappa_a == s.rates.kappa_b == s.rates.gamma == 4e-5
        assert s.task == "spectrum-sweep"

    def test_two_photon_preset_parameters(self):
        s = presets.build("fig5")
        assert s.kind == "quantum_rabi"
        assert (s.g_a, s.g_b) == (0.2, 0.2)
        assert (s.omega_a, s.omega_b) == (5.0, 2.0)
        assert s.rates.kappa_a == s.rates.kappa_b == s.rates.gamma == 2e-5

    @pytest.mark.parametrize("name", presets.PRESET_NAMES)
    @pytest.mark.parametrize("task", [None, "spectrum-sweep", "anticrossing",
                                      "geff-compare", "protocol",
                                      "adiabatic-sweep"])
    def test_preset_round_trip(self, name, task):
        built = presets.build(name, task=task)
        assert parse_config(config_text(built)) == built

    def test_negative_cutoff_names_key(self):
        with pytest.raises(ConfigError, match="cutoff_a"):
            parse_config(base_config(cutoff_a="-3"))

    def test_unknown_key(self):
        with pytest.raises(ConfigError, match="frequency_shift"):
            parse_config(base_config() + "\nfrequency_shift = 1.0")

    def test_missing_key(self):
        with pytest.raises(ConfigError, match="gamma"):
            parse_config(base_config(gamma=None))

    def test_unparsable_number(self):
        with pytest.raises(ConfigError, match="g_a"):
            parse_config(base_config(g_a="strong"))

    def test_duplicate_key(self):
        with pytest.raises(ConfigError, match="duplicate"):
            parse_config(base_config() + "\ng_a = 0.1")

    def test_unknown_task(self):
        with pytest.raises(ConfigError, match="task"):
            parse_config(base_config(task="resonances"))

    def test_task_key_leakage(self):
        # spectrum keys are not valid for the anticrossing task
        with pytest.raises(ConfigError, match="grid_min"):
            parse_config(base_config(task="anticrossing", pair="1,0,g; 0,1,e",
                                     window_lo="0.9", window_hi="1.1"))

    def test_theta_restricted_to_generalized(self):
        with pytest.raises(ConfigError, match="theta"):
            parse_config(base_config(model="quantum_rabi"))

    def test_label_outside_cutoffs(self):
        with pytest.raises(ConfigError, match="outside cutoffs"):
            parse_config(base_config(track="5,0,g"))

    def test_bad_name(self):
        with pytest.raises(ConfigError, match="name"):
            parse_config(base_config(name="a b/c"))

    def test_process_model_mismatch(self):
        text = base_config(task="geff-compare", grid_min=None, grid_max=None,
                           grid_count=None, process="two_photon_ge",
                           g_values="0.1; 0.2")
        with pytest.raises(ConfigError, match="process"):
            parse_config(text)

    def test_reference_frequency_rescaling(self):
        """Frequencies are interpreted in units of omega_q_ref."""
        scaled = parse_config(base_config(
            omega_q_ref="2.0", omega_a="6.0", omega_b="4.0", g_a="0.3",
            g_b="0.3", kappa_a="8e-5", kappa_b="8e-5", gamma="8e-5",
            grid_min="1.6", grid_max="2.4"))
        plain = parse_config(base_config())
        assert scaled.omega_a == plain.omega_a
        assert scaled.g_a == plain.g_a
        assert scaled.rates == plain.rates
        assert scaled.grid[0] == pytest.approx(plain.grid[0], rel=1e-15)

    def test_segment_tokens(self):
        text = base_config(task="protocol", grid_min=None, grid_max=None,
                           grid_count=None, process="single_photon",
                           initial="1,0,g",
                           segments="0.9@60; res@half; res-0.01@half*2; 0.9@120",
                           sample_dt="0.5")
        s = parse_config(text)
        assert s.segments[0] == (OmegaToken("abs", 0.9), DurationToken("abs", 60.0))
        assert s.segments[1] == (OmegaToken("res", 0.0), DurationToken("half", 1.0))
        assert s.segments[2] == (OmegaToken("res", -0.01),
                                 DurationToken("half", 2.0))
        assert s.sample_dt == 0.5

    def test_bad_segment(self):
        text = base_config(task="protocol", grid_min=None, grid_max=None,
                           grid_count=None, process="single_photon",
                           initial="1,0,g", segments="0.9:60")
        with pytest.raises(ConfigError, match="segments"):
            parse_config(text)

    def test_pair_needs_two_labels(self):
        text = base_config(task="anticrossing", grid_min=None, grid_max=None,
                           grid_count=None, pair="1,0,g",
                           window_lo="0.9", window_hi="1.1")
        with pytest.raises(ConfigError, match="pair"):
            parse_config(text)


class TestPresets:
    def test_default_tasks(self):
        assert presets.build("fig2").task == "spectrum-sweep"
        assert presets.build("fig3b").task == "protocol"
        assert presets.build("fig4").task == "geff-compare"
        assert presets.build("fig5b").task == "protocol"
        assert presets.build("fig8").task == "geff-compare"

    def test_task_override(self):
        s = presets.build("fig2", task="anticrossing")
        assert s.task == "anticrossing"
        assert s.pair == (BasisLabel(1, 0, "g"), BasisLabel(0, 1, "e"))
        lo, hi = s.window
        assert lo < 1.0 < hi

    def test_unknown_preset(self):
        with pytest.raises(ConfigError):
            presets.build("fig9")

    def test_eg_family_pair(self):
        s = presets.build("fig7", task="anticrossing")
        assert s.pair == (BasisLabel(1, 0, "e"), BasisLabel(0, 2, "g"))

    def test_geff_grids_cover_claim_points(self):
        assert {0.05, 0.1, 0.15, 0.2} <= set(presets.build("fig4").g_values)
        assert {0.1, 0.2, 0.3} <= set(presets.build("fig6").g_values)
        assert {0.02, 0.03, 0.1, 0.15} <= set(presets.build("fig8").g_values)
