import json
import math

import numpy as np
import pytest

from heun_pulses.cli import (EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, main, parse_args,
                             resolve_grid, resolve_params, resolve_pulse)
from heun_pulses.pulses import PulseKind
from heun_pulses.state import currentRun
from heun_pulses.writeback import ANALYTIC_COLUMNS, TRAJECTORY_HEADER, load_table


@pytest.fixture
def s(tmp_path, monkeypatch):
    monkeypatch.setenv(currentRun.OUT_DIR_ENV, str(tmp_path))
    return currentRun(quiet=True)


def run_cli(s, *argv) -> int:
    return main(list(argv), s)


# ---------------------------------------------------------------------------
# Argument resolution

def test_caption_preset_sets_kind_and_params(s):
    s.load_presets()
    config = parse_args(["pulse", "--caption", "far-detuned-pair"])
    params = resolve_params(config, s)
    assert params.gamma == pytest.approx(0.25)
    assert params.beta == pytest.approx(2.5)
    assert resolve_pulse(config, s).kind == PulseKind.OMEGA_PLUS


def test_physical_flags_override_caption(s):
    s.load_presets()
    params = resolve_params(parse_args(["pulse", "--caption", "far-detuned-pair", "--omega0", "0.04"]), s)
    assert params.gamma == pytest.approx(0.5)
    assert params.beta == pytest.approx(2.5)
    params = resolve_params(parse_args(["pulse", "--caption", "far-detuned-pair", "--beta", "0"]), s)
    assert params.beta == 0.0


def test_analytic_grid_stays_inside_unsaturated_window(s):
    s.load_presets()
    config = parse_args(["analytic", "--kind", "omega-plus"])
    cfg = resolve_grid(config, s, resolve_pulse(config, s), analytic=True)
    assert cfg.tau_span == (-20.0, 8.0)
    assert cfg.sample_span == (-8.0, 8.0)


# ---------------------------------------------------------------------------
# Commands

def test_pulse_table(s, tmp_path):
    assert run_cli(s, "pulse", "--kind", "omega-delta", "--delta-param", "2", "--gamma", "0.3",
                   "--out", "pulse.csv") == EXIT_OK
    header, rows = load_table(tmp_path / "pulse.csv")
    assert header == ["tau", "omega"]
    assert len(rows) == 401
    tau, values = np.array(rows).T
    assert tau[0] == -20.0
    expected = 0.3 / np.cosh(tau) / np.sqrt(2.0 - np.tanh(tau))
    assert np.allclose(values, expected, rtol=1e-12, atol=0)


def test_evolve_riccati_columns(s, tmp_path):
    assert run_cli(s, "evolve", "--kind", "sech", "--gamma", "0.5", "--method", "riccati",
                   "--samples", "21", "--out", "ric.csv") == EXIT_OK
    header, rows = load_table(tmp_path / "ric.csv")
    assert header == ["tau", "abs_ca", "pa"]
    assert len(rows) == 21
    assert rows[-1][2] == pytest.approx(1.0, abs=1e-7)


def test_compare_is_accurate_and_reproducible(s, tmp_path):
    argv = ["compare", "--kind", "omega-plus", "--gamma", "0.25", "--beta", "2.5", "--samples", "81"]
    assert run_cli(s, *argv, "--out", "a.csv") == EXIT_OK
    assert run_cli(s, *argv, "--out", "b.csv") == EXIT_OK
    header, rows = load_table(tmp_path / "a.csv")
    assert header == TRAJECTORY_HEADER + ANALYTIC_COLUMNS
    assert len(rows) == 81
    assert max(row[-1] for row in rows) <= 1e-6
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_sweep_keeps_input_order(s, tmp_path):
    assert run_cli(s, "sweep", "--kind", "sech", "--beta", "0", "--vary", "gamma",
                   "--values", "0.5", "0.25", "--out", "sweep.csv") == EXIT_OK
    header, rows = load_table(tmp_path / "sweep.csv")
    assert header == ["index", "gamma", "pa_final", "pb_final"]
    assert [row[0] for row in rows] == [0.0, 1.0]
    assert rows[0][2] == pytest.approx(1.0, abs=1e-10)
    assert rows[1][2] == pytest.approx(0.5, abs=1e-10)


def test_final_report(s, tmp_path):
    assert run_cli(s, "final", "--kind", "sech", "--gamma", "0.5", "--out", "final.json") == EXIT_OK
    report = json.loads((tmp_path / "final.json").read_text(encoding="utf-8"))
    assert report["schema_version"] == 1
    assert report["kind"] == "sech"
    assert report["area"] == pytest.approx(math.pi, rel=1e-8)
    assert report["pa_final"] == pytest.approx(1.0, abs=1e-10)
    assert report["pa_final"] + report["pb_final"] == pytest.approx(1.0)


def test_xuv_report(s, tmp_path):
    assert run_cli(s, "xuv", "--out", "xuv.json") == EXIT_OK
    report = json.loads((tmp_path / "xuv.json").read_text(encoding="utf-8"))
    assert set(report) == {"schema_version", "preset", "signal", "energy_bracket", "emission"}
    bracket = report["energy_bracket"]
    assert bracket["conversion"].startswith("c * eps0")
    assert bracket["field_min_J"] == pytest.approx(2.36e-11, rel=2e-2)
    assert bracket["stored_min_J"] == pytest.approx(1.98645e-9, rel=1e-4)
    assert bracket["stored_max_J"] == pytest.approx(1.98645e-6, rel=1e-4)
    assert report["signal"]["omega4_per_s"] == pytest.approx(2.98e11, rel=1e-2)
    assert report["signal"]["pulse_energy_J"] == pytest.approx(2.36e-9, rel=2e-2)
    assert report["emission"]["pulse_duration_s"] == pytest.approx(6.686e-12, rel=1e-3)


def test_xuv_named_medium_preset(s, tmp_path):
    assert run_cli(s, "xuv", "--preset", "paper-sec5", "--out", "sec5.json") == EXIT_OK
    report = json.loads((tmp_path / "sec5.json").read_text(encoding="utf-8"))
    assert report["preset"] == "paper-sec5"
    bracket = report["energy_bracket"]
    assert bracket["beam_area_cm2"] == pytest.approx(1e-4)
    assert bracket["densities_per_cm3"][0] == pytest.approx(1e16)
    assert bracket["densities_per_cm3"][-1] == pytest.approx(1e19)
    assert bracket["field_max_J"] == pytest.approx(23.6, rel=2e-2)
    assert bracket["field_decades"] == pytest.approx(12.0, abs=1e-6)
    assert bracket["stored_min_J"] <= 1e-6 and bracket["stored_max_J"] >= 1e-8


def test_xuv_unknown_medium_preset(s):
    assert run_cli(s, "xuv", "--preset", "no-such-medium") == EXIT_USAGE


def test_propagate_grid(s, tmp_path):
    assert run_cli(s, "propagate", "--z-points", "4", "--samples", "5", "--out", "emit.csv") == EXIT_OK
    header, rows = load_table(tmp_path / "emit.csv")
    assert header == ["z", "tau", "theta", "omega"]
    assert len(rows) == 20
    # z = 0 row: nothing emitted yet
    assert all(abs(row[2]) < 1e-15 for row in rows[:5])


# ---------------------------------------------------------------------------
# Exit statuses

def test_box_without_duration_is_a_usage_error(s, capsys):
    assert run_cli(s, "pulse", "--kind", "box") == EXIT_USAGE
    assert "heun_pulses pulse" in capsys.readouterr().err


def test_omega_one_has_no_final_population(s):
    assert run_cli(s, "final", "--kind", "omega-one") == EXIT_USAGE


def test_unknown_caption(s):
    assert run_cli(s, "pulse", "--caption", "no-such-caption") == EXIT_USAGE


def test_bad_flag_exits_with_usage_status(s):
    with pytest.raises(SystemExit) as exc:
        run_cli(s, "pulse", "--no-such-flag")
    assert exc.value.code == EXIT_USAGE


def test_saturated_phase_is_a_numerical_error(s, capsys):
    assert run_cli(s, "analytic", "--kind", "sech", "--tau-min", "-400") == EXIT_NUMERICAL
    assert "InfiniteTimeError" in capsys.readouterr().err


@pytest.mark.slow
def test_verify_report(s, tmp_path):
    assert run_cli(s, "verify", "--out", "verify.json") == EXIT_VERIFY
    report = json.loads((tmp_path / "verify.json").read_text(encoding="utf-8"))
    assert report["overall"] == "fail"
    failed = {c["name"] for c in report["checks"] if c["status"] == "fail"}
    assert failed == {"smooth_box_convergence", "xuv_estimate"}
