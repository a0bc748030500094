"""Command-line interface: happy paths, artifacts, and exit codes."""
import json

import pytest

from coolspin import CoolingPlan, PulseSequence, PopulationState, example_system
from coolspin.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_bound_defaults(capsys):
    code, out, err = run(capsys, "bound")
    assert code == 0
    assert "a_max: 1.5" in out
    assert "enhancement: 1.5" in out
    assert "k_max(n=3, eps0=3e-05)" in out
    assert err == ""


def test_bound_with_overrides(capsys):
    code, out, _ = run(capsys, "bound", "--n", "1000000000", "--eps0", "3e-5")
    assert code == 0
    assert "k_max(n=1000000000, eps0=3e-05): 0.649212768497" in out


def test_bound_with_custom_system_and_spin(capsys, tmp_path):
    path = tmp_path / "sys.json"
    example_system().save(path)
    code, out, _ = run(capsys, "bound", "--system", str(path), "--spin", "b")
    assert code == 0
    assert "spin: b" in out


def test_boost_reports_marginals_and_writes_state(capsys, tmp_path):
    out_path = tmp_path / "post.json"
    code, out, _ = run(capsys, "boost", "--eps0", "0.5", "--out", str(out_path))
    assert code == 0
    assert "eps_a: 0.6875" in out
    assert "eps_b: 0.3125" in out
    assert "eps_c: -0.25" in out
    assert "enhancement: 1.375" in out
    assert "post relative polarization (thermal = 1): a=1.5 b=0.5 c=0" in out
    state = PopulationState.from_dict(json.loads(out_path.read_text()))
    assert state.n == 3


def test_boost_rejects_bad_polarization(capsys):
    code, out, err = run(capsys, "boost", "--eps0", "1.5")
    assert code == 2
    assert out == ""
    assert "error:" in err


def test_cool_happy_path_and_plan_artifact(capsys, tmp_path):
    out_path = tmp_path / "plan.json"
    code, out, _ = run(
        capsys, "cool", "--n", "9", "--eps0", "1e-3", "--target-eps", "2.2e-3",
        "--mode", "both", "--out", str(out_path),
    )
    assert code == 0
    assert "round 1: 3 boosts" in out
    assert "round 2: 1 boosts" in out
    assert "total gates: 32" in out
    assert "exact vs approx max difference:" in out
    plan = CoolingPlan.from_dict(json.loads(out_path.read_text()))
    assert plan.total_gate_count == 32


def test_cool_unreachable_target_exits_3(capsys):
    code, _, err = run(capsys, "cool", "--n", "6", "--eps0", "1e-3", "--target-eps", "2.2e-3")
    assert code == 3
    assert "infeasible:" in err


def test_cool_exact_mode_beyond_capacity_exits_4(capsys):
    code, _, err = run(
        capsys, "cool", "--n", "27", "--eps0", "1e-5", "--target-eps", "1.4e-5",
        "--mode", "exact",
    )
    assert code == 4
    assert "capacity:" in err


def test_compile_default_circuit_verifies(capsys, tmp_path):
    out_path = tmp_path / "seq.json"
    code, out, _ = run(capsys, "compile", "--out", str(out_path))
    assert code == 0
    assert "events: 38" in out
    assert "pulses: 23" in out
    assert "verification: PASS" in out
    seq = PulseSequence.from_json(out_path.read_text())
    assert seq.pulse_count() == 23


def test_compile_custom_circuit_and_options(capsys, tmp_path):
    circuit = tmp_path / "circuit.txt"
    circuit.write_text("CNOT b c\n")
    code, out, _ = run(
        capsys, "compile", "--circuit", str(circuit), "--z-mode", "pulsed",
        "--pulse90-s", "1e-3",
    )
    assert code == 0
    assert "verification: PASS" in out


def test_compile_rotation_circuit_skips_pattern_check(capsys, tmp_path):
    circuit = tmp_path / "circuit.txt"
    circuit.write_text("RY a 45\n")
    code, out, _ = run(capsys, "compile", "--circuit", str(circuit))
    assert code == 0
    assert "verification: SKIPPED" in out


def test_compile_missing_circuit_file_exits_2(capsys, tmp_path):
    code, _, err = run(capsys, "compile", "--circuit", str(tmp_path / "nope.txt"))
    assert code == 2
    assert "error:" in err


def test_spectrum_thermal_csv(capsys):
    code, out, _ = run(capsys, "spectrum")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "freq_hz,amplitude"
    assert len(lines) == 5
    assert all(line.endswith(",1.0") for line in lines[1:])


def test_spectrum_boosted_matches_boost_artifact(capsys, tmp_path):
    state_path = tmp_path / "post.json"
    run(capsys, "boost", "--eps0", "3e-5", "--out", str(state_path))

    code, direct, _ = run(capsys, "spectrum", "--boosted", "--spin", "a")
    assert code == 0
    code, via_file, _ = run(capsys, "spectrum", "--state", str(state_path), "--spin", "a")
    assert code == 0
    assert via_file == direct
    amplitudes = [line.split(",")[1] for line in direct.strip().splitlines()[1:]]
    assert amplitudes == ["1.0", "2.0", "1.0", "2.0"]


def test_spectrum_out_file(capsys, tmp_path):
    out_path = tmp_path / "lines.csv"
    code, out, _ = run(capsys, "spectrum", "--out", str(out_path))
    assert code == 0
    assert f"wrote {out_path}" in out
    assert out_path.read_text().startswith("freq_hz,amplitude\n")


def test_spectrum_unknown_spin_exits_2(capsys):
    code, _, err = run(capsys, "spectrum", "--spin", "q")
    assert code == 2
    assert "unknown spin label" in err


def test_spectrum_corrupt_state_file_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "spectrum", "--state", str(bad))
    assert code == 2
    assert "error:" in err


def test_running_as_a_module_works():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "coolspin", "bound"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "a_max: 1.5" in proc.stdout
