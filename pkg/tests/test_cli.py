import json
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from poolgame.cli import main
from poolgame.errors import InputError
from poolgame.scenario import dump_scenario, dumps_scenario, load_scenario, parse_scenario

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


def write(tmp_path, data, name="s.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def run_cli(*argv):
    return main(list(argv))


def test_axioms_linear_ok(capsys):
    assert run_cli("axioms", "--scenario", str(SCENARIOS / "worked.json")) == 0
    out = capsys.readouterr().out
    assert "sybil_resilience: ok" in out and "egalitarianism: ok" in out


def test_axioms_capped_witness(capsys):
    assert run_cli("axioms", "--scenario", str(SCENARIOS / "capped.json")) == 1
    assert "sybil_resilience: violated" in capsys.readouterr().out


def test_malformed_rational_exit_2(tmp_path):
    path = write(tmp_path, {"universe": ["1/0", "1"], "reward": {"kind": "linear", "gamma": 1}})
    assert run_cli("axioms", "--scenario", path) == 2


@pytest.mark.parametrize(
    "data",
    [
        {"universe": [0.5, 0.5], "reward": {"kind": "linear", "gamma": 1}},
        {"universe": ["1/2", "1/2"], "reward": {"kind": "linear", "gamma": 1}, "colour": "red"},
        {"universe": ["1/2", "1/2"], "reward": {"kind": "linear", "gamma": 1, "beta": 1}},
        {"universe": ["1/2", "1/2"]},
    ],
)
def test_input_errors_exit_2(tmp_path, data):
    assert run_cli("axioms", "--scenario", write(tmp_path, data)) == 2


def test_missing_file_and_bad_json(tmp_path):
    assert run_cli("axioms", "--scenario", str(tmp_path / "nope.json")) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run_cli("axioms", "--scenario", str(bad)) == 2


def test_equilibrium_strong_nash(capsys):
    assert run_cli("equilibrium", "--scenario", str(SCENARIOS / "worked.json")) == 0
    out = capsys.readouterr().out
    assert "verdict: StrongNash" in out and "spread_condition: true" in out
    assert "viable=true cost_efficient=true" in out


def test_equilibrium_certificate(capsys, tmp_path):
    csv_path = tmp_path / "coalitions.csv"
    code = run_cli("equilibrium", "--scenario", str(SCENARIOS / "counterexample.json"), "--csv", str(csv_path))
    assert code == 1
    out = capsys.readouterr().out
    assert "verdict: NotStrongNash" in out
    assert "old_utilities: 0:9/4" in out and "new_utilities: 0:3" in out
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "coalition,deviations_checked,improving,partition,inactive"
    assert len(lines) == 1 + 3


def test_equilibrium_enumeration_limit(tmp_path):
    n = 30
    data = {
        "universe": [f"1/{n}"] * n,
        "cost": {"kind": "operator_linear", "fixed": [1] * n, "marginal": [0] * n},
        "reward": {"kind": "linear", "gamma": 10},
        "configuration": {"pools": [list(range(n))]},
    }
    assert run_cli("equilibrium", "--scenario", write(tmp_path, data)) == 3


def test_equilibrium_pareto_flag(capsys):
    assert run_cli("equilibrium", "--scenario", str(SCENARIOS / "worked.json"), "--mode", "pareto") == 0
    assert "mode: pareto" in capsys.readouterr().out


def test_dynamics_csv(tmp_path, capsys):
    csv_path = tmp_path / "trace.csv"
    assert run_cli("dynamics", "--scenario", str(SCENARIOS / "capped_fixed_cost.json"), "--csv", str(csv_path)) == 0
    rows = csv_path.read_text().splitlines()
    assert rows[0].startswith("iteration,mover,move,pool_count")
    assert rows[-1].split(",")[3] == "2"
    assert "converged=true" in capsys.readouterr().err


def test_dynamics_fixpoint_header_only(tmp_path, capsys):
    csv_path = tmp_path / "trace.csv"
    assert run_cli("dynamics", "--scenario", str(SCENARIOS / "worked.json"), "--csv", str(csv_path)) == 0
    assert len(csv_path.read_text().splitlines()) == 1
    assert "converged=true" in capsys.readouterr().err


def test_dynamics_cutoff(capsys):
    assert run_cli("dynamics", "--scenario", str(SCENARIOS / "capped_fixed_cost.json"), "--max-iter", "1") == 0
    assert "converged=false" in capsys.readouterr().err


def test_simulate_csv(tmp_path):
    csv_path = tmp_path / "sim.csv"
    assert run_cli("simulate", "--scenario", str(SCENARIOS / "worked.json"), "--csv", str(csv_path)) == 0
    rows = csv_path.read_text().splitlines()
    assert len(rows) == 11
    assert all(r.split(",")[1] == "50" for r in rows[1:])
    assert run_cli("simulate", "--scenario", str(SCENARIOS / "worked.json"), "--epochs", "0", "--csv", str(csv_path)) == 0
    assert len(csv_path.read_text().splitlines()) == 1


def test_emission_table(tmp_path, capsys):
    csv_path = tmp_path / "em.csv"
    code = run_cli("emission", "--scenario", str(SCENARIOS / "worked.json"), "--through", "25", "--csv", str(csv_path))
    assert code == 0
    rows = [r.split(",") for r in csv_path.read_text().splitlines()]
    assert rows[10] == ["9", "50", "500"]
    assert rows[26][:2] == ["25", "25/2"]
    assert "supremum=1000" in capsys.readouterr().err


def test_console_script_module_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "poolgame.cli", "emission", "--scenario", str(SCENARIOS / "worked.json"), "--through", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines() == ["epoch,emission,cumulative", "0,50,50", "1,50,100", "2,50,150"]


@pytest.mark.parametrize("name", sorted(p.name for p in SCENARIOS.glob("*.json")))
def test_round_trip_sample_scenarios(name):
    sc = load_scenario(SCENARIOS / name)
    again = parse_scenario(json.loads(dumps_scenario(sc)))
    assert again == sc
    assert dump_scenario(again) == dump_scenario(sc)


rat = st.fractions(min_value=0, max_value=20, max_denominator=9)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(1, 9), min_size=1, max_size=5),
    rat,
    rat,
    st.sampled_from(["strict", "pareto"]),
)
def test_round_trip_generated(raw, gamma, fixed, mode):
    n = len(raw)
    data = {
        "universe": [f"{r}/{sum(raw)}" for r in raw],
        "cost": {"kind": "operator_linear", "fixed": [str(fixed)] * n, "marginal": ["0"] * n},
        "reward": {"kind": "linear", "gamma": str(gamma)},
        "configuration": {"pools": [list(range(n))]},
        "mode": mode,
        "schedule": {"kind": "custom", "table": [{"start": 0, "end": 3, "rate": str(gamma)}, {"start": 4, "rate": "1/3"}]},
    }
    sc = parse_scenario(data)
    assert parse_scenario(json.loads(dumps_scenario(sc))) == sc


def test_tabulated_models_round_trip():
    data = {
        "universe": ["1/2", "1/2"],
        "cost": {"kind": "tabulated", "table": [{"owners": [0], "cost": "1"}, {"owners": [0, 1], "cost": "3/2"}]},
        "reward": {"kind": "tabulated", "grid": [["0", "0"], ["1/2", "3"], ["1", "6"]]},
    }
    sc = parse_scenario(data)
    assert parse_scenario(dump_scenario(sc)) == sc


def test_unknown_kind_rejected():
    with pytest.raises(InputError):
        parse_scenario({"reward": {"kind": "sigmoid", "gamma": 1}})
