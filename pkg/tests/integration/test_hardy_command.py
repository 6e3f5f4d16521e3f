import json
from unittest.mock import patch

import pytest

from tripartite_hardy.cli import cli
from tripartite_hardy.integrations.state_files import dump_state_text, read_settings_file


def test_gedanken_state_passes(invoke, input_file, tmp_path):
    settings_out = tmp_path / "settings.txt"

    result = invoke("test", input_file("gedanken"), "--settings-out", settings_out, "--json")
    data = json.loads(result.output)

    assert result.exit_code == 0
    assert data["success"] is True
    assert data["data"]["conditions"]["passed"] is True
    assert data["data"]["lp"]["verdict"] == "Infeasible"
    assert data["data"]["lp"]["margin"] > 1e-7
    assert len(read_settings_file(settings_out, (2, 2, 2))) == 3


def test_ghz_state_takes_symmetric_test(invoke, input_file):
    result = invoke("test", input_file("ghz"), "--json")
    data = json.loads(result.output)["data"]

    assert result.exit_code == 0
    assert data["test"] == "symmetric"
    assert data["classification"] == "SymmetricFailing/GHZlike"
    assert data["conditions"]["zeros"][-1]["word"] == "~baa"


def test_qutrit_state_reports_reduction(invoke, input_file):
    result = invoke("test", input_file("qutrit_ghz"), "--json")
    data = json.loads(result.output)["data"]

    assert result.exit_code == 0
    assert data["dims"] == [3, 3, 3]
    assert data["reduction"]["branch"] == "TNonzero"
    assert all(len(party["a"]) == 3 for party in data["settings"]["parties"])


def test_text_report(invoke, input_file):
    result = invoke("test", input_file("gedanken"))

    assert result.exit_code == 0
    assert result.output.startswith("Hardy test passed")
    assert "  lp:" in result.output


def test_product_state_is_not_fully_entangled(invoke, input_file):
    result = invoke("test", input_file("product"), "--json")
    data = json.loads(result.output)

    assert result.exit_code == 3
    assert data["success"] is False
    assert data["data"]["error_type"] == "NOT_FULLY_ENTANGLED"


def test_output_is_reproducible(invoke, input_file):
    path = input_file("near_optimal")

    first = invoke("test", path, "--seed", 5, "--json")
    second = invoke("test", path, "--seed", 5, "--json")

    assert first.exit_code == 0
    assert first.output == second.output


def test_malformed_state_file(invoke, write_file):
    result = invoke("test", write_file("bad.txt", "dims 2 2 2\n0 0 0 abc 0\n"))

    assert result.exit_code == 1
    assert result.output.startswith("error: Could not parse input file.")


def test_missing_state_file(invoke, tmp_path):
    result = invoke("test", tmp_path / "absent.txt")

    assert result.exit_code == 1


@pytest.mark.parametrize("option, value", [("--restarts", 0), ("--tol-zero", -1)])
def test_invalid_options(invoke, input_file, option, value):
    result = invoke("test", input_file("gedanken"), option, value, "--json")

    assert result.exit_code == 1
    assert json.loads(result.output)["error_message"] == "Invalid command options."


@patch("tripartite_hardy.controllers.commands.run_hardy_test")
def test_unexpected_failure_is_an_internal_error(mock_run, invoke, input_file):
    mock_run.side_effect = RuntimeError("boom")

    result = invoke("test", input_file("gedanken"), "--json")
    data = json.loads(result.output)

    assert result.exit_code == 1
    assert data["error_message"] == "Internal error"
    assert data["data"]["details"] == "boom"


def _replay(invoke, state_path, settings_path, symmetric):
    chenq = ("--chenq",) if symmetric else ()
    evaluated = invoke("evaluate", state_path, settings_path, *chenq)
    verified = invoke("verify", state_path, settings_path, "--json")
    return evaluated, verified


@pytest.mark.parametrize("seed", [None, 0, 1])
def test_qutrit_settings_replay_through_evaluate_and_verify(seed, invoke, input_file, write_file, random_state, tmp_path):
    if seed is None:
        state_path = input_file("qutrit_ghz")
    else:
        state_path = write_file("qutrits.txt", dump_state_text(random_state(seed, dims=(3, 3, 3))))
    settings_out = tmp_path / "settings.txt"

    result = invoke("test", state_path, "--settings-out", settings_out, "--json")
    data = json.loads(result.output)["data"]
    evaluated, verified = _replay(invoke, state_path, settings_out, data["test"] == "symmetric")

    assert result.exit_code == 0
    assert all(party["a1"] is not None for party in data["settings"]["parties"])
    assert evaluated.exit_code == 0
    assert evaluated.output.startswith("Hardy conditions passed.")
    assert verified.exit_code == 0
    assert json.loads(verified.output)["data"]["lp"]["verdict"] == "Infeasible"


def test_json_floats_keep_seventeen_digits(invoke, input_file):
    result = invoke("evaluate", input_file("gedanken"), input_file("gedanken_settings"), "--json")

    assert result.exit_code == 0
    assert f'"p_pos": {format(json.loads(result.output)["data"]["conditions"]["p_pos"], ".17g")}' in result.output


def test_malformed_environment_is_an_input_error(runner):
    result = runner.invoke(cli, ["hset", "3"], env={"HW_SEED": "seven"})

    assert result.exit_code == 1
    assert "error: Malformed environment variables: HW_SEED" in result.output
    assert "Internal error" not in result.output


@pytest.mark.slow
def test_many_random_qutrit_states_end_to_end(invoke, write_file, random_state):
    for seed in range(50):
        state_path = write_file(f"qutrits_{seed}.txt", dump_state_text(random_state(100 + seed, dims=(3, 3, 3))))

        result = invoke("test", state_path, "--seed", seed)

        assert result.exit_code == 0, (seed, result.output)
