import json

import pytest


def test_gedanken_probabilities(invoke, input_file):
    result = invoke("evaluate", input_file("gedanken"), input_file("gedanken_settings"), "--json")
    conditions = json.loads(result.output)["data"]["conditions"]

    assert result.exit_code == 0
    assert conditions["p_pos"] == pytest.approx(1 / 72, abs=1e-12)
    assert conditions["max_zero"] < 1e-12
    assert [row["word"] for row in conditions["zeros"]] == ["aa~b", "a~ba", "abb", "bab", "~b~bb"]


def test_near_optimal_probabilities(invoke, input_file):
    result = invoke("evaluate", input_file("near_optimal"), input_file("z_x_settings"), "--json")
    conditions = json.loads(result.output)["data"]["conditions"]

    assert result.exit_code == 0
    assert conditions["p_pos"] == pytest.approx(1 / 32, abs=1e-12)
    assert conditions["passed"] is True


def test_failed_conditions_still_exit_zero(invoke, input_file):
    result = invoke("evaluate", input_file("ghz"), input_file("gedanken_settings"))

    assert result.exit_code == 0
    assert result.output.startswith("Hardy conditions failed.")


def test_alternative_last_condition(invoke, input_file):
    result = invoke("evaluate", input_file("ghz"), input_file("z_x_settings"), "--chenq", "--json")
    conditions = json.loads(result.output)["data"]["conditions"]

    assert conditions["zeros"][-1]["word"] == "~baa"


def test_settings_of_the_wrong_dimension(invoke, input_file):
    result = invoke("evaluate", input_file("qutrit_ghz"), input_file("gedanken_settings"), "--json")
    data = json.loads(result.output)

    assert result.exit_code == 1
    assert data["data"]["error_type"] == "DIMENSION_MISMATCH"


def test_verify_gedanken_correlations(invoke, input_file):
    result = invoke("verify", input_file("gedanken"), input_file("gedanken_settings"))

    assert result.exit_code == 0
    summary = next(line for line in result.output.splitlines() if "summary:" in line)
    assert "INFEASIBLE margin=" in summary
    assert float(summary.split("margin=")[1]) > 1e-7


def test_verify_with_noise_threshold(invoke, input_file):
    result = invoke("verify", input_file("near_optimal"), input_file("z_x_settings"), "--noise", "--json")
    data = json.loads(result.output)["data"]

    assert result.exit_code == 0
    assert data["lp"]["verdict"] == "Infeasible"
    assert 0 < data["noise_threshold"] < 1
