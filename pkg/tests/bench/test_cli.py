import pytest

from fedrdma_sim.bench.cli import EXIT_CONFIG, EXIT_IO, EXIT_OK, EXIT_RUN, main
from fedrdma_sim.errors import ProtocolViolationError
from fedrdma_sim.utils.saver import REPORT_COLUMNS


def test_should_print_csv_report(scenario_file, capsys):
    status = main(["run", str(scenario_file)])

    lines = capsys.readouterr().out.splitlines()
    assert status == EXIT_OK
    assert lines[0] == ",".join(REPORT_COLUMNS)
    assert len(lines) == 5


def test_should_print_text_table(scenario_file, capsys):
    status = main(["--format", "text", "run", str(scenario_file)])

    output = capsys.readouterr().out
    assert status == EXIT_OK
    assert output.splitlines()[0].split()[0] == "scenario_id"
    assert "," not in output.splitlines()[0]


def test_should_write_identical_files_for_identical_seed(scenario_file, tmp_path):
    first, second = tmp_path / "first.csv", tmp_path / "second.csv"

    assert main(["--seed", "7", "--out", str(first), "run", str(scenario_file)]) == 0
    assert main(["--seed", "7", "--out", str(second), "run", str(scenario_file)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_should_return_config_status_on_invalid_config(tmp_path):
    config = tmp_path / "bad.yaml"
    config.write_text("scenarios:\n  - id: broken\n    colour: red\n")

    assert main(["run", str(config)]) == EXIT_CONFIG


def test_should_return_io_status_on_missing_config(tmp_path):
    assert main(["run", str(tmp_path / "missing.yaml")]) == EXIT_IO


def test_should_return_io_status_on_unwritable_output(scenario_file, tmp_path):
    out = tmp_path / "missing" / "out.csv"

    assert main(["--out", str(out), "run", str(scenario_file)]) == EXIT_IO


def test_should_return_run_status_on_simulation_error(mocker, scenario_file):
    mocker.patch(
        "fedrdma_sim.bench.cli.run_scenario",
        side_effect=ProtocolViolationError("gave up"),
    )

    assert main(["run", str(scenario_file)]) == EXIT_RUN


def test_should_print_preset_columns(mocker, capsys):
    mock_preset = mocker.patch(
        "fedrdma_sim.bench.cli.run_preset", return_value=(["a"], [{"a": "1"}])
    )

    status = main(["--seed", "5", "--jobs", "3", "preset", "table-lora"])

    assert status == EXIT_OK
    assert capsys.readouterr().out == "a\n1\n"
    mock_preset.assert_called_once_with("table-lora", seed=5, jobs=3)


@pytest.mark.parametrize("verb,expected_jobs", [("run", 1), ("sweep", 4)])
def test_should_only_spread_sweeps_over_workers(
    mocker, scenario_file, verb, expected_jobs
):
    mock_run = mocker.patch("fedrdma_sim.bench.cli.run_scenario", return_value=[])

    assert main(["--jobs", "4", verb, str(scenario_file)]) == EXIT_OK
    mock_run.assert_called_once_with(str(scenario_file), seed=0, jobs=expected_jobs)


def test_should_reject_unknown_preset():
    with pytest.raises(SystemExit):
        main(["preset", "table-unknown"])
