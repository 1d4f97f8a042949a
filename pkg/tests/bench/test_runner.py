import io

import pytest

from fedrdma_sim.bench.runner import (
    _with_axis,
    find_max_and_best_chunk,
    run_scenario,
    run_scenarios,
)
from fedrdma_sim.bench.scenario import FederationWorkload, Scenario
from fedrdma_sim.core.report import TransportParams
from fedrdma_sim.errors import NoFeasibleChunkError
from fedrdma_sim.network.wan import MB, PathConfig
from fedrdma_sim.utils.saver import REPORT_COLUMNS, write_rows


def _csv(rows):
    stream = io.StringIO()
    write_rows(rows, stream)
    return stream.getvalue()


def test_should_emit_one_row_per_run(scenario_file):
    rows = run_scenario(scenario_file, seed=10)

    assert [row["scenario_id"] for row in rows] == [
        "small-e",
        "small-e",
        "rates[sender_rate=2000000000]",
        "rates[sender_rate=10000000000]",
    ]
    assert [row["seed"] for row in rows] == ["10", "11", "10", "10"]
    assert all(list(row.keys()) == REPORT_COLUMNS for row in rows)
    assert rows[0]["num_chunks"] == "5"
    assert rows[0]["header_ops"] == "1"
    assert rows[2]["transport"] == "fedrdma_v1"
    assert rows[2]["link_enable"] == "no"
    assert rows[3]["link_enable"] == "yes"


def test_should_write_identical_csv_for_identical_seed(scenario_file):
    assert _csv(run_scenario(scenario_file, seed=3)) == _csv(
        run_scenario(scenario_file, seed=3)
    )


def test_should_keep_row_order_with_workers(scenario_file):
    assert run_scenario(scenario_file, jobs=2) == run_scenario(scenario_file, jobs=1)


def test_should_summarise_federation_as_one_row():
    scenario = Scenario(
        id="fl",
        workload=FederationWorkload(rounds=2, clients=2, model_bytes=MB),
        transport=TransportParams(kind="tcp_like"),
        repetitions=2,
    )

    rows = run_scenarios([scenario], seed=1)

    assert len(rows) == 2
    assert rows[0]["data_bytes"] == str(2 * 2 * 2 * MB)
    assert rows[0]["transport"] == "tcp_like"
    assert rows[1]["seed"] == "2"


def test_should_keep_derived_timeout_in_rtt_sweep():
    path, _ = _with_axis(PathConfig(), TransportParams(), "rtt", 0.1)

    assert path.ack_timeout == pytest.approx(0.3)


def test_should_sweep_transport_fields():
    path, params = _with_axis(PathConfig(), TransportParams(), "base_chunk_size", MB)

    assert path == PathConfig()
    assert params.base_chunk_size == MB


def test_should_find_max_and_best_chunk():
    params = TransportParams(retry_limit=0)

    max_chunk, best_chunk = find_max_and_best_chunk(
        PathConfig(), candidates=(MB, 4 * MB, 12 * MB), total=40 * MB, params=params
    )

    assert (max_chunk, best_chunk) == (4 * MB, 4 * MB)


def test_should_raise_when_no_chunk_is_feasible():
    with pytest.raises(NoFeasibleChunkError):
        find_max_and_best_chunk(
            PathConfig(),
            candidates=(12 * MB,),
            total=40 * MB,
            params=TransportParams(retry_limit=0),
        )
