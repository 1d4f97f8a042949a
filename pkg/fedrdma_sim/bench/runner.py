"""
Module for running scenarios and chunk-size searches
"""
import dataclasses
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

from fedrdma_sim.bench.scenario import FederationWorkload, SingleBlob, load_scenarios
from fedrdma_sim.core.report import LinkEnablePolicy, TransportKind, TransportParams
from fedrdma_sim.core.transfer import make_transport
from fedrdma_sim.errors import NoFeasibleChunkError
from fedrdma_sim.federation import FederationConfig, run_federation
from fedrdma_sim.network.wan import MB, PathConfig
from fedrdma_sim.utils.chunking import Blob
from fedrdma_sim.utils.saver import report_row

logger = logging.getLogger(__name__)

GB = 1000 * MB
DEFAULT_CANDIDATES = (1 * MB, 2 * MB, 4 * MB, 8 * MB, 12 * MB, 16 * MB, 64 * MB, GB)

PATH_FIELDS = {item.name for item in dataclasses.fields(PathConfig)}


def make_blob(length, seed, materialize):
    return Blob.random(length, seed) if materialize else Blob.virtual(length)


def run_transfer(path, params, length, seed=0, materialize=False):
    """
    Run one transfer on a fresh simulation.

    Args:
        path (PathConfig): Path configuration, its seed is replaced by `seed`
        params (TransportParams): Transport parameters
        length (int): Payload bytes
        seed (int): Seed of the path and of materialised content
        materialize (bool): Send real bytes instead of a size-only blob

    Returns:
        Tuple[PathConfig, TransferReport]: Path actually used and the report
    """
    path = replace(path, seed=seed)
    report = make_transport(params).transfer(make_blob(length, seed, materialize), path)
    return path, report


def federation_row(report, cfg, scenario_id, repetition, seed):
    """
    Summarise a federation as one report row.

    latency_s holds the total communication time and data_bytes the total traffic;
    per-transfer counters are summed over every transfer.
    """
    transfers = [
        transfer
        for pairs in report.per_round
        for pair in pairs
        for transfer in pair
        if transfer is not None
    ]
    chunked = cfg.transport.kind.is_chunked
    return {
        "scenario_id": scenario_id,
        "repetition": str(repetition),
        "transport": cfg.transport.kind.value,
        "bandwidth_bps": str(int(round(cfg.path.sender_rate))),
        "rtt_s": f"{cfg.path.rtt:.3f}",
        "data_bytes": str(report.total_traffic),
        "chunk_bytes": str(cfg.transport.base_chunk_size if chunked else 0),
        "num_chunks": str(max([t.num_chunks for t in transfers], default=0)),
        "link_enable": "yes" if any(t.primer_used for t in transfers) else "no",
        "result": report.result.value,
        "latency_s": f"{report.comm_time:.3f}",
        "bytes_on_wire": str(sum(t.bytes_on_wire for t in transfers)),
        "retransmissions": str(sum(t.retransmissions for t in transfers)),
        "header_ops": str(sum(t.header_ops for t in transfers)),
        "peak_extra_memory_bytes": str(
            max([t.peak_extra_memory for t in transfers], default=0)
        ),
        "power_w": f"{cfg.power:.1f}",
        "energy_j": f"{report.energy:.3f}",
        "seed": str(seed),
    }


def _sweep_point(args):
    scenario_id, path, params, length, seed, materialize, repetition = args
    used_path, report = run_transfer(path, params, length, seed, materialize)
    return report_row(report, used_path, scenario_id, repetition, seed)


def _with_axis(path, params, axis, value):
    if axis == "rtt" and path.ack_timeout == 3 * path.rtt:
        # Keep a derived timeout derived.
        return replace(path, rtt=value, ack_timeout=3 * value), params
    if axis in PATH_FIELDS:
        return replace(path, **{axis: value}), params
    return path, replace(params, **{axis: value})


def _numeric(value):
    if isinstance(value, str):
        number = float(value)
        return int(number) if number.is_integer() else number
    return value


def scenario_points(scenario, seed):
    """
    Expand a single-blob or sweep scenario into independent run arguments.

    Args:
        scenario (Scenario): Scenario to expand
        seed (int): Base seed; repetition r uses seed + r

    Returns:
        List[Tuple]: Arguments of each run, in report order
    """
    workload = scenario.workload
    points = []
    for repetition in range(scenario.repetitions):
        run_seed = seed + repetition
        if isinstance(workload, SingleBlob):
            points.append(
                (
                    scenario.id,
                    scenario.path,
                    scenario.transport,
                    workload.bytes,
                    run_seed,
                    workload.materialize,
                    repetition,
                )
            )
            continue
        for value in workload.values:
            value = _numeric(value)
            path, params = _with_axis(
                scenario.path, scenario.transport, workload.axis, value
            )
            points.append(
                (
                    f"{scenario.id}[{workload.axis}={value}]",
                    path,
                    params,
                    workload.bytes,
                    run_seed,
                    workload.materialize,
                    repetition,
                )
            )
    return points


def run_scenarios(scenarios, seed=0, jobs=1):
    """
    Run scenarios and collect one report row per run.

    Args:
        scenarios (List[Scenario]): Validated scenarios
        seed (int): Base seed
        jobs (int): Worker processes for single-blob and sweep points

    Returns:
        List[Dict[str, str]]: Rows in scenario order, whatever the completion order
    """
    rows = []
    for scenario in scenarios:
        logger.info("running scenario %s", scenario.id)
        if isinstance(scenario.workload, FederationWorkload):
            rows.extend(_federation_rows(scenario, seed))
            continue

        points = scenario_points(scenario, seed)
        if jobs > 1 and len(points) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as executor:
                rows.extend(executor.map(_sweep_point, points))
        else:
            rows.extend(_sweep_point(point) for point in points)

    return rows


def _federation_rows(scenario, seed):
    workload = scenario.workload
    rows = []
    for repetition in range(scenario.repetitions):
        run_seed = seed + repetition
        cfg = FederationConfig(
            rounds=workload.rounds,
            clients=workload.clients,
            model_bytes=workload.model_bytes,
            compute_time_per_round=workload.compute_time_per_round,
            transport=scenario.transport,
            path=replace(scenario.path, seed=run_seed),
            nic_power=workload.nic_power,
            parallel_clients=workload.parallel_clients,
        )
        report = run_federation(cfg)
        rows.append(federation_row(report, cfg, scenario.id, repetition, run_seed))
    return rows


def run_scenario(config_path, seed=0, jobs=1):
    """
    Load a scenario file and run every scenario in it.

    Args:
        config_path (str): YAML scenario file
        seed (int): Base seed
        jobs (int): Worker processes

    Returns:
        List[Dict[str, str]]: Report rows

    Raises:
        ConfigParseError: The file does not validate
    """
    return run_scenarios(load_scenarios(config_path), seed=seed, jobs=jobs)


def find_max_and_best_chunk(
    path, candidates=DEFAULT_CANDIDATES, total=GB, params=None
):
    """
    Search the largest feasible and the fastest FedRDMA-E chunk size.

    Args:
        path (PathConfig): Path to test
        candidates (Sequence[int]): Chunk sizes, ascending
        total (int): Transfer size
        params (Optional[TransportParams]): Base parameters, Auto Link-Enable by default

    Returns:
        Tuple[int, int]: (max_chunk, best_chunk); ties go to the smaller chunk

    Raises:
        NoFeasibleChunkError: No candidate succeeds
    """
    params = replace(
        params or TransportParams(link_enable_policy=LinkEnablePolicy.AUTO),
        kind=TransportKind.FEDRDMA_E,
    )

    successes = []
    for chunk in sorted(candidates):
        _, report = run_transfer(
            path, replace(params, base_chunk_size=chunk), total, seed=path.seed
        )
        logger.debug(
            "chunk %d: %s in %.3f s", chunk, report.result.value, report.latency
        )
        if report.succeeded:
            successes.append((report.latency, chunk))

    if not successes:
        raise NoFeasibleChunkError(
            f"no candidate chunk size succeeds at {path.sender_rate / 1e9:.1f} Gbps"
        )

    max_chunk = max(chunk for _, chunk in successes)
    _, best_chunk = min(successes)

    return max_chunk, best_chunk
