"""
Module for the table-reproduction presets

Every preset returns (columns, rows) with rows as formatted strings, ready for
CSV or text output.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

from fedrdma_sim.bench.runner import GB, find_max_and_best_chunk, run_transfer
from fedrdma_sim.core.link_enable import apply_link_enable
from fedrdma_sim.core.report import TransportKind, TransportParams
from fedrdma_sim.federation import (
    LORA_PAYLOAD_BYTES,
    LORA_PUBLISHED_CHUNKS,
    FederationConfig,
    run_federation,
)
from fedrdma_sim.network.wan import GBPS, MB, PathConfig
from fedrdma_sim.utils.chunking import plan_chunks

logger = logging.getLogger(__name__)

# Range rows are evaluated at their upper bound.
BANDWIDTH_ROWS = (
    ("1", 1 * GBPS, 8.16),
    ("2", 2 * GBPS, 4.10),
    ("3", 3 * GBPS, 2.77),
    ("4-5", 5 * GBPS, 6.57),
    ("6-9", 9 * GBPS, 6.11),
    ("10", 10 * GBPS, 6.00),
    ("100", 100 * GBPS, 5.98),
)

SYSCOST_PUBLISHED = {
    TransportKind.TCP_LIKE: (24.6, 125.2),
    TransportKind.FEDRDMA_V1: (9.4, 175.4),
    TransportKind.FEDRDMA_E: (6.0, 112.6),
}

CHUNKED_SIZE = 4 * MB


def _map(function, items, jobs):
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            return list(executor.map(function, items))
    return [function(item) for item in items]


def _bandwidth_row(row, seed=0):
    label, rate, published = row
    path = PathConfig(sender_rate=rate, seed=seed)
    max_chunk, best_chunk = find_max_and_best_chunk(path)

    chunk = CHUNKED_SIZE if max_chunk < GB else max_chunk
    params = TransportParams(kind=TransportKind.FEDRDMA_E, base_chunk_size=chunk)
    decision = apply_link_enable(params, path, plan_chunks(GB, chunk))
    _, report = run_transfer(path, params, GB, seed=seed)

    return {
        "bandwidth_gbps": label,
        "sender_rate_bps": str(int(rate)),
        "max_chunk_bytes": str(max_chunk),
        "best_chunk_bytes": str(best_chunk),
        "link_enable": "yes" if decision.required else "no",
        "chunk_bytes": str(chunk),
        "result": report.result.value,
        "latency_s": f"{report.latency:.3f}",
        "published_latency_s": f"{published:.2f}",
    }


def table_bandwidth(seed=0, jobs=1):
    """
    Bandwidth against maximum chunk, best chunk, Link-Enable and 1 GB latency.

    Args:
        seed (int): Seed of every path
        jobs (int): Worker processes, one row per task

    Returns:
        Tuple[List[str], List[Dict[str, str]]]: Columns and seven rows
    """
    rows = _map(_unpack_bandwidth_row, [row + (seed,) for row in BANDWIDTH_ROWS], jobs)
    columns = list(rows[0].keys())
    return columns, rows


def _unpack_bandwidth_row(item):
    return _bandwidth_row(item[:3], item[3])


def table_syscost(seed=0, jobs=1):
    """
    Memory, time, power and energy of a 1 GB transfer at 10 Gbps.

    Args:
        seed (int): Seed of the path
        jobs (int): Unused, the three runs are short

    Returns:
        Tuple[List[str], List[Dict[str, str]]]: Columns and three rows
    """
    path = PathConfig(sender_rate=10 * GBPS, seed=seed)
    rows = []
    for kind, (published_time, published_energy) in SYSCOST_PUBLISHED.items():
        _, report = run_transfer(path, TransportParams(kind=kind), GB, seed=seed)
        rows.append(
            {
                "method": kind.value,
                "result": report.result.value,
                "memory_bytes": str(report.peak_extra_memory),
                "time_s": f"{report.latency:.3f}",
                "power_w": f"{report.power:.1f}",
                "energy_j": f"{report.energy:.3f}",
                "published_time_s": f"{published_time:.1f}",
                "published_energy_j": f"{published_energy:.1f}",
            }
        )
    return list(rows[0].keys()), rows


def table_lora(seed=0, jobs=1):
    """
    LoRA rank against payload size, chunk count, Link-Enable and latency at 10 Gbps.

    Args:
        seed (int): Seed of the path
        jobs (int): Unused

    Returns:
        Tuple[List[str], List[Dict[str, str]]]: Columns and one row per rank
    """
    path = PathConfig(sender_rate=10 * GBPS, seed=seed)
    params = TransportParams(kind=TransportKind.FEDRDMA_E)
    rows = []
    for rank, length in LORA_PAYLOAD_BYTES.items():
        plan = plan_chunks(length, params.base_chunk_size)
        _, fedrdma_e = run_transfer(path, params, length, seed=seed)
        _, tcp_like = run_transfer(
            path, replace(params, kind=TransportKind.TCP_LIKE), length, seed=seed
        )
        rows.append(
            {
                "rank": str(rank),
                "data_bytes": str(length),
                "num_chunks": str(plan.num_chunks),
                "published_chunks": str(LORA_PUBLISHED_CHUNKS[rank]),
                "link_enable": "yes"
                if apply_link_enable(params, path, plan).required
                else "no",
                "fedrdma_e_latency_s": f"{fedrdma_e.latency:.3f}",
                "tcp_like_latency_s": f"{tcp_like.latency:.3f}",
            }
        )
    return list(rows[0].keys()), rows


def _federation(kind, seed):
    cfg = FederationConfig(
        transport=TransportParams(kind=kind),
        path=PathConfig(sender_rate=10 * GBPS, seed=seed),
    )
    return run_federation(cfg)


def _federation_task(item):
    return _federation(*item)


def fl_e2e(seed=0, jobs=1):
    """
    Five FedAvg rounds of two clients exchanging a 468.5 MB model at 10 Gbps.

    Args:
        seed (int): Seed of the path
        jobs (int): Worker processes, one transport per task

    Returns:
        Tuple[List[str], List[Dict[str, str]]]: Columns and one row per transport
    """
    kinds = [TransportKind.TCP_LIKE, TransportKind.FEDRDMA_V1, TransportKind.FEDRDMA_E]
    reports = _map(_federation_task, [(kind, seed) for kind in kinds], jobs)
    baseline = reports[0].comm_time

    rows = []
    for kind, report in zip(kinds, reports):
        rows.append(
            {
                "transport": kind.value,
                "result": report.result.value,
                "total_traffic_bytes": str(report.total_traffic),
                "comm_time_s": f"{report.comm_time:.3f}",
                "compute_time_s": f"{report.compute_time:.3f}",
                "comm_fraction": f"{report.comm_fraction:.4f}",
                "energy_j": f"{report.energy:.3f}",
                "speedup_vs_tcp": f"{baseline / report.comm_time:.3f}",
                "comm_reduction_vs_tcp": f"{1 - report.comm_time / baseline:.4f}",
            }
        )
    return list(rows[0].keys()), rows


PRESETS = {
    "table-bandwidth": table_bandwidth,
    "table-syscost": table_syscost,
    "table-lora": table_lora,
    "fl-e2e": fl_e2e,
}


def run_preset(name, seed=0, jobs=1):
    """
    Run a named preset.

    Args:
        name (str): One of PRESETS
        seed (int): Base seed
        jobs (int): Worker processes

    Returns:
        Tuple[List[str], List[Dict[str, str]]]: Columns and rows
    """
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}, expected one of {sorted(PRESETS)}")
    logger.info("running preset %s", name)
    return PRESETS[name](seed=seed, jobs=jobs)
