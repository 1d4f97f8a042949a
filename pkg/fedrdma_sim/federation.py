"""
Module for the federated-learning communication workload

Each FedAvg round every client downloads the global model and uploads its update
over the shared WAN path; local training is a fixed compute time.
"""
import logging
from dataclasses import dataclass, field, replace
from typing import List, Optional

from fedrdma_sim.callbacks.base import CallbackList
from fedrdma_sim.core.report import TransportParams, energy
from fedrdma_sim.core.transfer import make_transport
from fedrdma_sim.errors import InvalidConfigError, UnknownRankError
from fedrdma_sim.network.gbn import TransferResult
from fedrdma_sim.network.simulation import Simulation
from fedrdma_sim.network.wan import MB, PathConfig
from fedrdma_sim.utils.chunking import Blob

logger = logging.getLogger(__name__)

__all__ = [
    "FederationConfig",
    "FederationReport",
    "LORA_PAYLOAD_BYTES",
    "LORA_PUBLISHED_CHUNKS",
    "energy",
    "lora_payload_bytes",
    "run_federation",
]

# GPT-2 small: 117M float32 parameters.
GPT2_MODEL_BYTES = 468_500_000

LORA_PAYLOAD_BYTES = {
    4: int(1.1 * MB),
    8: int(2.3 * MB),
    16: int(4.5 * MB),
    32: int(9.0 * MB),
    64: 18 * MB,
    128: 36 * MB,
    256: 72 * MB,
    512: 144 * MB,
    1024: 288 * MB,
}

# Chunk counts as published for each rank; they do not follow ceil(size / 4 MB).
LORA_PUBLISHED_CHUNKS = {
    4: 1,
    8: 2,
    16: 4,
    32: 5,
    64: 7,
    128: 12,
    256: 21,
    512: 39,
    1024: 75,
}


def lora_payload_bytes(rank):
    """
    Per-round payload of a LoRA adapter.

    Args:
        rank (int): LoRA rank

    Returns:
        int: Bytes, decimal megabytes

    Raises:
        UnknownRankError: Rank outside the measured set
    """
    try:
        return LORA_PAYLOAD_BYTES[rank]
    except KeyError:
        raise UnknownRankError(
            f"no payload size for rank {rank}, known ranks: {sorted(LORA_PAYLOAD_BYTES)}"
        ) from None


@dataclass(frozen=True)
class FederationConfig:

    """
    Attributes:
        rounds (int): FedAvg rounds
        clients (int): Participating clients
        model_bytes (int): Size of the exchanged model
        compute_time_per_round (float): Local training time per round, seconds
        transport (TransportParams): Transport used for every transfer
        path (PathConfig): Shared WAN path
        nic_power (Optional[float]): Watts, defaults to the transport's NIC power
        parallel_clients (bool): Run the clients of a round concurrently
    """

    rounds: int = 5
    clients: int = 2
    model_bytes: int = GPT2_MODEL_BYTES
    compute_time_per_round: float = 56.2
    transport: TransportParams = field(default_factory=TransportParams)
    path: PathConfig = field(default_factory=PathConfig)
    nic_power: Optional[float] = None
    parallel_clients: bool = False

    def __post_init__(self):
        if self.rounds < 1 or self.clients < 1:
            raise InvalidConfigError("rounds and clients must be at least 1")
        if self.model_bytes < 0:
            raise InvalidConfigError("model_bytes must be non-negative")
        if self.compute_time_per_round < 0:
            raise InvalidConfigError("compute_time_per_round must be non-negative")
        if self.nic_power is not None and self.nic_power < 0:
            raise InvalidConfigError("nic_power must be non-negative")

    @property
    def power(self):
        return self.transport.power if self.nic_power is None else self.nic_power


@dataclass(frozen=True)
class FederationReport:

    """
    Attributes:
        result (TransferResult): Failure if any transfer failed
        total_traffic (int): Payload bytes moved by successful transfers
        comm_time (float): Time spent transferring, seconds
        compute_time (float): Time spent training, seconds
        comm_fraction (float): comm_time / (comm_time + compute_time)
        per_round (List[List[Tuple[TransferReport, TransferReport]]]): Per round, the
            (download, upload) reports of each client
        energy (float): NIC energy over the communication time, joules
    """

    result: TransferResult
    total_traffic: int
    comm_time: float
    compute_time: float
    comm_fraction: float
    per_round: List = field(default_factory=list)
    energy: float = 0.0

    @property
    def succeeded(self):
        return self.result is TransferResult.SUCCESS


def _client_exchange(sim, server, client, blob, exchanges, index):
    download = yield from client.process(sim, blob)
    upload = None
    if download.succeeded:
        upload = yield from server.process(sim, blob)
    exchanges[index] = (download, upload)


def _round(sim, cfg, server, clients, blob):
    exchanges = [None] * cfg.clients
    if cfg.parallel_clients:
        processes = [
            sim.spawn(
                _client_exchange(sim, server, client, blob, exchanges, index)
            )
            for index, client in enumerate(clients)
        ]
        yield sim.env.all_of(processes)
    else:
        for index, client in enumerate(clients):
            yield from _client_exchange(sim, server, client, blob, exchanges, index)
            if any(not report or not report.succeeded for report in exchanges[index]):
                break
    return exchanges


def run_federation(cfg, callbacks=None):
    """
    Simulate the communication of a federated training run.

    Args:
        cfg (FederationConfig): Federation configuration
        callbacks (Optional[List[Callback]]): Hooks called at round boundaries

    Returns:
        FederationReport: Totals, stopped at the first failed transfer
    """
    callbacks = CallbackList(callbacks)
    sim = Simulation(cfg.path)
    blob = Blob.virtual(cfg.model_bytes)

    # Each receiving endpoint keeps its own transport, hence its own receive pool.
    server_params = cfg.transport
    if cfg.parallel_clients:
        # Concurrent uploads each need a region of their own.
        server_params = replace(
            cfg.transport, pool_size=max(cfg.transport.pool_size, cfg.clients)
        )
    server = make_transport(server_params)
    clients = [make_transport(cfg.transport) for _ in range(cfg.clients)]

    callbacks.on_federation_begin(cfg)

    result = TransferResult.SUCCESS
    per_round = []
    comm_time = 0.0
    compute_time = 0.0
    total_traffic = 0

    for round_index in range(cfg.rounds):
        callbacks.on_round_begin(round_index)
        round_start = sim.now
        exchanges = sim.run(_round(sim, cfg, server, clients, blob))
        round_comm = sim.now - round_start
        comm_time += round_comm

        pairs = []
        for client, exchange in enumerate(exchanges):
            if exchange is None:
                continue
            for direction, report in zip(("download", "upload"), exchange):
                if report is None:
                    continue
                callbacks.on_transfer_end(round_index, client, direction, report)
                if report.succeeded:
                    total_traffic += report.data_bytes
                else:
                    result = TransferResult.TRANSMISSION_FAILURE
            pairs.append(exchange)
        per_round.append(pairs)

        if result is not TransferResult.SUCCESS:
            logger.info("federation stopped in round %d", round_index)
            callbacks.on_round_end(
                round_index, {"comm_time": round_comm, "compute_time": 0.0}
            )
            break

        compute_time += cfg.compute_time_per_round
        sim.run(_train(sim, cfg.compute_time_per_round))
        callbacks.on_round_end(
            round_index,
            {"comm_time": round_comm, "compute_time": cfg.compute_time_per_round},
        )

    busy = comm_time + compute_time
    report = FederationReport(
        result=result,
        total_traffic=total_traffic,
        comm_time=comm_time,
        compute_time=compute_time,
        comm_fraction=comm_time / busy if busy > 0 else 0.0,
        per_round=per_round,
        energy=energy(cfg.power, comm_time),
    )
    callbacks.on_federation_end(report)

    return report


def _train(sim, duration):
    yield sim.wait_until(sim.now + duration)
