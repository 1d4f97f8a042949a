"""
Network Module: WAN path model, event loop, Go-Back-N and memory regions
"""
from fedrdma_sim.network.gbn import (
    QueuePair,
    TransferOutcome,
    TransferResult,
    gbn_send,
    gbn_step,
)
from fedrdma_sim.network.memory import (
    MemoryRegion,
    MRPool,
    acquire_next,
    poll_header,
    register_mr,
    remote_write,
)
from fedrdma_sim.network.simulation import Simulation
from fedrdma_sim.network.wan import (
    GBPS,
    MB,
    PathConfig,
    PathState,
    WanPath,
    analytic_chunked_latency,
    path_burst,
    warm_up,
)

__all__ = [
    "GBPS",
    "MB",
    "MemoryRegion",
    "MRPool",
    "PathConfig",
    "PathState",
    "QueuePair",
    "Simulation",
    "TransferOutcome",
    "TransferResult",
    "WanPath",
    "acquire_next",
    "analytic_chunked_latency",
    "gbn_send",
    "gbn_step",
    "path_burst",
    "poll_header",
    "register_mr",
    "remote_write",
    "warm_up",
]
