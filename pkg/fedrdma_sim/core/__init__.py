"""
Core Module

This module regroups the transports under a common .transfer() interface.
"""
from .fedrdma import FedRdma
from .fedrdma_e import FedRdmaE
from .link_enable import PrimerDecision, PrimerKind, apply_link_enable
from .naive_rdma import NaiveRdma
from .report import (
    LinkEnablePolicy,
    TransferReport,
    TransportKind,
    TransportParams,
    energy,
)
from .tcp_like import TcpLike
from .transfer import (
    fedrdma_e_transfer,
    fedrdma_v1_transfer,
    make_transport,
    naive_rdma_transfer,
    tcp_like_transfer,
)


__all__ = [
    "FedRdma",
    "FedRdmaE",
    "LinkEnablePolicy",
    "NaiveRdma",
    "PrimerDecision",
    "PrimerKind",
    "TcpLike",
    "TransferReport",
    "TransportKind",
    "TransportParams",
    "apply_link_enable",
    "energy",
    "fedrdma_e_transfer",
    "fedrdma_v1_transfer",
    "make_transport",
    "naive_rdma_transfer",
    "tcp_like_transfer",
]
