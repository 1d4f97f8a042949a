"""
Core Module for transport dispatch
"""
from dataclasses import replace

from fedrdma_sim.core.fedrdma import FedRdma
from fedrdma_sim.core.fedrdma_e import FedRdmaE
from fedrdma_sim.core.naive_rdma import NaiveRdma
from fedrdma_sim.core.report import TransportKind, TransportParams
from fedrdma_sim.core.tcp_like import TcpLike

TRANSPORTS = {
    TransportKind.NAIVE_RDMA: NaiveRdma,
    TransportKind.TCP_LIKE: TcpLike,
    TransportKind.FEDRDMA_V1: FedRdma,
    TransportKind.FEDRDMA_E: FedRdmaE,
}


def make_transport(params):
    """
    Build the transport a parameter set selects.

    Args:
        params (TransportParams): Transport parameters

    Returns:
        Union[NaiveRdma, TcpLike, FedRdma, FedRdmaE]: Transport instance
    """
    return TRANSPORTS[params.kind](params)


def naive_rdma_transfer(blob, path):
    return NaiveRdma().transfer(blob, path)


def tcp_like_transfer(blob, path, params=None):
    params = replace(params or TransportParams(), kind=TransportKind.TCP_LIKE)
    return TcpLike(params).transfer(blob, path)


def fedrdma_v1_transfer(blob, path, params=None):
    params = replace(params or TransportParams(), kind=TransportKind.FEDRDMA_V1)
    return FedRdma(params).transfer(blob, path)


def fedrdma_e_transfer(blob, path, params=None, pool=None):
    """
    Transfer a blob with FedRDMA-E.

    Args:
        blob (Blob): Payload to send
        path (Union[PathConfig, Simulation]): Path to send over
        params (Optional[TransportParams]): Transport parameters
        pool (Optional[MRPool]): Receive pool; one is registered when omitted

    Returns:
        TransferReport: Outcome of the transfer
    """
    params = replace(params or TransportParams(), kind=TransportKind.FEDRDMA_E)
    return FedRdmaE(params, pool=pool).transfer(blob, path)
