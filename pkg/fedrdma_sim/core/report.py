"""
Core Module for transport parameters and transfer reports
"""
import enum
from dataclasses import dataclass
from typing import Optional

from fedrdma_sim.errors import InvalidConfigError
from fedrdma_sim.network.gbn import DEFAULT_RETRY_LIMIT, TransferResult

TCP_NIC_POWER = 5.1
RDMA_NIC_POWER = 18.7


class TransportKind(enum.Enum):
    NAIVE_RDMA = "naive_rdma"
    TCP_LIKE = "tcp_like"
    FEDRDMA_V1 = "fedrdma_v1"
    FEDRDMA_E = "fedrdma_e"

    @property
    def is_chunked(self):
        return self in (TransportKind.FEDRDMA_V1, TransportKind.FEDRDMA_E)


class LinkEnablePolicy(enum.Enum):
    AUTO = "auto"
    FORCE = "force"
    OFF = "off"


@dataclass(frozen=True)
class TransportParams:

    """
    Parameters of one transport.

    Attributes:
        kind (TransportKind): Which transport to run
        base_chunk_size (int): Base chunk size s in bytes
        artificial_delay (float): Pause after each acked chunk, FedRDMA v1 only
        tcp_window (int): Maximum TCP-like window in bytes
        link_enable_policy (LinkEnablePolicy): Primer policy for chunked transports
        window (Optional[int]): Go-Back-N window in packets, None for a whole message
        retry_limit (int): Timeouts a transfer tolerates
        primer_rate_threshold (float): Auto Link-Enable rate threshold in bits/s
        primer_chunk_threshold (int): Auto Link-Enable chunk threshold in bytes
        smoothing_rate (Optional[float]): Token-bucket cap on TCP-like bursts, bits/s
        poll_period (Optional[float]): FedRDMA-E receiver poll period, defaults to rtt / 4
        pool_size (int): Receive regions in the FedRDMA-E pool
        nic_power (Optional[float]): NIC power in watts, defaults per transport
    """

    kind: TransportKind = TransportKind.FEDRDMA_E
    base_chunk_size: int = 4_000_000
    artificial_delay: float = 0.0144
    tcp_window: int = 812_500
    link_enable_policy: LinkEnablePolicy = LinkEnablePolicy.AUTO
    window: Optional[int] = None
    retry_limit: int = DEFAULT_RETRY_LIMIT
    primer_rate_threshold: float = 4e9
    primer_chunk_threshold: int = 2_000_000
    smoothing_rate: Optional[float] = None
    poll_period: Optional[float] = None
    pool_size: int = 2
    nic_power: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", TransportKind(self.kind))
        object.__setattr__(
            self, "link_enable_policy", LinkEnablePolicy(self.link_enable_policy)
        )

        if self.base_chunk_size <= 0:
            raise InvalidConfigError("base_chunk_size must be positive")
        if self.artificial_delay < 0:
            raise InvalidConfigError("artificial_delay must be non-negative")
        if self.tcp_window <= 0:
            raise InvalidConfigError("tcp_window must be positive")
        if self.window is not None and self.window < 1:
            raise InvalidConfigError("window must be at least one packet")
        if self.retry_limit < 0:
            raise InvalidConfigError("retry_limit must be non-negative")
        if self.smoothing_rate is not None and self.smoothing_rate <= 0:
            raise InvalidConfigError("smoothing_rate must be positive")
        if self.poll_period is not None and self.poll_period <= 0:
            raise InvalidConfigError("poll_period must be positive")
        if self.pool_size < 1:
            raise InvalidConfigError("pool_size must be at least 1")
        if self.nic_power is not None and self.nic_power < 0:
            raise InvalidConfigError("nic_power must be non-negative")

    @property
    def power(self):
        if self.nic_power is not None:
            return self.nic_power
        if self.kind is TransportKind.TCP_LIKE:
            return TCP_NIC_POWER
        return RDMA_NIC_POWER


@dataclass(frozen=True)
class TransferReport:

    """
    Outcome of one transfer.

    Attributes:
        result (TransferResult): Success or TransmissionFailure
        latency (float): Sender-side time to the last acknowledgement, seconds
        bytes_on_wire (int): Bytes serialized including framing and retransmissions
        retransmissions (int): Packets sent more than once
        header_ops (int): Headers built by the sender (parsed by the receiver)
        peak_extra_memory (int): Receiver memory beyond the payload itself, bytes
        primer_used (bool): Whether a Link-Enable primer was sent
        energy (float): NIC energy over the transfer, joules
        kind (TransportKind): Transport that produced the report
        data_bytes (int): Payload size
        chunk_bytes (int): Base chunk size, 0 for unchunked transports
        num_chunks (int): Chunks sent
        power (float): NIC power used for energy, watts
        peak_in_flight (int): Largest unacknowledged message, bytes
        detected_at (Optional[float]): Receiver completion detection time
        received (Optional[Blob]): Payload as seen by the receiver
    """

    result: TransferResult
    latency: float
    bytes_on_wire: int
    retransmissions: int
    header_ops: int
    peak_extra_memory: int
    primer_used: bool
    energy: float
    kind: TransportKind = TransportKind.FEDRDMA_E
    data_bytes: int = 0
    chunk_bytes: int = 0
    num_chunks: int = 1
    power: float = 0.0
    peak_in_flight: int = 0
    detected_at: Optional[float] = None
    received: Optional[object] = None

    @property
    def succeeded(self):
        return self.result is TransferResult.SUCCESS


def energy(power, duration):
    """
    Energy drawn by a NIC over a duration.

    Args:
        power (float): Watts, non-negative
        duration (float): Seconds, non-negative

    Returns:
        float: Joules
    """
    if power < 0 or duration < 0:
        raise ValueError("power and duration must be non-negative")
    return power * duration
