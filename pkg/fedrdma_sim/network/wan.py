"""
Module for the WAN path model

The path is a rate-limited sender, a symmetric propagation delay and one weak
intermediate node. The node caches accepted bytes and releases them at its drain
rate in the background while forwarding cut-through; bytes that arrive while its
cache is full are tail-dropped. An unprimed (cold) node caches far less than a
primed (warm) one.

Calibration constants (drain rate, buffers) are chosen so that the overflow
condition s * (1 - drain / rate) > buffer reproduces the published max-chunk and
Link-Enable observations.
"""
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

import numpy as np

from fedrdma_sim.errors import InvalidConfigError, ZeroChunkSizeError
from fedrdma_sim.utils.chunking import plan_chunks

logger = logging.getLogger(__name__)

GBPS = 1e9
MB = 1_000_000

# Ethernet + IPv4 + UDP + InfiniBand BTH + ICRC
ROCE_FRAMING_BYTES = 58


@dataclass(frozen=True)
class PathConfig:

    """
    WAN path parameters.

    Attributes:
        sender_rate (float): Sender line rate in bits/s
        rtt (float): Round trip time in seconds, one-way is rtt / 2
        bottleneck_drain_rate (float): Rate in bits/s at which the weak node frees its cache
        bottleneck_buffer (int): Cache size of a primed node, in bytes
        cold_buffer (int): Cache size of an unprimed node, in bytes
        mtu (int): Packet payload ceiling in bytes
        ack_timeout (float): Go-Back-N retransmission timeout, defaults to 3 * rtt
        per_chunk_overhead (float): Fixed host cost per chunk, in seconds
        seed (int): Seed for random packet loss
        packet_overhead (int): Framing bytes added to every packet on the wire
        loss_rate (float): Probability of random loss per packet transmission
        drop_packets (Tuple[int]): Global transmission indices that are dropped
    """

    sender_rate: float = 10 * GBPS
    rtt: float = 0.020
    bottleneck_drain_rate: float = 3.5 * GBPS
    bottleneck_buffer: int = 4 * MB
    cold_buffer: int = 1 * MB
    mtu: int = 1500
    ack_timeout: Optional[float] = None
    per_chunk_overhead: float = 0.0
    seed: int = 0
    packet_overhead: int = ROCE_FRAMING_BYTES
    loss_rate: float = 0.0
    drop_packets: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.ack_timeout is None:
            object.__setattr__(self, "ack_timeout", 3 * self.rtt)
        object.__setattr__(self, "drop_packets", tuple(self.drop_packets))

        if self.sender_rate <= 0 or self.bottleneck_drain_rate <= 0:
            raise InvalidConfigError("rates must be positive")
        if self.mtu < 64:
            raise InvalidConfigError("mtu must be at least 64 bytes")
        if not self.bottleneck_buffer >= self.cold_buffer >= self.mtu:
            raise InvalidConfigError(
                "buffers must satisfy bottleneck_buffer >= cold_buffer >= mtu"
            )
        if self.rtt < 0 or self.ack_timeout < 0 or self.per_chunk_overhead < 0:
            raise InvalidConfigError("times must be non-negative")
        if self.packet_overhead < 0:
            raise InvalidConfigError("packet_overhead must be non-negative")
        if not 0.0 <= self.loss_rate < 1.0:
            raise InvalidConfigError("loss_rate must lie in [0, 1)")

    @property
    def one_way(self):
        return self.rtt / 2

    def with_rate(self, sender_rate):
        return replace(self, sender_rate=sender_rate)


@dataclass(frozen=True)
class PathState:

    """ Mutable-by-replacement state of a path """

    clock: float = 0.0
    queue_occupancy: float = 0.0
    warmed: bool = False
    drops: int = 0
    delivered_bytes: int = 0
    injected_bytes: int = 0
    dropped_bytes: int = 0


@dataclass(frozen=True)
class Segment:

    """ One MTU-sized packet of a one-sided write """

    offset: int
    len: int
    seq: int


@dataclass(frozen=True)
class BurstResult:

    """
    Outcome of injecting back-to-back packets.

    Attributes:
        first_loss (Optional[int]): Index of the first lost packet, None if all got through
        send_end (numpy.ndarray): Time the last bit of each packet left the sender
        wire_bytes (int): Bytes serialized, framing included
    """

    first_loss: Optional[int]
    send_end: np.ndarray
    wire_bytes: int

    @property
    def end(self):
        return float(self.send_end[-1])


def effective_buffer(cfg, st):
    return cfg.bottleneck_buffer if st.warmed else cfg.cold_buffer


def drain(cfg, st, now):
    """
    Let the node's cache drain while the sender is idle.

    Args:
        cfg (PathConfig): Path configuration
        st (PathState): Current state
        now (float): Time to advance to; earlier times leave the state untouched

    Returns:
        PathState: State at max(now, st.clock)
    """
    if now <= st.clock:
        return st
    released = cfg.bottleneck_drain_rate * (now - st.clock) / 8
    return replace(
        st, clock=now, queue_occupancy=max(0.0, st.queue_occupancy - released)
    )


def path_burst(cfg, st, burst_len):
    """
    Inject a burst at sender_rate and apply the fluid cache model.

    While the sender outruns the drain rate the cache grows at
    (sender_rate - drain_rate); once full, only the drained share of arriving
    bytes is accepted and the rest is tail-dropped.

    Args:
        cfg (PathConfig): Path configuration
        st (PathState): State at injection start (st.clock)
        burst_len (int): Bytes to inject, must be positive

    Returns:
        Tuple[PathState, int, float]: (new state, dropped bytes, completion time
            of the burst measured from st.clock: serialization + propagation)
    """
    if burst_len <= 0:
        raise ValueError("burst_len must be positive")

    rate, drain_rate = cfg.sender_rate, cfg.bottleneck_drain_rate
    capacity = effective_buffer(cfg, st)
    occupancy = st.queue_occupancy
    serialization = 8 * burst_len / rate

    if rate <= drain_rate:
        dropped = 0
        end_occupancy = max(0.0, occupancy - (drain_rate / rate - 1) * burst_len)
    else:
        growth = 1 - drain_rate / rate
        fill_len = (capacity - occupancy) / growth
        if burst_len <= fill_len:
            dropped = 0
            end_occupancy = occupancy + burst_len * growth
        else:
            dropped = int(round((burst_len - fill_len) * growth))
            end_occupancy = float(capacity)

    accepted = burst_len - dropped
    new_state = replace(
        st,
        clock=st.clock + serialization,
        queue_occupancy=end_occupancy,
        warmed=st.warmed or dropped == 0,
        drops=st.drops + math.ceil(dropped / cfg.mtu),
        delivered_bytes=st.delivered_bytes + accepted,
        injected_bytes=st.injected_bytes + burst_len,
        dropped_bytes=st.dropped_bytes + dropped,
    )

    return new_state, dropped, serialization + cfg.one_way


def warm_up(cfg, st, primer_len):
    """
    Send a primer burst against the current (usually cold) cache.

    Args:
        cfg (PathConfig): Path configuration
        st (PathState): Current state
        primer_len (int): Primer size in bytes

    Returns:
        Tuple[PathState, int]: New state, warmed iff the primer was not dropped,
            and the dropped byte count
    """
    new_state, dropped, _ = path_burst(cfg, st, primer_len)
    if dropped:
        logger.debug("primer of %d bytes lost %d bytes", primer_len, dropped)
    return new_state, dropped


def analytic_chunked_latency(
    total, s, bw, rtt, per_chunk_overhead=0.0, mtu=1500, packet_overhead=0
):
    """
    Closed-form latency of an ACK-gated chunked transfer.

    Every chunk pays its serialization, one RTT for data and ACK, and the fixed
    per-chunk overhead; the last chunk's serialization is prorated. With
    packet_overhead set, each MTU packet of a chunk also serializes its framing.

    Args:
        total (int): Payload bytes
        s (int): Base chunk size
        bw (float): Sender rate in bits/s
        rtt (float): Round trip time in seconds
        per_chunk_overhead (float): Fixed cost per chunk in seconds
        mtu (int): Packet payload ceiling
        packet_overhead (int): Framing bytes per packet

    Returns:
        float: Latency in seconds
    """
    if bw <= 0:
        raise ValueError("bandwidth must be positive")
    if s <= 0:
        raise ZeroChunkSizeError("base chunk size must be positive")

    plan = plan_chunks(total, s)
    per_chunk_fixed = rtt + per_chunk_overhead

    def wire(length):
        return length + max(1, math.ceil(length / mtu)) * packet_overhead

    return (plan.num_chunks - 1) * (8 * wire(s) / bw + per_chunk_fixed) + (
        8 * wire(plan.last_chunk_size) / bw + per_chunk_fixed
    )


def segment_lengths(length, mtu):
    """
    Payload length of every packet of a message.

    Args:
        length (int): Message bytes, at least 1
        mtu (int): Packet payload ceiling

    Returns:
        numpy.ndarray: int64 lengths, all mtu except possibly the last
    """
    num_packets = max(1, math.ceil(length / mtu))
    lengths = np.full(num_packets, mtu, dtype=np.int64)
    lengths[-1] = length - (num_packets - 1) * mtu
    return lengths


def segment(offset, length, mtu):
    """
    Packetize a one-sided write.

    Args:
        offset (int): Destination offset of the message
        length (int): Message bytes
        mtu (int): Packet payload ceiling

    Returns:
        List[Segment]: Packets in sequence order
    """
    return [
        Segment(offset=offset + seq * mtu, len=int(size), seq=seq)
        for seq, size in enumerate(segment_lengths(length, mtu))
    ]


class WanPath:

    """
    Packet-level view of a path, used by Go-Back-N.

    Drop decisions follow the same cache arithmetic as path_burst, evaluated at
    each packet's arrival, plus optional seeded or scripted losses.
    """

    def __init__(self, config):
        self.config = config
        self.state = PathState()
        self._rng = np.random.default_rng(config.seed)
        self._scripted = np.array(sorted(config.drop_packets), dtype=np.int64)
        self._transmissions = 0

    @property
    def warmed(self):
        return self.state.warmed

    def transmit(self, start, lengths):
        """
        Inject packets back-to-back at sender_rate from a given time.

        Args:
            start (float): Injection start, not earlier than the path clock
            lengths (numpy.ndarray): Payload bytes of each packet

        Returns:
            BurstResult: Loss position, timing and byte accounting
        """
        cfg = self.config
        st = drain(cfg, self.state, start)
        start = max(start, st.clock)

        lengths = np.asarray(lengths, dtype=np.int64)
        count = len(lengths)
        wire = lengths + cfg.packet_overhead
        wire_cum = np.cumsum(wire)
        send_end = start + wire_cum * 8 / cfg.sender_rate

        # Cache content seen by packet j, assuming every earlier packet was accepted.
        released = cfg.bottleneck_drain_rate * (send_end - start) / 8
        before = np.maximum(
            st.queue_occupancy + np.cumsum(lengths) - lengths - released, 0.0
        )
        overflow = before + lengths > effective_buffer(cfg, st)

        indices = np.arange(self._transmissions, self._transmissions + count)
        lost = overflow | np.isin(indices, self._scripted)
        if cfg.loss_rate > 0:
            lost |= self._rng.random(count) < cfg.loss_rate
        self._transmissions += count

        first_loss = int(np.argmax(lost)) if lost.any() else None
        delivered = int(lengths[~lost].sum())
        dropped = int(lengths.sum()) - delivered

        end = float(send_end[-1])
        end_occupancy = st.queue_occupancy + delivered - cfg.bottleneck_drain_rate * (
            end - start
        ) / 8
        self.state = replace(
            st,
            clock=end,
            queue_occupancy=min(
                float(effective_buffer(cfg, st)), max(0.0, end_occupancy)
            ),
            warmed=st.warmed or first_loss is None,
            drops=st.drops + int(lost.sum()),
            delivered_bytes=st.delivered_bytes + delivered,
            injected_bytes=st.injected_bytes + int(lengths.sum()),
            dropped_bytes=st.dropped_bytes + dropped,
        )

        if first_loss is not None:
            logger.debug(
                "burst of %d packets lost packet %d (%d bytes dropped)",
                count,
                first_loss,
                dropped,
            )

        return BurstResult(
            first_loss=first_loss,
            send_end=send_end,
            wire_bytes=int(wire_cum[-1]),
        )
