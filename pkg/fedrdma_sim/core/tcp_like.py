"""
Core Module for the TCP-like baseline
"""
import logging
import math
from dataclasses import dataclass

from fedrdma_sim.core.report import (
    TransferReport,
    TransportKind,
    TransportParams,
    energy,
)
from fedrdma_sim.network.gbn import TransferResult
from fedrdma_sim.network.simulation import Simulation
from fedrdma_sim.utils.saver import report_row, save_csv

logger = logging.getLogger(__name__)

INITIAL_WINDOW_PACKETS = 10
# Average window of a loss-driven sawtooth between W / 2 and W.
SAWTOOTH_FACTOR = 0.75


@dataclass(frozen=True)
class TokenBucket:

    """
    Sender-side smoother: a bucket of `capacity` bytes refilled at `rate` bits/s.

    A full bucket lets `capacity` bytes leave at line rate; the rest of a burst
    leaves at the refill rate.
    """

    rate: float
    capacity: int

    def burst_rate(self, line_rate):
        return min(line_rate, self.rate)

    def peak_excess(self, burst_len, line_rate, drain_rate):
        """
        Peak cache growth a burst causes at a node draining at drain_rate.

        Args:
            burst_len (int): Burst bytes
            line_rate (float): Unshaped sender rate, bits/s
            drain_rate (float): Node drain rate, bits/s

        Returns:
            float: Bytes
        """
        head = min(burst_len, self.capacity)
        tail = burst_len - head
        return head * max(0.0, 1 - drain_rate / line_rate) + tail * max(
            0.0, 1 - drain_rate / self.burst_rate(line_rate)
        )


class TcpLike:

    """
    Window-limited goodput model of a TCP flow with slow start
    """

    def __init__(self, params=None):
        self.params = params or TransportParams(kind=TransportKind.TCP_LIKE)

    def transfer(self, blob, path):
        """
        Transfer a blob over a modeled TCP connection.

        Args:
            blob (Blob): Payload to send
            path (Union[PathConfig, Simulation]): Path to send over

        Returns:
            TransferReport: Outcome of the transfer, never a failure
        """
        sim = Simulation.of(path)
        return sim.run(self.process(sim, blob))

    def effective_window(self, cfg, warmed):
        """
        Window the flow sustains on a path.

        A window whose line-rate burst overflows the intermediate cache settles
        into a loss sawtooth.

        Args:
            cfg (PathConfig): Path configuration
            warmed (bool): Whether the path is primed

        Returns:
            float: Average window in bytes
        """
        window = self.params.tcp_window
        if self.params.smoothing_rate is not None:
            bucket = TokenBucket(
                rate=self.params.smoothing_rate,
                capacity=INITIAL_WINDOW_PACKETS * cfg.mtu,
            )
            excess = bucket.peak_excess(
                window, cfg.sender_rate, cfg.bottleneck_drain_rate
            )
        else:
            excess = window * max(
                0.0, 1 - cfg.bottleneck_drain_rate / cfg.sender_rate
            )

        buffer = cfg.bottleneck_buffer if warmed else cfg.cold_buffer
        if excess > buffer:
            logger.debug("window of %d bytes overflows the path cache", window)
            return window * SAWTOOTH_FACTOR
        return window

    def latency(self, length, cfg, warmed=False):
        """
        Modeled transfer latency.

        Slow start doubles the window from ten packets each round trip up to the
        effective window; the rest flows at min(burst rate, 8 * window / rtt); the
        final round trip acknowledges the last byte.

        Args:
            length (int): Payload bytes
            cfg (PathConfig): Path configuration
            warmed (bool): Whether the path is primed

        Returns:
            float: Latency in seconds
        """
        max_window = self.effective_window(cfg, warmed)
        burst_rate = cfg.sender_rate
        if self.params.smoothing_rate is not None:
            burst_rate = min(burst_rate, self.params.smoothing_rate)

        window = INITIAL_WINDOW_PACKETS * cfg.mtu
        sent = 0
        elapsed = 0.0
        while window < max_window and length - sent > window:
            sent += window
            elapsed += max(cfg.rtt, 8 * window / burst_rate)
            window = min(2 * window, max_window)

        rate = burst_rate
        if cfg.rtt > 0:
            rate = min(burst_rate, 8 * max_window / cfg.rtt)

        return elapsed + 8 * (length - sent) / rate + cfg.rtt

    def process(self, sim, blob):
        """
        simpy process body of a transfer.

        Args:
            sim (Simulation): Simulation the transfer runs in
            blob (Blob): Payload to send

        Returns:
            TransferReport: Outcome of the transfer
        """
        cfg = sim.config
        start = sim.now
        latency = self.latency(blob.length, cfg, warmed=sim.path.warmed)
        yield sim.wait_until(start + latency)
        sim.record("tcp_transfer", length=blob.length)

        packets = max(1, math.ceil(blob.length / cfg.mtu))
        power = self.params.power

        return TransferReport(
            result=TransferResult.SUCCESS,
            latency=latency,
            bytes_on_wire=blob.length + packets * cfg.packet_overhead,
            retransmissions=0,
            header_ops=0,
            peak_extra_memory=2 * self.params.tcp_window,
            primer_used=False,
            energy=energy(power, latency),
            kind=TransportKind.TCP_LIKE,
            data_bytes=blob.length,
            chunk_bytes=0,
            num_chunks=1,
            power=power,
            peak_in_flight=min(blob.length, self.params.tcp_window),
            detected_at=start + latency - cfg.one_way,
            received=blob,
        )

    def save(self, report, path, output_dir, output_name):
        """
        Save the report to a specific dir.

        Args:
            report (TransferReport): Report to save
            path (PathConfig): Path the transfer ran over
            output_dir (str): Output directory path
            output_name (str): Output name
        """
        save_csv([report_row(report, path)], output_dir, output_name)
