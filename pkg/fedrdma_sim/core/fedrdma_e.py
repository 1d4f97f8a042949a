"""
Core Module for FedRDMA-E
"""
import logging

from fedrdma_sim.core.link_enable import PrimerKind, apply_link_enable
from fedrdma_sim.core.report import (
    TransferReport,
    TransportKind,
    TransportParams,
    energy,
)
from fedrdma_sim.errors import CrcMismatchError, RegionTooSmallError
from fedrdma_sim.network.gbn import QueuePair, TransferResult
from fedrdma_sim.network.memory import MRPool, acquire_next, poll_header
from fedrdma_sim.network.simulation import Simulation
from fedrdma_sim.utils.chunking import Blob, plan_chunks
from fedrdma_sim.utils.saver import report_row, save_csv
from fedrdma_sim.utils.wire import (
    FLAG_CARRIES_TOTAL,
    HEADER_SIZE,
    ChunkHeader,
    encode_header,
)

logger = logging.getLogger(__name__)

# Bytes of receiver bookkeeping: one completion word per pool region plus the cursor.
BOOKKEEPING_WORD = 8
MIN_POLL_PERIOD = 1e-6


class FedRdmaE:

    """
    In-place chunked RDMA into a pool of large receive regions.

    Chunks are written straight to their final offsets from the last to the first;
    only the first chunk carries a header, so the header landing is the completion
    signal the receiver polls for.
    """

    def __init__(self, params=None, pool=None):
        self.params = params or TransportParams(kind=TransportKind.FEDRDMA_E)
        self.pool = pool
        self._owns_pool = pool is None

    def transfer(self, blob, path):
        """
        Transfer a blob back to front into the next receive region.

        Args:
            blob (Blob): Payload to send
            path (Union[PathConfig, Simulation]): Path to send over

        Returns:
            TransferReport: Outcome of the transfer
        """
        sim = Simulation.of(path)
        return sim.run(self.process(sim, blob))

    def ensure_pool(self, length):
        """
        Get the receive pool, registering one sized for the transfer if the
        transport owns its pool. A pool given by the caller is never replaced.

        Args:
            length (int): Payload bytes of the coming transfer

        Returns:
            MRPool: Receive pool
        """
        needed = HEADER_SIZE + length
        if self._owns_pool and (self.pool is None or self.pool.capacity < needed):
            if self.pool is not None:
                logger.info("growing receive pool to %d bytes", needed)
            self.pool = MRPool.create(needed, self.params.pool_size)
        return self.pool

    def poll_period(self, cfg):
        if self.params.poll_period is not None:
            return self.params.poll_period
        return max(cfg.rtt / 4, MIN_POLL_PERIOD)

    def process(self, sim, blob, pool=None):
        """
        simpy process body of a transfer.

        Args:
            sim (Simulation): Simulation the transfer runs in
            blob (Blob): Payload to send
            pool (Optional[MRPool]): Receive pool, defaults to the transport's own

        Returns:
            TransferReport: Outcome of the transfer

        Raises:
            RegionTooSmallError: The acquired region cannot hold header and payload
        """
        cfg = sim.config
        params = self.params
        start = sim.now

        pool = pool or self.ensure_pool(blob.length)
        _, region = acquire_next(pool)
        if region.capacity < HEADER_SIZE + blob.length:
            raise RegionTooSmallError(
                f"region of {region.capacity} bytes cannot receive "
                f"{HEADER_SIZE + blob.length} bytes"
            )

        plan = plan_chunks(blob.length, params.base_chunk_size)
        header = ChunkHeader(
            seq=1,
            total=plan.num_chunks,
            payload_len=plan.chunk_size(1),
            total_payload_len=blob.length,
            payload_crc32=blob.crc,
            flags=FLAG_CARRIES_TOTAL,
        )
        encoded_header = encode_header(header)

        decision = apply_link_enable(params, cfg, plan)
        queue_pair = QueuePair(
            sim, retry_limit=params.retry_limit, window=params.window
        )

        receiver = {"done": False, "detected_at": None, "received": None}
        poller = sim.spawn(self.poll(sim, region, blob, receiver))

        bytes_on_wire = 0
        retransmissions = 0
        result = TransferResult.SUCCESS

        if decision.kind is PrimerKind.PROBE:
            outcome = yield from queue_pair.probe()
            bytes_on_wire += outcome.bytes_on_wire
            retransmissions += outcome.retransmissions
            result = outcome.result

        for seq in range(plan.num_chunks, 0, -1):
            if result is not TransferResult.SUCCESS:
                break

            size = plan.chunk_size(seq)
            payload_offset = plan.chunk_offset(seq)
            payload = None
            if not blob.is_virtual:
                payload = blob.content[payload_offset : payload_offset + size]

            if seq == 1:
                data = encoded_header + (payload or b"")
                outcome = yield from queue_pair.write(
                    region, 0, data, length=HEADER_SIZE + size
                )
            else:
                outcome = yield from queue_pair.write(
                    region, HEADER_SIZE + payload_offset, payload, length=size
                )

            bytes_on_wire += outcome.bytes_on_wire
            retransmissions += outcome.retransmissions
            result = outcome.result
            if not outcome.succeeded:
                logger.info(
                    "chunk %d of %d failed at %.1f Gbps",
                    seq,
                    plan.num_chunks,
                    cfg.sender_rate / 1e9,
                )
                break

            yield sim.wait_until(sim.now + cfg.per_chunk_overhead)

        latency = sim.now - start
        if result is TransferResult.SUCCESS:
            yield poller
        else:
            receiver["done"] = True

        power = params.power

        return TransferReport(
            result=result,
            latency=latency,
            bytes_on_wire=bytes_on_wire,
            retransmissions=retransmissions,
            header_ops=1,
            peak_extra_memory=HEADER_SIZE + BOOKKEEPING_WORD * (len(pool) + 1),
            primer_used=decision.required,
            energy=energy(power, latency),
            kind=TransportKind.FEDRDMA_E,
            data_bytes=blob.length,
            chunk_bytes=params.base_chunk_size,
            num_chunks=plan.num_chunks,
            power=power,
            peak_in_flight=queue_pair.peak_in_flight,
            detected_at=receiver["detected_at"],
            received=receiver["received"],
        )

    def poll(self, sim, region, blob, receiver):
        """
        Receiver loop: check the first bytes of the region every poll period.

        At the first valid header the payload is read in place, without any
        reassembly.

        Args:
            sim (Simulation): Simulation the transfer runs in
            region (MemoryRegion): Region being written
            blob (Blob): Payload the sender is writing, for its size only
            receiver (Dict): Shared flags, filled with detected_at and received
        """
        period = self.poll_period(sim.config)
        while not receiver["done"]:
            header = poll_header(region)
            if header is not None:
                receiver["detected_at"] = sim.now
                if blob.is_virtual:
                    received = Blob.virtual(header.total_payload_len)
                else:
                    received = Blob.from_bytes(
                        region.read(HEADER_SIZE, header.total_payload_len)
                    )
                    if received.crc != header.payload_crc32:
                        raise CrcMismatchError(
                            "payload visible at completion does not match its checksum"
                        )
                receiver["received"] = received
                receiver["done"] = True
                sim.record("detected", length=header.total_payload_len)
                return
            yield sim.wait_until(sim.now + period)

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
