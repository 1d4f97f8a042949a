"""
Core Module for FedRDMA
"""
import logging

from fedrdma_sim.core.link_enable import PrimerKind, apply_link_enable
from fedrdma_sim.core.report import (
    TransferReport,
    TransportKind,
    TransportParams,
    energy,
)
from fedrdma_sim.network.gbn import QueuePair, TransferResult
from fedrdma_sim.network.memory import register_mr
from fedrdma_sim.network.simulation import Simulation
from fedrdma_sim.utils.chunking import Chunk, reassemble, split_blob
from fedrdma_sim.utils.saver import report_row, save_csv
from fedrdma_sim.utils.wire import HEADER_SIZE, decode_header, encode_header

logger = logging.getLogger(__name__)


class FedRdma:

    """
    Chunked RDMA: every chunk carries its own header, chunks go out in ascending
    order one at a time, and the receiver reassembles them from a temporary store.
    """

    def __init__(self, params=None):
        self.params = params or TransportParams(kind=TransportKind.FEDRDMA_V1)

    def transfer(self, blob, path):
        """
        Transfer a blob chunk by chunk.

        Args:
            blob (Blob): Payload to send
            path (Union[PathConfig, Simulation]): Path to send over

        Returns:
            TransferReport: Outcome of the transfer
        """
        sim = Simulation.of(path)
        return sim.run(self.process(sim, blob))

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
        params = self.params
        start = sim.now

        plan, chunks = split_blob(blob, params.base_chunk_size)
        decision = apply_link_enable(params, cfg, plan)
        queue_pair = QueuePair(
            sim, retry_limit=params.retry_limit, window=params.window
        )
        staging = register_mr(HEADER_SIZE + plan.largest_chunk)

        bytes_on_wire = 0
        retransmissions = 0
        result = TransferResult.SUCCESS

        if decision.kind is PrimerKind.PROBE:
            outcome = yield from queue_pair.probe()
            bytes_on_wire += outcome.bytes_on_wire
            retransmissions += outcome.retransmissions
            if not outcome.succeeded:
                result = outcome.result

        schedule = list(chunks)
        if decision.kind is PrimerKind.LAST_CHUNK:
            schedule = schedule[-1:] + schedule[:-1]

        encode_ops = 0
        decode_ops = 0
        store = []
        for position, chunk in enumerate(schedule):
            if result is not TransferResult.SUCCESS:
                break

            data = encode_header(chunk.header)
            encode_ops += 1
            if chunk.payload is not None:
                data += chunk.payload

            outcome = yield from queue_pair.write(
                staging, 0, data, length=HEADER_SIZE + chunk.length
            )
            bytes_on_wire += outcome.bytes_on_wire
            retransmissions += outcome.retransmissions
            if not outcome.succeeded:
                result = outcome.result
                logger.info(
                    "chunk %d of %d failed at %.1f Gbps",
                    chunk.seq,
                    plan.num_chunks,
                    cfg.sender_rate / 1e9,
                )
                break

            # The receiver moves the chunk out of staging before the next one lands.
            header = decode_header(staging.read(0, HEADER_SIZE))
            decode_ops += 1
            payload = None
            if chunk.payload is not None:
                payload = staging.read(HEADER_SIZE, header.payload_len)
            store.append(
                Chunk(header=header, payload=payload, length=header.payload_len)
            )

            pause = cfg.per_chunk_overhead
            if position < len(schedule) - 1:
                pause += params.artificial_delay
            yield sim.wait_until(sim.now + pause)

        latency = sim.now - start
        received = reassemble(store) if result is TransferResult.SUCCESS else None
        power = params.power

        return TransferReport(
            result=result,
            latency=latency,
            bytes_on_wire=bytes_on_wire,
            retransmissions=retransmissions,
            header_ops=encode_ops,
            peak_extra_memory=blob.length + HEADER_SIZE * plan.num_chunks,
            primer_used=decision.required,
            energy=energy(power, latency),
            kind=TransportKind.FEDRDMA_V1,
            data_bytes=blob.length,
            chunk_bytes=params.base_chunk_size,
            num_chunks=plan.num_chunks,
            power=power,
            peak_in_flight=queue_pair.peak_in_flight,
            detected_at=sim.now if received is not None else None,
            received=received,
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
