"""
Core Module for Naive RDMA
"""
import logging

from fedrdma_sim.core.report import (
    TransferReport,
    TransportKind,
    TransportParams,
    energy,
)
from fedrdma_sim.network.gbn import QueuePair
from fedrdma_sim.network.memory import register_mr
from fedrdma_sim.network.simulation import Simulation
from fedrdma_sim.utils.chunking import Blob
from fedrdma_sim.utils.saver import report_row, save_csv
from fedrdma_sim.utils.wire import (
    HEADER_SIZE,
    ChunkHeader,
    decode_header,
    encode_header,
)

logger = logging.getLogger(__name__)


class NaiveRdma:

    """
    Send a whole blob as one RDMA write, at line rate, with Go-Back-N recovery
    """

    def __init__(self, params=None):
        self.params = params or TransportParams(kind=TransportKind.NAIVE_RDMA)

    def transfer(self, blob, path):
        """
        Transfer a blob in a single write.

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
        start = sim.now
        header = ChunkHeader(
            seq=1,
            total=1,
            payload_len=blob.length,
            total_payload_len=blob.length,
            payload_crc32=blob.crc,
        )
        data = encode_header(header)
        if not blob.is_virtual:
            data += blob.content

        region = register_mr(HEADER_SIZE + blob.length)
        queue_pair = QueuePair(sim, retry_limit=self.params.retry_limit)
        outcome = yield from queue_pair.write(
            region, 0, data, length=HEADER_SIZE + blob.length
        )

        received = None
        if outcome.succeeded:
            decode_header(region.read(0, HEADER_SIZE))
            received = (
                Blob.virtual(blob.length)
                if blob.is_virtual
                else Blob.from_bytes(region.read(HEADER_SIZE, blob.length))
            )
        else:
            logger.info(
                "naive write of %d bytes failed at %.1f Gbps",
                blob.length,
                sim.config.sender_rate / 1e9,
            )

        latency = sim.now - start
        power = self.params.power

        return TransferReport(
            result=outcome.result,
            latency=latency,
            bytes_on_wire=outcome.bytes_on_wire,
            retransmissions=outcome.retransmissions,
            header_ops=1,
            peak_extra_memory=HEADER_SIZE,
            primer_used=False,
            energy=energy(power, latency),
            kind=TransportKind.NAIVE_RDMA,
            data_bytes=blob.length,
            chunk_bytes=0,
            num_chunks=1,
            power=power,
            peak_in_flight=queue_pair.peak_in_flight,
            detected_at=sim.now - sim.config.one_way if outcome.succeeded else None,
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
