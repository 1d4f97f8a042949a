import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fedrdma_sim.core.fedrdma import FedRdma
from fedrdma_sim.core.report import TransportKind, TransportParams
from fedrdma_sim.core.transfer import fedrdma_v1_transfer
from fedrdma_sim.network.gbn import TransferResult
from fedrdma_sim.network.simulation import Simulation
from fedrdma_sim.network.wan import GBPS, MB, PathConfig, analytic_chunked_latency
from fedrdma_sim.utils.chunking import Blob


def test_should_reproduce_gigabyte_latency(default_path):
    report = fedrdma_v1_transfer(Blob.virtual(1000 * MB), default_path)

    assert report.result is TransferResult.SUCCESS
    assert report.latency == pytest.approx(9.4, rel=0.1)
    assert report.header_ops == 250
    assert report.num_chunks == 250
    assert report.peak_extra_memory >= 1000 * MB
    assert report.primer_used
    assert report.energy == pytest.approx(18.7 * report.latency)


def test_should_approach_analytic_latency_without_delay(default_path):
    params = TransportParams(kind=TransportKind.FEDRDMA_V1, artificial_delay=0.0)

    report = fedrdma_v1_transfer(Blob.virtual(1000 * MB), default_path, params)

    assert report.latency == pytest.approx(5.80, rel=0.02)


def test_should_fail_with_oversized_chunks(default_path):
    params = TransportParams(kind=TransportKind.FEDRDMA_V1, base_chunk_size=12 * MB)

    report = fedrdma_v1_transfer(Blob.virtual(1000 * MB), default_path, params)

    assert report.result is TransferResult.TRANSMISSION_FAILURE
    assert report.received is None


def test_should_reassemble_exact_content(random_blob, lossless_path):
    params = TransportParams(kind=TransportKind.FEDRDMA_V1, base_chunk_size=7_000)

    report = FedRdma(params).transfer(random_blob, lossless_path)

    assert report.succeeded
    assert report.received == random_blob
    assert report.header_ops == report.num_chunks == 15
    assert report.peak_in_flight <= 7_000 + 32


def test_should_send_short_last_chunk_first_as_primer():
    path = PathConfig(sender_rate=10 * GBPS, rtt=0.002)
    params = TransportParams(kind=TransportKind.FEDRDMA_V1, base_chunk_size=2 * MB)
    blob = Blob.random(4 * MB + 1000, seed=5)
    sim = Simulation(path)

    report = FedRdma(params).transfer(blob, sim)

    bursts = [dict(fields) for _, kind, fields in sim.trace if kind == "burst"]
    assert report.succeeded
    assert report.primer_used
    assert report.retransmissions == 0
    assert report.received == blob
    assert bursts[0]["last"] == 0


@settings(max_examples=100, deadline=None)
@given(
    total=st.integers(min_value=1, max_value=20 * MB),
    chunk_size=st.integers(min_value=64_000, max_value=4 * MB),
    rate=st.floats(min_value=0.5 * GBPS, max_value=3.5 * GBPS),
    rtt=st.floats(min_value=0.001, max_value=0.05),
)
def test_should_agree_with_analytic_latency(total, chunk_size, rate, rtt):
    path = PathConfig(sender_rate=rate, rtt=rtt)
    params = TransportParams(
        kind=TransportKind.FEDRDMA_V1,
        base_chunk_size=chunk_size,
        artificial_delay=0.0,
        link_enable_policy="off",
    )

    report = fedrdma_v1_transfer(Blob.virtual(total), path, params)

    expected = analytic_chunked_latency(
        total,
        chunk_size,
        rate,
        rtt,
        mtu=path.mtu,
        packet_overhead=path.packet_overhead,
    )
    assert report.succeeded
    assert report.latency == pytest.approx(expected, rel=0.01)


def test_should_save_report(lossless_path, output_dir, random_blob):
    transport = FedRdma()
    report = transport.transfer(random_blob, lossless_path)

    transport.save(report, lossless_path, output_dir, "v1.csv")

    assert (output_dir / "v1.csv").exists()
