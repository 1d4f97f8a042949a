import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fedrdma_sim.core.fedrdma_e import FedRdmaE
from fedrdma_sim.core.report import TransportParams
from fedrdma_sim.core.transfer import (
    fedrdma_e_transfer,
    fedrdma_v1_transfer,
    tcp_like_transfer,
)
from fedrdma_sim.errors import RegionTooSmallError
from fedrdma_sim.network.gbn import TransferResult
from fedrdma_sim.network.memory import MRPool, poll_header
from fedrdma_sim.network.simulation import Simulation
from fedrdma_sim.network.wan import GBPS, MB, PathConfig, analytic_chunked_latency
from fedrdma_sim.utils.chunking import Blob


def test_should_reproduce_gigabyte_latency(default_path):
    report = fedrdma_e_transfer(Blob.virtual(1000 * MB), default_path)

    assert report.result is TransferResult.SUCCESS
    assert report.latency == pytest.approx(6.0, rel=0.1)
    assert report.header_ops == 1
    assert report.peak_extra_memory <= 64_000
    assert report.primer_used
    assert report.detected_at is not None
    assert report.detected_at <= report.latency


def test_should_beat_v1_and_tcp_like_on_default_path(default_path):
    blob = Blob.virtual(100 * MB)

    fedrdma_e = fedrdma_e_transfer(blob, default_path).latency
    fedrdma_v1 = fedrdma_v1_transfer(blob, default_path).latency
    tcp_like = tcp_like_transfer(blob, default_path).latency

    assert fedrdma_e < fedrdma_v1 < tcp_like


def test_should_write_single_chunk_blob_in_one_message(random_blob, lossless_path):
    sim = Simulation(lossless_path)

    report = FedRdmaE().transfer(random_blob, sim)

    bursts = [fields for _, kind, fields in sim.trace if kind == "burst"]
    assert report.num_chunks == 1
    assert len(bursts) == 1
    assert report.received == random_blob


def test_should_deliver_blob_built_from_raw_content(lossless_path):
    report = fedrdma_e_transfer(Blob(length=3, content=b"abc"), lossless_path)

    assert report.succeeded
    assert report.received.content == b"abc"


def test_should_leave_valid_header_in_region(lossless_path):
    blob = Blob.random(10_000, seed=2)
    pool = MRPool.create(10_032, size=1)
    params = TransportParams(base_chunk_size=3_000)

    fedrdma_e_transfer(blob, lossless_path, params, pool=pool)

    header = poll_header(pool.regions[0])
    assert (header.seq, header.total, header.total_payload_len) == (1, 4, 10_000)
    assert pool.regions[0].read(32, 10_000) == blob.content


def test_should_raise_when_given_pool_is_too_small(random_blob, lossless_path):
    pool = MRPool.create(1_000, size=2)

    with pytest.raises(RegionTooSmallError):
        fedrdma_e_transfer(random_blob, lossless_path, pool=pool)


def test_should_rotate_pool_across_transfers(random_blob, lossless_path):
    pool = MRPool.create(200_000, size=2)
    transport = FedRdmaE(pool=pool)
    sim = Simulation(lossless_path)

    reports = [transport.transfer(random_blob, sim) for _ in range(3)]

    assert all(report.received == random_blob for report in reports)
    assert pool.acquisitions == 3
    assert pool.cursor == 1


def test_should_grow_owned_pool():
    transport = FedRdmaE()

    small = transport.ensure_pool(100)
    large = transport.ensure_pool(1_000)

    assert small.capacity == 132
    assert large.capacity == 1_032
    assert transport.ensure_pool(10) is large


def test_should_fail_without_detection_on_oversized_chunks(default_path):
    params = TransportParams(base_chunk_size=12 * MB)

    report = fedrdma_e_transfer(Blob.virtual(1000 * MB), default_path, params)

    assert report.result is TransferResult.TRANSMISSION_FAILURE
    assert report.detected_at is None
    assert report.received is None


def test_should_retransmit_on_unprimed_path(default_path):
    params = TransportParams(link_enable_policy="off")

    report = fedrdma_e_transfer(Blob.virtual(40 * MB), default_path, params)

    assert report.succeeded
    assert not report.primer_used
    assert report.retransmissions > 0


@settings(max_examples=100, deadline=None)
@given(
    total=st.integers(min_value=1, max_value=20 * MB),
    chunk_size=st.integers(min_value=64_000, max_value=4 * MB),
    rate=st.floats(min_value=0.5 * GBPS, max_value=3.5 * GBPS),
    rtt=st.floats(min_value=0.001, max_value=0.05),
    overhead=st.floats(min_value=0.0, max_value=0.005),
)
def test_should_agree_with_analytic_latency(total, chunk_size, rate, rtt, overhead):
    # Below the drain rate the path never drops, whatever the chunk size.
    path = PathConfig(sender_rate=rate, rtt=rtt, per_chunk_overhead=overhead)
    params = TransportParams(base_chunk_size=chunk_size, link_enable_policy="off")

    report = fedrdma_e_transfer(Blob.virtual(total), path, params)

    expected = analytic_chunked_latency(
        total,
        chunk_size,
        rate,
        rtt,
        per_chunk_overhead=overhead,
        mtu=path.mtu,
        packet_overhead=path.packet_overhead,
    )
    assert report.succeeded
    assert report.latency == pytest.approx(expected, rel=0.01)


@settings(max_examples=500, deadline=None)
@given(
    length=st.integers(min_value=0, max_value=20_000),
    chunk_size=st.integers(min_value=512, max_value=8_192),
    seed=st.integers(min_value=0, max_value=2 ** 32 - 1),
)
def test_should_expose_whole_payload_at_first_valid_header(length, chunk_size, seed):
    path = PathConfig(sender_rate=2 * GBPS, rtt=0.001)
    blob = Blob.random(length, seed=seed)
    params = TransportParams(base_chunk_size=chunk_size)

    # The poller raises if the header becomes valid before every byte landed.
    report = fedrdma_e_transfer(blob, path, params)

    assert report.succeeded
    assert report.received == blob
    assert report.detected_at is not None
    assert report.peak_in_flight <= chunk_size + 32


def test_should_save_report(lossless_path, output_dir, random_blob):
    transport = FedRdmaE()
    report = transport.transfer(random_blob, lossless_path)

    transport.save(report, lossless_path, output_dir, "e.csv")

    assert (output_dir / "e.csv").exists()
