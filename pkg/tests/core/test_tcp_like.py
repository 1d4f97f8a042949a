import pytest

from fedrdma_sim.core.report import TransportKind, TransportParams
from fedrdma_sim.core.tcp_like import TcpLike, TokenBucket
from fedrdma_sim.core.transfer import tcp_like_transfer
from fedrdma_sim.network.gbn import TransferResult
from fedrdma_sim.network.wan import GBPS, MB, PathConfig
from fedrdma_sim.utils.chunking import Blob


def test_should_reproduce_window_limited_gigabyte(default_path):
    report = tcp_like_transfer(Blob.virtual(1000 * MB), default_path)

    assert report.result is TransferResult.SUCCESS
    assert report.latency == pytest.approx(24.6, rel=0.1)
    assert report.energy == pytest.approx(5.1 * report.latency)
    assert report.header_ops == 0
    assert report.peak_extra_memory == 2 * 812_500
    assert report.bytes_on_wire == 1000 * MB + 666_667 * 58


def test_should_be_bandwidth_limited_with_huge_window():
    params = TransportParams(kind=TransportKind.TCP_LIKE, tcp_window=10 ** 12)

    report = tcp_like_transfer(
        Blob.virtual(1000 * MB), PathConfig(sender_rate=1 * GBPS), params
    )

    assert 8.0 < report.latency < 8.3


def test_should_take_one_rtt_for_empty_blob(default_path):
    report = tcp_like_transfer(Blob.virtual(0), default_path)

    assert report.latency == pytest.approx(default_path.rtt)


def test_should_fall_into_sawtooth_when_window_overflows_cache():
    transport = TcpLike(TransportParams(kind="tcp_like", tcp_window=4 * MB))

    assert transport.effective_window(PathConfig(), warmed=False) == 3 * MB
    assert transport.effective_window(PathConfig(), warmed=True) == 4 * MB


@pytest.mark.parametrize("tcp_window", [812_500, 4 * MB])
@pytest.mark.parametrize("smoothing_rate", [10 * GBPS, 3.5 * GBPS])
def test_should_not_slow_down_when_smoothed(tcp_window, smoothing_rate, default_path):
    plain = TcpLike(TransportParams(kind="tcp_like", tcp_window=tcp_window))
    smoothed = TcpLike(
        TransportParams(
            kind="tcp_like", tcp_window=tcp_window, smoothing_rate=smoothing_rate
        )
    )

    assert smoothed.latency(1000 * MB, default_path) <= plain.latency(
        1000 * MB, default_path
    )


def test_should_speed_up_overflowing_window_when_smoothed(default_path):
    plain = TcpLike(TransportParams(kind="tcp_like", tcp_window=4 * MB))
    smoothed = TcpLike(
        TransportParams(kind="tcp_like", tcp_window=4 * MB, smoothing_rate=3.5 * GBPS)
    )

    assert smoothed.latency(1000 * MB, default_path) < plain.latency(
        1000 * MB, default_path
    )


def test_should_compute_token_bucket_excess():
    bucket = TokenBucket(rate=3.5 * GBPS, capacity=15_000)

    assert bucket.burst_rate(10 * GBPS) == 3.5 * GBPS
    assert bucket.peak_excess(4 * MB, 10 * GBPS, 3.5 * GBPS) == pytest.approx(9_750)


def test_should_save_report(default_path, output_dir):
    transport = TcpLike()
    report = transport.transfer(Blob.virtual(1 * MB), default_path)

    transport.save(report, default_path, output_dir, "tcp.csv")

    assert (output_dir / "tcp.csv").exists()
