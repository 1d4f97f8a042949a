import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fedrdma_sim.errors import InvalidConfigError, ZeroChunkSizeError
from fedrdma_sim.network.wan import (
    GBPS,
    MB,
    PathConfig,
    PathState,
    WanPath,
    analytic_chunked_latency,
    drain,
    path_burst,
    segment,
    warm_up,
)


def test_should_derive_ack_timeout_from_rtt():
    assert PathConfig(rtt=0.05).ack_timeout == pytest.approx(0.15)
    assert PathConfig(rtt=0.05, ack_timeout=1.0).ack_timeout == 1.0


@pytest.mark.parametrize(
    "kwargs",
    [
        {"sender_rate": 0},
        {"bottleneck_drain_rate": -1},
        {"mtu": 63},
        {"cold_buffer": 5 * MB},
        {"cold_buffer": 1000},
        {"rtt": -0.1},
        {"loss_rate": 1.0},
    ],
)
def test_should_reject_invalid_path(kwargs):
    with pytest.raises(InvalidConfigError):
        PathConfig(**kwargs)


def test_should_not_drop_when_sender_is_slower_than_drain():
    cfg = PathConfig(sender_rate=3 * GBPS)

    state, dropped, completion = path_burst(cfg, PathState(), 1000 * MB)

    assert dropped == 0
    assert state.warmed
    assert completion == pytest.approx(8 * 1000 * MB / (3 * GBPS) + 0.01)


@pytest.mark.parametrize(
    "rate,burst,expect_drop",
    [(6 * GBPS, 12 * MB, True), (5 * GBPS, 12 * MB, False), (10 * GBPS, 4 * MB, False)],
)
def test_should_drop_once_warm_cache_overflows(rate, burst, expect_drop):
    cfg = PathConfig(sender_rate=rate)

    _, dropped, _ = path_burst(cfg, PathState(warmed=True), burst)

    assert (dropped > 0) == expect_drop


def test_should_conserve_bytes():
    cfg = PathConfig(sender_rate=10 * GBPS)

    state, dropped, _ = path_burst(cfg, PathState(), 8 * MB)

    assert dropped > 0
    assert state.delivered_bytes + state.dropped_bytes == state.injected_bytes


@pytest.mark.parametrize(
    "primer_len,expect_warmed",
    [(1500, True), (1_100_000, True), (4 * MB, False)],
)
def test_should_warm_up_only_without_drops(primer_len, expect_warmed):
    state, dropped = warm_up(PathConfig(), PathState(), primer_len)

    assert state.warmed == expect_warmed
    assert (dropped == 0) == expect_warmed


def test_should_drain_cache_while_idle():
    cfg = PathConfig()
    state = PathState(clock=1.0, queue_occupancy=1 * MB)

    assert drain(cfg, state, 0.5) == state
    assert drain(cfg, state, 2.0).queue_occupancy == 0.0
    assert drain(cfg, state, 2.0).clock == 2.0


@pytest.mark.parametrize(
    "args,expected_latency",
    [
        ((1000 * MB, 4 * MB, 10 * GBPS, 0.02, 0), 5.80),
        ((1000 * MB, 1000 * MB, 1 * GBPS, 0.02, 0), 8.02),
        ((1_000_000, 1_000_000, 8e6, 0, 0), 1.0),
        ((3_000, 3_000, 8e6, 0, 0, 1_500, 58), 0.003116),
        ((0, 4 * MB, 8e6, 0.01, 0, 1_500, 58), 0.010058),
    ],
)
def test_should_compute_analytic_latency(args, expected_latency):
    assert analytic_chunked_latency(*args) == pytest.approx(expected_latency)


def test_should_reject_zero_chunk_in_analytic_latency():
    with pytest.raises(ZeroChunkSizeError):
        analytic_chunked_latency(10, 0, GBPS, 0.02)


def test_should_segment_message():
    segments = segment(100, 3200, 1500)

    assert [(s.offset, s.len, s.seq) for s in segments] == [
        (100, 1500, 0),
        (1600, 1500, 1),
        (3100, 200, 2),
    ]


def test_should_drop_scripted_packets_by_transmission_index():
    path = WanPath(PathConfig(drop_packets=(2, 6)))

    first = path.transmit(0.0, np.full(5, 1500))
    second = path.transmit(first.end, np.full(5, 1500))

    assert first.first_loss == 2
    assert second.first_loss == 1
    assert path.state.drops == 2


def test_should_charge_framing_on_the_wire():
    path = WanPath(PathConfig(packet_overhead=58))

    burst = path.transmit(0.0, np.array([1500, 1500, 100]))

    assert burst.wire_bytes == 3100 + 3 * 58
    assert burst.end == pytest.approx(8 * (3100 + 3 * 58) / (10 * GBPS))


def test_should_replay_seeded_losses_identically():
    cfg = PathConfig(loss_rate=0.05, seed=7)
    lengths = np.full(200, 1500)

    losses = [WanPath(cfg).transmit(0.0, lengths).first_loss for _ in range(2)]

    assert losses[0] == losses[1]
    assert losses[0] is not None


@settings(max_examples=200, deadline=None)
@given(
    rate=st.floats(min_value=0.1e9, max_value=3.5e9),
    bursts=st.lists(st.integers(min_value=1, max_value=2000), min_size=1, max_size=10),
    gaps=st.floats(min_value=0.0, max_value=0.01),
)
def test_should_never_drop_below_drain_rate(rate, bursts, gaps):
    path = WanPath(PathConfig(sender_rate=rate))

    now = 0.0
    for packets in bursts:
        burst = path.transmit(now, np.full(packets, 1500))
        assert burst.first_loss is None
        now = burst.end + gaps

    assert path.state.drops == 0
