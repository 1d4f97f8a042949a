"""
Module for Go-Back-N reliable delivery of one-sided writes

gbn_step is the pure sender state machine; QueuePair drives it over a WanPath
inside a Simulation.
"""
import enum
import logging
import math
from dataclasses import dataclass, replace

from fedrdma_sim.errors import ProtocolViolationError
from fedrdma_sim.network.memory import MemoryRegion
from fedrdma_sim.network.simulation import Simulation
from fedrdma_sim.network.wan import segment_lengths
from fedrdma_sim.utils.wire import encode_header, primer_header

logger = logging.getLogger(__name__)

DEFAULT_RETRY_LIMIT = 7


class TransferResult(enum.Enum):
    SUCCESS = "success"
    TRANSMISSION_FAILURE = "transmission_failure"


@dataclass(frozen=True)
class TransferOutcome:
    result: TransferResult
    latency: float
    bytes_on_wire: int
    retransmissions: int

    @property
    def succeeded(self):
        return self.result is TransferResult.SUCCESS


@dataclass(frozen=True)
class GbnState:

    """
    Sender side of Go-Back-N, in packet sequence numbers.

    Attributes:
        base (int): Oldest unacknowledged packet
        next_seq (int): Next packet to send
        window (int): Maximum packets in flight
        retries_remaining (int): Timeouts left before the transfer fails
        timer_deadline (float): Retransmission timer, inf when stopped
        total (int): Packets in the message
        rto (float): Retransmission timeout
    """

    base: int
    next_seq: int
    window: int
    retries_remaining: int
    timer_deadline: float = math.inf
    total: int = 0
    rto: float = 0.0


@dataclass(frozen=True)
class Ack:
    seq: int
    at: float = 0.0


@dataclass(frozen=True)
class Timeout:
    at: float = 0.0


@dataclass(frozen=True)
class SendCredit:
    credits: int = 1
    at: float = 0.0


@dataclass(frozen=True)
class SendRange:
    first: int
    last: int


@dataclass(frozen=True)
class RestartTimer:
    deadline: float


@dataclass(frozen=True)
class StopTimer:
    pass


@dataclass(frozen=True)
class Rewind:
    from_seq: int
    count: int


@dataclass(frozen=True)
class Complete:
    pass


@dataclass(frozen=True)
class Fail:
    pass


def gbn_step(state, event):
    """
    Apply one event to the sender state machine.

    Args:
        state (GbnState): Current state
        event (Union[Ack, Timeout, SendCredit]): Event to apply

    Returns:
        Tuple[GbnState, List]: New state and the actions to carry out

    Raises:
        ProtocolViolationError: Cumulative ack outside [base - 1, next_seq)
    """
    if isinstance(event, Ack):
        if event.seq < state.base - 1 or event.seq >= state.next_seq:
            raise ProtocolViolationError(
                f"ack {event.seq} outside [{state.base - 1}, {state.next_seq})"
            )
        if event.seq == state.base - 1:
            return state, []

        base = event.seq + 1
        if base == state.total:
            return (
                replace(state, base=base, timer_deadline=math.inf),
                [StopTimer(), Complete()],
            )
        if base == state.next_seq:
            return replace(state, base=base, timer_deadline=math.inf), [StopTimer()]

        deadline = event.at + state.rto
        return (
            replace(state, base=base, timer_deadline=deadline),
            [RestartTimer(deadline)],
        )

    if isinstance(event, Timeout):
        if state.base == state.next_seq:
            return state, []
        if state.retries_remaining == 0:
            return replace(state, timer_deadline=math.inf), [Fail()]

        count = state.next_seq - state.base
        return (
            replace(
                state,
                next_seq=state.base,
                retries_remaining=state.retries_remaining - 1,
                timer_deadline=math.inf,
            ),
            [Rewind(state.base, count)],
        )

    if isinstance(event, SendCredit):
        limit = min(state.total, state.base + state.window)
        if state.next_seq >= limit or event.credits < 1:
            return state, []

        last = min(limit, state.next_seq + event.credits) - 1
        actions = [SendRange(state.next_seq, last)]
        deadline = state.timer_deadline
        if state.base == state.next_seq:
            deadline = event.at + state.rto
            actions.append(RestartTimer(deadline))

        return replace(state, next_seq=last + 1, timer_deadline=deadline), actions

    raise TypeError(f"unknown event {event!r}")


class QueuePair:

    """
    Sending end of a reliable connection.

    The retry budget belongs to the queue pair, so every message sent through it
    draws from the same budget; acks restart the timer but never refill it.
    """

    def __init__(self, sim, retry_limit=DEFAULT_RETRY_LIMIT, window=None):
        if window is not None and window < 1:
            raise ValueError("window must be at least one packet")
        self.sim = sim
        self.retry_limit = retry_limit
        self.retries_remaining = retry_limit
        self.window = window
        self.peak_in_flight = 0
        self.messages = 0
        self.scratch = MemoryRegion(sim.config.mtu)

    def probe(self):
        """
        Send an MTU-sized Link-Enable primer into the local scratch buffer.

        The primer carries no transfer data and does not count toward
        peak_in_flight.

        Returns:
            TransferOutcome: Delivery outcome of the primer
        """
        peak_in_flight = self.peak_in_flight
        outcome = yield from self.write(
            self.scratch,
            0,
            encode_header(primer_header()),
            length=self.sim.config.mtu,
        )
        self.peak_in_flight = peak_in_flight
        self.sim.record("primer", result=outcome.result.value)
        return outcome

    def write(self, region, offset, data=None, length=None):
        """
        One-sided write of a message, as a simpy process.

        The message becomes visible in the destination region once its last
        byte is delivered; partially delivered messages stay invisible. When
        length exceeds len(data), the message is data followed by bytes that are
        accounted for but never materialised.

        Args:
            region (Optional[MemoryRegion]): Destination, None for a scratch send
            offset (int): Destination offset
            data (Optional[bytes]): Leading message bytes, None for a size-only message
            length (Optional[int]): Message size, defaults to len(data)

        Returns:
            TransferOutcome: Delivery outcome
        """
        sim = self.sim
        cfg = sim.config
        known = 0 if data is None else len(data)
        if length is None:
            length = known
        if not length or length < known:
            raise ValueError("a write carries at least its data and one byte")
        if region is not None:
            region.check_range(offset, length)

        start = sim.now
        lengths = segment_lengths(length, cfg.mtu)
        state = GbnState(
            base=0,
            next_seq=0,
            window=self.window or len(lengths),
            retries_remaining=self.retries_remaining,
            total=len(lengths),
            rto=cfg.ack_timeout,
        )
        self.peak_in_flight = max(self.peak_in_flight, length)
        self.messages += 1

        bytes_on_wire = 0
        retransmissions = 0
        result = None

        while result is None:
            state, actions = gbn_step(state, SendCredit(len(lengths), sim.now))
            send = actions[0]
            burst = sim.path.transmit(sim.now, lengths[send.first : send.last + 1])
            bytes_on_wire += burst.wire_bytes
            sim.record(
                "burst",
                message=self.messages,
                first=send.first,
                last=send.last,
                loss=burst.first_loss,
            )

            if burst.first_loss is None:
                if send.last == state.total - 1:
                    yield sim.wait_until(burst.end + cfg.one_way)
                    if region is not None:
                        if known:
                            region.remote_write(offset, data)
                        if length > known:
                            region.touch(offset + known, length - known)
                yield sim.wait_until(burst.end + cfg.rtt)
                state, actions = gbn_step(state, Ack(send.last, sim.now))
                if any(isinstance(action, Complete) for action in actions):
                    result = TransferResult.SUCCESS
                continue

            lost = send.first + burst.first_loss
            if burst.first_loss > 0:
                ack_at = float(burst.send_end[burst.first_loss - 1]) + cfg.rtt
                yield sim.wait_until(ack_at)
                state, _ = gbn_step(state, Ack(lost - 1, sim.now))

            yield sim.wait_until(max(state.timer_deadline, burst.end))
            state, actions = gbn_step(state, Timeout(sim.now))
            action = actions[0]
            if isinstance(action, Fail):
                result = TransferResult.TRANSMISSION_FAILURE
                logger.info(
                    "write of %d bytes failed after %d retries",
                    length,
                    self.retry_limit,
                )
            else:
                retransmissions += action.count
                sim.record("rewind", message=self.messages, base=action.from_seq)

        self.retries_remaining = state.retries_remaining

        return TransferOutcome(
            result=result,
            latency=sim.now - start,
            bytes_on_wire=bytes_on_wire,
            retransmissions=retransmissions,
        )


def gbn_send(
    path, region, dest_offset, data, window=None, retry_limit=DEFAULT_RETRY_LIMIT
):
    """
    Reliably write bytes to a remote offset with Go-Back-N.

    Args:
        path (Union[PathConfig, Simulation]): Path to send over
        region (MemoryRegion): Destination region
        dest_offset (int): Destination offset
        data (bytes): Non-empty payload
        window (Optional[int]): Packets in flight, None for the whole message
        retry_limit (int): Timeouts tolerated before failing

    Returns:
        TransferOutcome: Delivery outcome
    """
    sim = Simulation.of(path)
    queue_pair = QueuePair(sim, retry_limit=retry_limit, window=window)
    return sim.run(queue_pair.write(region, dest_offset, data))
