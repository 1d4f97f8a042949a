import pytest

from fedrdma_sim.callbacks import Callback, CallbackList


def test_should_dispatch_hooks_in_order(mocker):
    calls = []
    first = mocker.MagicMock(on_round_begin=lambda index: calls.append(("a", index)))
    second = mocker.MagicMock(on_round_begin=lambda index: calls.append(("b", index)))

    CallbackList([first, second]).on_round_begin(4)

    assert calls == [("a", 4), ("b", 4)]


def test_should_accept_base_callback():
    callbacks = CallbackList([Callback()])

    callbacks.on_federation_begin(None)
    callbacks.on_round_end(0, {"comm_time": 1.0})


def test_should_refuse_non_hook_attributes():
    with pytest.raises(AttributeError):
        CallbackList().flush()
