"""
Callback Module for the federation loop hooks
"""


class Callback:

    """
    Base class of federation callbacks. Every hook is a no-op by default.
    """

    def on_federation_begin(self, config):
        pass

    def on_round_begin(self, round_index):
        pass

    def on_transfer_end(self, round_index, client, direction, report):
        """
        Called after every upload or download.

        Args:
            round_index (int): 0-based round
            client (int): 0-based client
            direction (str): "download" or "upload"
            report (TransferReport): Outcome of the transfer
        """

    def on_round_end(self, round_index, logs=None):
        """
        Called once all transfers of a round are done.

        Args:
            round_index (int): 0-based round
            logs (dict): comm_time and compute_time of the round
        """

    def on_federation_end(self, report):
        pass


class CallbackList:

    """ Fan a hook call out to several callbacks, in order """

    def __init__(self, callbacks=None):
        self.callbacks = list(callbacks or [])

    def __getattr__(self, hook):
        if not hook.startswith("on_"):
            raise AttributeError(hook)

        def dispatch(*args, **kwargs):
            for callback in self.callbacks:
                getattr(callback, hook)(*args, **kwargs)

        return dispatch
