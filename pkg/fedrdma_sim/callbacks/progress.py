"""
Callback Module for progress logging
"""
import logging

from fedrdma_sim.callbacks.base import Callback

logger = logging.getLogger(__name__)


class ProgressLoggerCallback(Callback):

    """ Log round boundaries and failed transfers """

    def __init__(self, level=logging.INFO):
        super(ProgressLoggerCallback, self).__init__()
        self.level = level
        self.rounds = 0

    def on_federation_begin(self, config):
        logger.log(
            self.level,
            "federation: %d rounds, %d clients, %d bytes per model",
            config.rounds,
            config.clients,
            config.model_bytes,
        )

    def on_transfer_end(self, round_index, client, direction, report):
        if not report.succeeded:
            logger.warning(
                "round %d client %d %s failed", round_index, client, direction
            )

    def on_round_end(self, round_index, logs=None):
        self.rounds += 1
        logs = logs or {}
        logger.log(
            self.level,
            "round %d done: comm %.3f s, compute %.3f s",
            round_index,
            logs.get("comm_time", 0.0),
            logs.get("compute_time", 0.0),
        )

    def on_federation_end(self, report):
        logger.log(
            self.level,
            "federation %s: comm fraction %.4f",
            report.result.value,
            report.comm_fraction,
        )
