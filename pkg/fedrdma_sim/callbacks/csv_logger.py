"""
Callback Module for per-transfer CSV logs
"""
from datetime import datetime
from pathlib import Path

from fedrdma_sim.callbacks.base import Callback
from fedrdma_sim.utils.saver import report_row, save_csv


class CsvLoggerCallback(Callback):

    """
    Write one CSV row per federation transfer, rewritten at every round end
    """

    def __init__(
        self,
        path_config,
        output_dir=Path("./logs/federation"),
        scenario_id="federation",
    ):
        """
        Constructor.

        Args:
            path_config (PathConfig): Path of the federation, for the row columns
            output_dir (str): Output directory path
            scenario_id (str): Value of the scenario_id column
        """
        super(CsvLoggerCallback, self).__init__()
        self.path_config = path_config
        self.scenario_id = scenario_id
        self.output_dir = Path(output_dir) / datetime.now().strftime("%Y%m%d-%H%M%S.%f")
        Path.mkdir(Path(self.output_dir), parents=True, exist_ok=True)
        self.rows = []

    def on_transfer_end(self, round_index, client, direction, report):
        self.rows.append(
            report_row(
                report,
                self.path_config,
                scenario_id=f"{self.scenario_id}/r{round_index}/c{client}/{direction}",
                repetition=round_index,
                seed=self.path_config.seed,
            )
        )

    def on_round_end(self, round_index, logs=None):
        """
        Flush the rows collected so far.

        Args:
            round_index (int): 0-based round
            logs (dict): Round totals, unused
        """
        save_csv(self.rows, self.output_dir, "transfers.csv")
