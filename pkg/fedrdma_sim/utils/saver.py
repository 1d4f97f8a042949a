"""
Module for Report Save
"""
import csv
from pathlib import Path

REPORT_COLUMNS = [
    "scenario_id",
    "repetition",
    "transport",
    "bandwidth_bps",
    "rtt_s",
    "data_bytes",
    "chunk_bytes",
    "num_chunks",
    "link_enable",
    "result",
    "latency_s",
    "bytes_on_wire",
    "retransmissions",
    "header_ops",
    "peak_extra_memory_bytes",
    "power_w",
    "energy_j",
    "seed",
]

INTEGER_COLUMNS = {
    "repetition",
    "bandwidth_bps",
    "data_bytes",
    "chunk_bytes",
    "num_chunks",
    "bytes_on_wire",
    "retransmissions",
    "header_ops",
    "peak_extra_memory_bytes",
    "seed",
}
FLOAT_COLUMNS = {"rtt_s", "latency_s", "power_w", "energy_j"}


def report_row(report, path, scenario_id="adhoc", repetition=0, seed=0):
    """
    Flatten a transfer report into one CSV row.

    Args:
        report (TransferReport): Report to flatten
        path (PathConfig): Path the transfer ran over
        scenario_id (str): Scenario identifier
        repetition (int): Repetition index
        seed (int): Seed of the run

    Returns:
        Dict[str, str]: Formatted values keyed by column
    """
    return {
        "scenario_id": scenario_id,
        "repetition": str(repetition),
        "transport": report.kind.value,
        "bandwidth_bps": str(int(round(path.sender_rate))),
        "rtt_s": f"{path.rtt:.3f}",
        "data_bytes": str(report.data_bytes),
        "chunk_bytes": str(report.chunk_bytes),
        "num_chunks": str(report.num_chunks),
        "link_enable": "yes" if report.primer_used else "no",
        "result": report.result.value,
        "latency_s": f"{report.latency:.3f}",
        "bytes_on_wire": str(report.bytes_on_wire),
        "retransmissions": str(report.retransmissions),
        "header_ops": str(report.header_ops),
        "peak_extra_memory_bytes": str(report.peak_extra_memory),
        "power_w": f"{report.power:.1f}",
        "energy_j": f"{report.energy:.3f}",
        "seed": str(seed),
    }


def write_rows(rows, stream, columns=None):
    """
    Write rows as CSV to an open text stream.

    Args:
        rows (Iterable[Dict[str, str]]): Rows to write
        stream (TextIO): Destination
        columns (Optional[List[str]]): Column order, defaults to the report columns
    """
    writer = csv.DictWriter(
        stream, fieldnames=columns or REPORT_COLUMNS, lineterminator="\n"
    )
    writer.writeheader()
    writer.writerows(rows)


def save_csv(rows, output_dir, output_name, columns=None):
    """
    Save rows as a CSV file.

    Args:
        rows (Iterable[Dict[str, str]]): Rows to save
        output_dir (str): Output directory
        output_name (str): Output name
        columns (Optional[List[str]]): Column order, defaults to the report columns

    Returns:
        pathlib.Path: Path of the written file
    """
    Path.mkdir(Path(output_dir), parents=True, exist_ok=True)

    output_path = Path(output_dir) / output_name
    with open(output_path, "w", newline="") as stream:
        write_rows(rows, stream, columns)

    return output_path


def read_report(report_path):
    """
    Parse a CSV report written by this package back into typed rows.

    Args:
        report_path (str): Path of the CSV file

    Returns:
        List[Dict]: Rows with integer and float columns converted
    """
    with open(report_path, newline="") as stream:
        reader = csv.DictReader(stream)
        if reader.fieldnames != REPORT_COLUMNS:
            raise ValueError(f"{report_path} is not a transfer report")

        rows = []
        for row in reader:
            typed = dict(row)
            for column in INTEGER_COLUMNS:
                typed[column] = int(row[column])
            for column in FLOAT_COLUMNS:
                typed[column] = float(row[column])
            rows.append(typed)

    return rows
