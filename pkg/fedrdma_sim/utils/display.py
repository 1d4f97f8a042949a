""" Module for display related operations. """
import warnings


def format_value(value):
    """
    Render one cell.

    Floats get three decimals, everything else its plain string form.

    Args:
        value (Any): Cell value

    Returns:
        str: Rendered cell
    """
    if isinstance(value, float):
        return f"{value:.3f}"
    if value is None:
        return "-"
    return str(value)


def table_display(rows, columns=None):
    """
    Display a list of rows as an aligned text table.

    Args:
        rows (List[Dict]): Rows to display
        columns (Optional[List[str]]): Columns to show, defaults to the keys of the first row

    Returns:
        str: Table with a header line, a rule and one line per row
    """
    if not rows:
        return ""

    columns = columns or list(rows[0].keys())
    missing = {column for row in rows for column in columns if column not in row}
    if missing:
        warnings.warn(
            Warning(
                f"Columns {sorted(missing)} are missing from some rows and are "
                "displayed as '-'"
            )
        )

    cells = [[format_value(row.get(column)) for column in columns] for row in rows]
    widths = [
        max([len(column)] + [len(line[index]) for line in cells])
        for index, column in enumerate(columns)
    ]

    lines = [
        "  ".join(column.ljust(width) for column, width in zip(columns, widths)),
        "  ".join("-" * width for width in widths),
    ]
    lines.extend(
        "  ".join(cell.rjust(width) for cell, width in zip(line, widths))
        for line in cells
    )

    return "\n".join(line.rstrip() for line in lines) + "\n"
