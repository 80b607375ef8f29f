"""Render tables and reports as csv, json or plain text for standard output."""
import csv
import io
import json
from typing import Dict, List, Sequence

from pydantic import BaseModel

FORMATS = ("csv", "json", "plain")


def render_records(records: Sequence[Dict], columns: Sequence[str], fmt: str) -> str:
    """
    Render flat records with a fixed column order.

    Args:
        records: One dict per row; values already rendered as exact strings.
        columns: Column order, also the csv header.
        fmt: "csv", "json" or "plain".

    Returns:
        str: The rendered table without a trailing newline.
    """
    if fmt == "json":
        return json.dumps([{column: record[column] for column in columns} for record in records], indent=2)
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for record in records:
            writer.writerow([record[column] for column in columns])
        return buffer.getvalue().rstrip("\n")

    widths = {
        column: max([len(column)] + [len(str(record[column])) for record in records]) for column in columns
    }
    lines = ["  ".join(column.ljust(widths[column]) for column in columns)]
    for record in records:
        lines.append("  ".join(str(record[column]).ljust(widths[column]) for column in columns).rstrip())
    return "\n".join(lines)


def render_model(model: BaseModel, fmt: str) -> str:
    """A single report: json object, one-row csv, or key: value lines."""
    data = model.model_dump(by_alias=True)
    if fmt == "json":
        return json.dumps(data, indent=2)
    if fmt == "csv":
        return render_records([data], list(data), "csv")
    return "\n".join(f"{key}: {value}" for key, value in data.items())


def render_verify_reports(reports: Sequence[BaseModel], fmt: str) -> str:
    """Verification reports in suite order."""
    dumped = [report.to_dict() for report in reports]
    if fmt == "json":
        return json.dumps(dumped, indent=2)

    rows = []
    for data in dumped:
        failure = data["first_failure"]
        rows.append(
            {
                "identity": data["identity"],
                "cases": data["cases"],
                "pass": data["pass"],
                "failures": data["failures"],
                "elapsed_ms": data["elapsed_ms"],
                "first_failure": json.dumps(failure["params"]) if failure else "",
            }
        )
    columns = ["identity", "cases", "pass", "failures", "elapsed_ms", "first_failure"]
    if fmt == "csv":
        return render_records(rows, columns, "csv")

    lines = []
    for row, data in zip(rows, dumped):
        status = "PASS" if row["pass"] else "FAIL"
        lines.append(f"{status}  {row['identity']:<20} {row['cases']:>6} cases  {row['elapsed_ms']:.1f} ms")
        failure = data["first_failure"]
        if failure:
            lines.append(f"      at {failure['params']}: {failure['lhs']} != {failure['rhs']}")
            if failure["suspect_cells"]:
                lines.append(f"      suspect cells (k, n): {failure['suspect_cells']}")
        for note in data["notes"]:
            lines.append(f"      note: {note}")
    return "\n".join(lines)


def render_table1(rows: List[Dict], values: List[Dict], errata: List[Dict], fmt: str) -> str:
    """Derivative-table rows, their values on an n grid, and any errata."""
    if fmt == "json":
        return json.dumps({"rows": rows, "values": values, "errata": errata}, indent=2)
    if fmt == "csv":
        return render_records(values, ["m", "n", "derivative", "printed", "derived"], "csv")

    lines = [f"m={row['m']}  printed: {row['printed']}   derived: {row['derived']}   agrees: {row['agrees']}" for row in rows]
    lines.append("")
    lines.append(render_records(values, ["m", "n", "derivative", "printed", "derived"], "plain"))
    if errata:
        lines.append("")
        lines.extend(f"erratum m={item['m']}: printed {item['tabulated']}, derived {item['derived']}" for item in errata)
    return "\n".join(lines)
