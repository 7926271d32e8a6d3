"""Report writing: schema-checked JSON and flat delimited text.

JSON is the faithful format (sorted keys, two-space indent, full float
precision via repr). CSV is a convenience projection: run and oracle
reports flatten to dotted key/value rows; sweep reports keep the fixed
column set delta1,delta2,region,eta_critical.
"""

from __future__ import annotations

import csv
import json

import jsonschema

from .config import load_schema

SWEEP_COLUMNS = ("delta1", "delta2", "region", "eta_critical")


def validate_report(report: dict) -> None:
    """Raises jsonschema.ValidationError if the report is malformed.

    Reports are produced, not consumed, so a violation here is a bug in
    the pipeline rather than bad user input.
    """
    jsonschema.validate(report, load_schema("report.schema.json"))


def write_json(report: dict, path: str) -> None:
    validate_report(report)
    with open(path, "w") as fh:
        json.dump(report, fh, sort_keys=True, indent=2)
        fh.write("\n")


def flatten(node, prefix: str = "") -> list[tuple[str, str]]:
    """Dotted-key projection of a nested report for delimited output."""
    if isinstance(node, dict):
        rows = []
        for key in sorted(node):
            rows.extend(flatten(node[key], f"{prefix}{key}."))
        return rows
    key = prefix[:-1]    # drop the trailing dot
    if isinstance(node, bool):
        return [(key, "true" if node else "false")]
    if node is None:
        return [(key, "")]
    if isinstance(node, float):
        return [(key, repr(node))]
    if isinstance(node, (int, str)):
        return [(key, str(node))]
    if isinstance(node, list):
        return [(key, json.dumps(node))]
    raise TypeError(f"cannot flatten {type(node).__name__} at {key}")


def write_flat_csv(report: dict, path: str) -> None:
    validate_report(report)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["key", "value"])
        for key, value in flatten(report):
            writer.writerow([key, value])


def write_sweep_csv(report: dict, path: str) -> None:
    """Fixed-column sweep table; eta_critical is empty for separable points."""
    validate_report(report)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SWEEP_COLUMNS)
        for row in report["rows"]:
            eta = row["eta_critical"]
            writer.writerow(["%.6g" % row["delta1"], "%.6g" % row["delta2"],
                             row["region"], "" if eta is None else "%.6g" % eta])
