"""
Report Writer Module - Persist MetricsReports as CSV or JSON

This module provides a ReportWriter class that owns one benchmark report
file. CSV files have one row per report with the fixed REPORT_COLUMNS header,
so they can be appended to across runs and loaded straight into a plotting
tool. JSON files hold a single array of flat objects in the same key order.

Features:
- Append mode for both formats (the CSV header is written only once)
- Optional mean rows over replicates
- Zeroed timing columns for byte-identical reruns
- A long-format modularity profile written next to the report
"""

import json
import logging
import os

import pandas as pd

from features.experiment import aggregate_reports
from features.metrics import REPORT_COLUMNS
from utils.file_formats import ensure_parent

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json")
PROFILE_COLUMNS = ("dataset", "algorithm", "replicate", "k", "modularity")


def report_rows(reports, aggregate=False, timings=True):
    """
    Flatten reports into ordered dicts

    Args:
        aggregate (bool): append one mean row per (dataset, algorithm)
        timings (bool): False zeroes every seconds_* field for reproducible files
    """
    reports = list(reports)
    if aggregate and reports:
        reports = reports + aggregate_reports(reports)
    rows = [report.to_dict() for report in reports]
    if not timings:
        for row in rows:
            for column in row:
                if column.startswith("seconds_"):
                    row[column] = 0.0
    return rows


class ReportWriter:
    """
    Writes benchmark reports to one file

    Attributes:
        path (str): destination report file
        fmt (str): "csv" or "json"
        profile_path (str): sibling "<stem>.profile.csv" for modularity profiles
    """

    def __init__(self, path, fmt="csv"):
        if fmt not in FORMATS:
            raise ValueError(f"report format must be one of {', '.join(FORMATS)}, got {fmt!r}")
        self.path = path
        self.fmt = fmt
        stem, _ = os.path.splitext(path)
        self.profile_path = f"{stem}.profile.csv"

    def _has_content(self):
        # an empty file counts as new, so it still gets a header
        return os.path.isfile(self.path) and os.path.getsize(self.path) > 0

    def add_reports(self, reports, append=False, aggregate=False, timings=True):
        """
        Write reports, replacing the file unless append is set

        Returns:
            int: number of rows written
        """
        rows = report_rows(reports, aggregate=aggregate, timings=timings)
        ensure_parent(self.path)
        if self.fmt == "csv":
            self._write_csv(rows, append)
        else:
            self._write_json(rows, append)
        logger.info("Wrote %d report rows to %s", len(rows), self.path)
        return len(rows)

    def _write_csv(self, rows, append):
        frame = pd.DataFrame(rows, columns=list(REPORT_COLUMNS))
        if append and self._has_content():
            frame.to_csv(self.path, mode="a", header=False, index=False, lineterminator="\n")
        else:
            frame.to_csv(self.path, index=False, lineterminator="\n")

    def _write_json(self, rows, append):
        existing = []
        if append and self._has_content():
            with open(self.path, "r", encoding="utf-8") as f:
                existing = json.load(f)
            if not isinstance(existing, list):
                raise ValueError(f"{self.path} does not hold a JSON array of reports")
        # rewrite the whole array; JSON has no append
        with open(self.path, "w", encoding="utf-8", newline="\n") as f:
            json.dump(existing + rows, f, indent=2)
            f.write("\n")

    def write_profile(self, reports):
        """
        Write every recorded modularity profile as long-format CSV

        Returns:
            int: number of (report, k) rows written
        """
        rows = [
            {
                "dataset": report.dataset,
                "algorithm": report.algorithm,
                "replicate": report.replicate,
                "k": k,
                "modularity": q,
            }
            for report in reports
            for k, q in report.profile.items()
        ]
        ensure_parent(self.profile_path)
        pd.DataFrame(rows, columns=list(PROFILE_COLUMNS)).to_csv(
            self.profile_path, index=False, lineterminator="\n"
        )
        logger.info("Wrote %d profile rows to %s", len(rows), self.profile_path)
        return len(rows)


def emit_report(reports, fmt, path, append=False, aggregate=False, timings=True):
    """
    Write reports to a file

    Args:
        reports (iterable): MetricsReport objects
        fmt (str): "csv" or "json"
        path (str): destination file
        append (bool): add to an existing file instead of replacing it

    Returns:
        int: number of rows written
    """
    return ReportWriter(path, fmt).add_reports(reports, append=append, aggregate=aggregate, timings=timings)
