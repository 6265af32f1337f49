"""Services orchestrating the core: CSV ingestion and test reporting."""

__all__ = [
    "ReportRecord",
    "format_records",
    "load_panel_csv",
    "run_tests",
    "write_panel_csv",
]

from .ingestion import load_panel_csv, write_panel_csv
from .reporting import ReportRecord, format_records, run_tests
