"""Output builders for the command line."""
from .output_formatter import FORMATS, render_model, render_records, render_table1, render_verify_reports

__all__ = [
    "FORMATS",
    "render_model",
    "render_records",
    "render_table1",
    "render_verify_reports",
]
