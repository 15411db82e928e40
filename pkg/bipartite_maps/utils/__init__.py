from .file_io import (
    census_from_rows,
    census_rows,
    check_row,
    closed_form_doc,
    closed_form_from_doc,
    kernel_doc,
    marked_from_rows,
    marked_rows,
    rational_from_str,
    rational_to_str,
    rooted_from_rows,
    rooted_rows,
    save_json,
    series_from_rows,
    series_rows,
    suite_report,
)
from .formatting import render

__all__ = [
    "census_from_rows",
    "census_rows",
    "check_row",
    "closed_form_doc",
    "closed_form_from_doc",
    "kernel_doc",
    "marked_from_rows",
    "marked_rows",
    "rational_from_str",
    "rational_to_str",
    "render",
    "rooted_from_rows",
    "rooted_rows",
    "save_json",
    "series_from_rows",
    "series_rows",
    "suite_report",
]
