"""Rendering of rows and documents as json, text, latex or csv."""

import csv
import io
import json
from fractions import Fraction
from typing import Any, Literal, Mapping, Sequence

from .types import ClosedFormDoc, ClosedFormTermRow

Format = Literal["json", "text", "latex", "csv"]


def _cell(value: Any) -> str:
    if isinstance(value, (list, tuple)):
        return json.dumps(list(value))
    return str(value)


def _rows_of(data: Any) -> list[Mapping[str, Any]]:
    """Flat rows for tabular formats."""
    if isinstance(data, Mapping):
        if "terms" in data:
            return list(data["terms"])
        if "checks" in data:
            return list(data["checks"])
        return [{"key": key, "value": value} for key, value in data.items()]
    rows: list[Mapping[str, Any]] = []
    for item in data:
        if isinstance(item, Mapping) and "checks" in item:
            rows.extend(item["checks"])
        else:
            rows.append(item)
    return rows


def to_csv(data: Any) -> str:
    rows = _rows_of(data)
    if not rows:
        return ""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _cell(value) for key, value in row.items()})
    return buffer.getvalue()


def to_text(data: Any) -> str:
    lines = [", ".join(f"{key}={_cell(value)}" for key, value in row.items()) for row in _rows_of(data)]
    if isinstance(data, Mapping) and "log_eta" in data:
        lines.append(f"log_eta={data['log_eta']}, log_zeta={data['log_zeta']}")
    return "\n".join(lines) + ("\n" if lines else "")


# --- LaTeX ---


def _latex_fraction(c: Fraction) -> str:
    c = abs(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"\\frac{{{c.numerator}}}{{{c.denominator}}}"


def _latex_greek(family: str, parts: Sequence[int]) -> str:
    return "".join(f"\\{family}_{{{i}}}" for i in parts)


def latex_term(row: ClosedFormTermRow) -> str:
    numerator = _latex_greek("eta", row["alpha"]) + _latex_greek("zeta", row["beta"])
    denominator = []
    if row["c"]:
        base = "1-uz" if row["sign"] == "+" else "1+uz"
        denominator.append(f"({base})^{{{row['c']}}}" if row["c"] > 1 else f"({base})")
    for base, power in (("1-\\eta", row["a"]), ("1+\\zeta", row["b"])):
        if power:
            denominator.append(f"({base})^{{{power}}}" if power > 1 else f"({base})")
    body = numerator or "1"
    if denominator:
        return f"\\frac{{{body}}}{{{''.join(denominator)}}}"
    return body


def to_latex_closed_form(doc: ClosedFormDoc) -> str:
    pieces = []
    for row in doc["terms"]:
        c = Fraction(row["coeff_num"], row["coeff_den"])
        sign = "-" if c < 0 else "+"
        scalar = _latex_fraction(c)
        pieces.append(f"{sign} {scalar}\\,{latex_term(row)}")
    for key, arg in (("log_eta", "\\frac{1}{1-\\eta}"), ("log_zeta", "\\frac{1}{1+\\zeta}")):
        c = Fraction(doc[key])
        if c:
            pieces.append(f"{'-' if c < 0 else '+'} {_latex_fraction(c)}\\ln{arg}")
    body = " ".join(pieces).removeprefix("+ ") or "0"
    name = "F" if doc["target"] == "F" else "L"
    return f"{name}_{{{doc['g']}}} = {body}\n"


def to_latex_table(data: Any) -> str:
    rows = _rows_of(data)
    if not rows:
        return ""
    columns = list(rows[0])
    lines = [f"\\begin{{tabular}}{{{'r' * len(columns)}}}", " & ".join(columns) + " \\\\", "\\hline"]
    for row in rows:
        lines.append(" & ".join(_cell(row[col]) for col in columns) + " \\\\")
    lines.append("\\end{tabular}")
    return "\n".join(lines) + "\n"


def render(data: Any, fmt: Format) -> str:
    if fmt == "json":
        return json.dumps(data, indent=2) + "\n"
    if fmt == "csv":
        return to_csv(data)
    if fmt == "text":
        return to_text(data)
    if fmt == "latex":
        if isinstance(data, Mapping) and "terms" in data and "target" in data:
            return to_latex_closed_form(data)
        return to_latex_table(data)
    raise ValueError(f"Unknown output format {fmt!r}")
