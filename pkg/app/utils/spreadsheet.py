"""Spreadsheet export of command reports using openpyxl."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from openpyxl import Workbook
from openpyxl.styles import Alignment, Border, Font, PatternFill, Side
from openpyxl.utils import get_column_letter

from app.models.report import Report, plain


# ── style constants ──────────────────────────────────────────────────────
HEADER_FONT = Font(bold=True, size=11, color="FFFFFF")
HEADER_FILL = PatternFill(start_color="2F5496", end_color="2F5496", fill_type="solid")
SUBHEADER_FILL = PatternFill(start_color="D6E4F0", end_color="D6E4F0", fill_type="solid")
STATUS_FILLS = {
    "ok": PatternFill(start_color="C6EFCE", end_color="C6EFCE", fill_type="solid"),
    "warn": PatternFill(start_color="FFEB9C", end_color="FFEB9C", fill_type="solid"),
    "violation": PatternFill(start_color="FFC7CE", end_color="FFC7CE", fill_type="solid"),
}
THIN_BORDER = Border(
    left=Side(style="thin"),
    right=Side(style="thin"),
    top=Side(style="thin"),
    bottom=Side(style="thin"),
)
MAX_CELL = 32000  # Excel rejects cells over 32767 characters


def write_table(
    ws,
    headers: list[str],
    rows: list[list[Any]],
    start_row: int = 1,
    start_col: int = 1,
    col_widths: list[int] | None = None,
) -> int:
    """Write a formatted table to a worksheet. Returns the next available row."""
    for ci, header in enumerate(headers, start=start_col):
        cell = ws.cell(row=start_row, column=ci, value=header)
        cell.font = HEADER_FONT
        cell.fill = HEADER_FILL
        cell.alignment = Alignment(horizontal="center", wrap_text=True)
        cell.border = THIN_BORDER

    for ri, row_data in enumerate(rows, start=start_row + 1):
        for ci, val in enumerate(row_data, start=start_col):
            cell = ws.cell(row=ri, column=ci, value=_cell(val))
            cell.border = THIN_BORDER
            cell.alignment = Alignment(wrap_text=True, vertical="top")

    if col_widths:
        for ci, w in enumerate(col_widths, start=start_col):
            ws.column_dimensions[get_column_letter(ci)].width = w

    return start_row + 1 + len(rows)


def write_section_header(ws, row: int, text: str, col_span: int = 4) -> int:
    """Write a section header row spanning multiple columns."""
    cell = ws.cell(row=row, column=1, value=text)
    cell.font = Font(bold=True, size=12, color="2F5496")
    cell.fill = SUBHEADER_FILL
    for ci in range(2, col_span + 1):
        ws.cell(row=row, column=ci).fill = SUBHEADER_FILL
    return row + 1


def write_kv_pairs(ws, pairs: list[tuple[str, Any]], start_row: int = 1) -> int:
    """Write key-value pairs in two columns."""
    for i, (key, val) in enumerate(pairs):
        r = start_row + i
        kc = ws.cell(row=r, column=1, value=key)
        kc.font = Font(bold=True)
        kc.border = THIN_BORDER
        vc = ws.cell(row=r, column=2, value=_cell(val))
        vc.border = THIN_BORDER
        vc.alignment = Alignment(wrap_text=True, vertical="top")
    return start_row + len(pairs)


def _cell(value: Any) -> Any:
    if isinstance(value, (int, float, bool)) or value is None:
        return value
    text = value if isinstance(value, str) else json.dumps(plain(value), ensure_ascii=False, sort_keys=True)
    return text if len(text) <= MAX_CELL else text[:MAX_CELL] + " …"


def _matrix_like(value: Any) -> bool:
    return (
        isinstance(value, list)
        and bool(value)
        and all(isinstance(row, list) and not any(isinstance(v, (list, dict)) for v in row) for row in value)
    )


def export_report(report: Report, path: Path) -> Path:
    """Summary sheet with findings, one sheet per artifact."""
    wb = Workbook()
    ws = wb.active
    ws.title = "Summary"

    row = write_section_header(ws, 1, f"{report.command}: {report.status}")
    row = write_kv_pairs(ws, sorted(report.params.items()), start_row=row) + 1
    row = write_section_header(ws, row, "Findings")
    first = row
    row = write_table(
        ws,
        ["Check", "Status", "Detail", "Data"],
        [[f.check, f.status, f.detail, f.data or ""] for f in report.findings],
        start_row=row,
        col_widths=[40, 12, 60, 60],
    )
    for ri, finding in enumerate(report.findings, start=first + 1):
        ws.cell(row=ri, column=2).fill = STATUS_FILLS[finding.status]

    for name, value in report.artifacts.items():
        sheet = wb.create_sheet(title=_sheet_title(name, wb.sheetnames))
        data = plain(value)
        if isinstance(data, dict):
            r = 1
            for key, item in data.items():
                if _matrix_like(item):
                    r = write_section_header(sheet, r, str(key), col_span=max(len(item[0]), 1))
                    r = write_table(sheet, [f"c{j}" for j in range(len(item[0]))], item, start_row=r) + 1
                else:
                    r = write_kv_pairs(sheet, [(str(key), item)], start_row=r)
            sheet.column_dimensions["A"].width = 30
            sheet.column_dimensions["B"].width = 80
        elif _matrix_like(data):
            write_table(sheet, [f"c{j}" for j in range(len(data[0]))], data)
        elif isinstance(data, list):
            write_table(sheet, ["#", "value"], [[i, v] for i, v in enumerate(data)], col_widths=[6, 80])
        else:
            write_kv_pairs(sheet, [(name, data)])

    path.parent.mkdir(parents=True, exist_ok=True)
    wb.save(str(path))
    return path


def _sheet_title(name: str, taken: list[str]) -> str:
    base = "".join(ch for ch in name if ch not in "[]:*?/\\")[:28] or "artifact"
    title, n = base, 1
    while title in taken:
        n += 1
        title = f"{base[:25]}_{n}"
    return title
