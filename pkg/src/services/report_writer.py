"""
Saída dos relatórios

- JSON estável (chaves ordenadas, indentação fixa): só ele tem garantia de bytes idênticos
- Tabela rich para leitura humana
- Planilha .xlsx da matriz de detecção (aba "MATRIZ")
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, List

from rich.console import Console
from rich.table import Table

from ..utils.logger import get_logger
from .mt_models import DetectionMatrix, Report, VerdictKind

logger = get_logger("report_writer")

MATRIX_COLUMNS = [
    ("subject", "SUBJECT"),
    ("variant", "VARIANTE"),
    ("relation", "RELAÇÃO"),
    ("trials", "TRIALS"),
    ("passes", "PASS"),
    ("fails", "FAIL"),
    ("abandoned", "ABANDONED"),
    ("inapplicable", "INAPPLICABLE"),
    ("mean_oh_ratio", "OH MÉDIO"),
]


def report_to_dict(report: Report) -> Dict[str, Any]:
    return {
        "meta": report.meta,
        "entries": [e.to_dict() for e in report.entries],
        "matrix": report.matrix.to_records(),
    }


def matrix_to_dict(matrix: DetectionMatrix) -> Dict[str, Any]:
    return {"matrix": matrix.to_records()}


def render_json(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def write_json(payload: Dict[str, Any], path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_json(payload), encoding="utf-8")
    logger.info(f"Relatório salvo em {path}")
    return path


def _fmt_ratio(value) -> str:
    return "-" if value is None else f"{value:.3f}"


def matrix_table(matrix: DetectionMatrix, title: str = "Matriz de detecção") -> Table:
    table = Table(title=title)
    for _, header in MATRIX_COLUMNS:
        table.add_column(header, justify="left" if header in ("SUBJECT", "VARIANTE", "RELAÇÃO") else "right")
    for rec in matrix.to_records():
        style = "red" if rec["fails"] else None
        table.add_row(
            *[_fmt_ratio(rec[key]) if key == "mean_oh_ratio" else str(rec[key]) for key, _ in MATRIX_COLUMNS],
            style=style,
        )
    return table


def report_table(report: Report) -> Table:
    table = Table(title=f"{report.meta.get('subject')} seed={report.meta.get('seed')} fase={report.meta.get('phase')}")
    for header in ("TRIAL", "VARIANTE", "RELAÇÃO", "VEREDITO", "MOTIVO", "FONTE", "DERIV.", "VERIF.", "OH"):
        table.add_column(header)
    colors = {
        VerdictKind.PASS: "green",
        VerdictKind.FAIL: "red",
        VerdictKind.ABANDONED: "yellow",
        VerdictKind.INAPPLICABLE: "dim",
    }
    for e in report.entries:
        table.add_row(
            str(e.trial),
            e.variant,
            e.relation_id,
            f"[{colors[e.verdict]}]{e.verdict.value.upper()}[/]",
            e.reason,
            str(e.source_cost),
            str(e.derive_cost),
            str(e.check_cost),
            _fmt_ratio(e.oh_ratio),
        )
    return table


def print_report(report: Report, console: Console) -> None:
    console.print(report_table(report))
    console.print(matrix_table(report.matrix))


def write_matrix_workbook(matrix: DetectionMatrix, path: Path, sheet_name: str = "MATRIZ") -> Path:
    """Grava a matriz numa planilha nova (uma linha por variante x relação)"""
    try:
        from openpyxl import Workbook
        from openpyxl.styles import Font
    except Exception as e:
        raise RuntimeError(f"openpyxl não disponível: {e}")

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    wb = Workbook()
    ws = wb.active
    ws.title = sheet_name
    ws.append([header for _, header in MATRIX_COLUMNS])
    for cell in ws[1]:
        cell.font = Font(bold=True)

    records: List[Dict[str, Any]] = matrix.to_records()
    for rec in records:
        ws.append([rec[key] for key, _ in MATRIX_COLUMNS])

    for idx, (key, header) in enumerate(MATRIX_COLUMNS, start=1):
        width = max([len(header)] + [len(str(rec[key])) for rec in records])
        ws.column_dimensions[ws.cell(row=1, column=idx).column_letter].width = min(width + 2, 40)
    ws.freeze_panes = "A2"

    wb.save(path)
    logger.info(f"Matriz salva em {path} ({len(records)} linhas)")
    return path
