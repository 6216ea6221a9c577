"""
Interface de linha de comando do harness

Códigos de saída:
  0 - nenhum FAIL
  1 - algum FAIL (um erro foi revelado)
  2 - erro de uso/configuração (diagnóstico em stderr)
"""
from __future__ import annotations

from pathlib import Path
from typing import List, Optional, Union

import typer
from rich.console import Console
from rich.table import Table

from ..core.config import load_campaign_config, load_settings, parse_campaign_config
from ..core.exceptions import HarnessError
from ..core.fixtures import list_fixtures
from ..core.models import CampaignConfig, HarnessSettings, Phase, ReportFormat
from ..services.campaign_runner import CampaignRunner, run_matrix
from ..services.report_writer import (
    matrix_table,
    matrix_to_dict,
    print_report,
    render_json,
    report_to_dict,
    write_json,
    write_matrix_workbook,
)
from ..utils.logger import get_logger, setup_logger
from ..utils.validators import parse_pair

app = typer.Typer(
    name="mt-harness",
    help="Teste metamórfico: deriva casos de teste a partir de execuções bem-sucedidas.",
    add_completion=False,
    no_args_is_help=True,
)

logger = get_logger("cli")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


def _prepare(log_level: Optional[str]) -> HarnessSettings:
    settings = load_settings()
    setup_logger(log_level or settings.log_level, settings.log_file)
    return settings


def _abort(error: Exception) -> None:
    typer.echo(f"erro: {error}", err=True)
    raise typer.Exit(code=EXIT_ERROR)


def _parse_relations(text: str) -> Union[str, List[str]]:
    items = [r.strip() for r in text.split(",") if r.strip()]
    if not items or items == ["all"]:
        return "all"
    return items


@app.command("run")
def cmd_run(
    subject: Optional[str] = typer.Option(None, "--subject", "-s", help="binsearch, kth, shortest-path ou gauss"),
    variant: Optional[List[str]] = typer.Option(None, "--variant", "-v", help="Variante (repetível)"),
    relations: str = typer.Option("all", "--relations", "-r", help="Ids separados por vírgula ou 'all'"),
    trials: int = typer.Option(1, "--trials", "-n"),
    seed: int = typer.Option(0, "--seed"),
    phase: Phase = typer.Option(Phase.TESTING, "--phase"),
    fixture: Optional[str] = typer.Option(None, "--fixture", "-f", help="Id embutido ou arquivo JSON"),
    output_format: ReportFormat = typer.Option(ReportFormat.JSON, "--format"),
    key: Optional[int] = typer.Option(None, "--key", help="Chave da entrada fonte"),
    k: Optional[int] = typer.Option(None, "--k", help="Ocorrência (kth)"),
    src: Optional[str] = typer.Option(None, "--src", help="Vértice de origem"),
    dst: Optional[str] = typer.Option(None, "--dst", help="Vértice de destino"),
    swap: Optional[str] = typer.Option(None, "--swap", help="Par i,j fixo para as trocas (gauss)"),
    size: Optional[int] = typer.Option(None, "--size", help="Tamanho das entradas geradas"),
    config_file: Optional[Path] = typer.Option(None, "--config", help="Campanha em JSON (substitui as flags)"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Também grava o relatório JSON"),
    log_level: Optional[str] = typer.Option(None, "--log-level"),
) -> None:
    """Executa uma campanha e emite o relatório."""
    try:
        settings = _prepare(log_level)
        if config_file is not None:
            config = load_campaign_config(config_file)
        else:
            if not subject or not variant:
                raise typer.BadParameter("informe --subject e --variant (ou --config)")
            config = parse_campaign_config({
                "subject": subject,
                "variants": variant,
                "relations": _parse_relations(relations),
                "trials": trials,
                "seed": seed,
                "phase": phase,
                "fixture": fixture,
                "size": size,
                "key": key,
                "k": k,
                "src": src,
                "dst": dst,
                "swap": parse_pair(swap) if swap else None,
            })
        report = CampaignRunner(settings).run(config)
    except HarnessError as e:
        _abort(e)
        return

    payload = report_to_dict(report)
    if output is not None:
        write_json(payload, output)
    if output_format == ReportFormat.JSON:
        typer.echo(render_json(payload), nl=False)
    else:
        print_report(report, Console())

    for entry in report.failures():
        logger.info(f"FAIL {entry.variant}/{entry.relation_id} trial={entry.trial}: {entry.reason}")
    raise typer.Exit(code=EXIT_FAIL if report.has_failures else EXIT_OK)


@app.command("matrix")
def cmd_matrix(
    subject: List[str] = typer.Option(["all"], "--subject", "-s", help="Subject(s) ou 'all'"),
    trials: int = typer.Option(100, "--trials", "-n", min=1),
    seed: int = typer.Option(0, "--seed"),
    output_format: ReportFormat = typer.Option(ReportFormat.JSON, "--format"),
    xlsx: Optional[Path] = typer.Option(None, "--xlsx", help="Grava a matriz numa planilha"),
    log_level: Optional[str] = typer.Option(None, "--log-level"),
) -> None:
    """Roda todas as variantes x relações sobre entradas geradas e imprime a matriz."""
    try:
        settings = _prepare(log_level)
        matrix = run_matrix(subject, trials, seed, settings)
    except HarnessError as e:
        _abort(e)
        return

    if xlsx is not None:
        write_matrix_workbook(matrix, xlsx)
    if output_format == ReportFormat.JSON:
        typer.echo(render_json(matrix_to_dict(matrix)), nl=False)
    else:
        Console().print(matrix_table(matrix))
    raise typer.Exit(code=EXIT_OK)


@app.command("fixtures")
def cmd_fixtures(
    output_format: ReportFormat = typer.Option(ReportFormat.TABLE, "--format"),
) -> None:
    """Lista as fixtures embutidas e sua procedência."""
    fixtures = list_fixtures()
    if output_format == ReportFormat.JSON:
        typer.echo(render_json({"fixtures": [f.to_dict() for f in fixtures]}), nl=False)
        return

    table = Table(title="Fixtures embutidas")
    table.add_column("ID", no_wrap=True)
    for header in ("SUBJECT", "ORIGEM", "CONTEÚDO", "NOTA"):
        table.add_column(header)
    for f in fixtures:
        table.add_row(f.id, f.subject, f.origin, f.summary(), f.note)
    Console(width=200).print(table)


def main() -> None:
    app()
