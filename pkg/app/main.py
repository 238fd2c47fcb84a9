"""Sweedler toolkit — CLI entry point.

One command per invocation. The JSON report goes to stdout (or --output),
a rich summary table goes to stderr. Exit status: 0 for ok or warn, 1 when a
check reports violations or the engine fails, 2 for malformed input.
"""

from __future__ import annotations

import argparse
import logging
import shlex
import sys
from pathlib import Path
from typing import Sequence

from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.table import Table

from app import config
from app.algebra.errors import InputError, SweedlerError
from app.commands import COMMANDS
from app.models.job import JobSpec
from app.models.report import Report
from app.utils import runs, spreadsheet

console = Console(stderr=True)
log = logging.getLogger("app")

STATUS_STYLE = {"ok": "green", "warn": "yellow", "violation": "red", "violations": "red"}


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of printing usage and exiting."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise InputError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    shared = _Parser(add_help=False, allow_abbrev=False)
    shared.add_argument("--bound", type=int, help="degree bound (default: $SWEEDLER_BOUND or 8)")
    shared.add_argument("--rule-cap", type=int, dest="rule_cap", help="completion rule cap (default: $SWEEDLER_RULE_CAP or 10000)")
    shared.add_argument("--output", type=Path, help="write the JSON report here instead of stdout")
    shared.add_argument("--save", action="store_true", help="also keep the report in a run folder under runs/")
    shared.add_argument("--xlsx", action="store_true", help="also export the report as a workbook")

    parser = _Parser(prog="sweedler", description="Universal measuring algebras F(A,B) = A ◁ B° and friends.",
                     allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    for cmd in COMMANDS.values():
        p = sub.add_parser(cmd.name, help=cmd.help, description=cmd.help, parents=[shared],
                           allow_abbrev=False)
        for arg in cmd.args:
            if arg.flag_only:
                p.add_argument(arg.flag, dest=arg.dest, action="store_true", help=arg.help)
                continue
            shown = f" (default: {arg.default})" if arg.default is not None else ""
            p.add_argument(arg.flag, dest=arg.dest, type=arg.type, help=arg.help + shown)
    return parser


def parse_input(argv: Sequence[str] | str) -> JobSpec:
    """Command line (a string is split like a shell would) → validated JobSpec."""
    tokens = shlex.split(argv) if isinstance(argv, str) else list(argv)
    ns = build_parser().parse_args(tokens)
    if ns.command is None:
        raise InputError(f"no command given; choose one of: {', '.join(COMMANDS)}")
    cmd = COMMANDS[ns.command]
    params = {arg.dest: getattr(ns, arg.dest) for arg in cmd.args}
    return JobSpec(
        command=ns.command,
        params={k: v for k, v in params.items() if v is not None and v is not False},
        bound=ns.bound if ns.bound is not None else config.default_bound(),
        rule_cap=ns.rule_cap if ns.rule_cap is not None else config.default_rule_cap(),
        output=ns.output,
        save=ns.save,
        xlsx=ns.xlsx,
    )


def run(job: JobSpec) -> Report:
    log.info("running %s with %s", job.command, job.params or "defaults")
    return COMMANDS[job.command].handler(job)


# ── output ───────────────────────────────────────────────────────────────


def summary_table(report: Report) -> Table:
    style = STATUS_STYLE[report.status]
    table = Table(title=f"{report.command} — [{style}]{report.status}[/{style}]", title_justify="left")
    table.add_column("Check", style="cyan")
    table.add_column("Status", justify="center")
    table.add_column("Detail", style="dim")
    for f in report.findings:
        s = STATUS_STYLE[f.status]
        table.add_row(escape(f.check), f"[{s}]{f.status}[/{s}]", escape(f.detail))
    return table


def _show_input_error(exc: InputError) -> None:
    console.print(f"[red]❌  {escape(exc.describe())}[/red]", highlight=False)
    if exc.text is not None and exc.offset is not None and exc.line is None and "\n" not in exc.text:
        console.print(f"    {exc.text}", highlight=False, markup=False)
        console.print("    " + " " * exc.offset + "^", highlight=False, markup=False)


def _emit(job: JobSpec, report: Report) -> None:
    text = report.to_json()
    if job.output is not None:
        job.output.parent.mkdir(parents=True, exist_ok=True)
        job.output.write_text(text + "\n")
        console.print(f"[dim]report written to {job.output}[/dim]")
    else:
        sys.stdout.write(text + "\n")
    console.print(summary_table(report))

    run_dir: Path | None = None
    if job.save:
        run_dir = runs.create_run(job.command, job.params)
        runs.save_output(run_dir, "report.json", text)
        lines = [f"{f.status:9} {f.check}: {f.detail}" for f in report.findings]
        runs.save_log(run_dir, "run", "\n".join(lines) + "\n")
        console.print(f"[dim]run saved to {run_dir}[/dim]")
    if job.xlsx:
        if run_dir is not None:
            path = run_dir / "outputs" / "report.xlsx"
        elif job.output is not None:
            path = job.output.with_suffix(".xlsx")
        else:
            path = Path(f"{job.command}.xlsx")
        spreadsheet.export_report(report, path)
        console.print(f"[dim]workbook written to {path}[/dim]")


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(
        level=config.LOG_LEVEL,
        format="%(message)s",
        handlers=[RichHandler(console=console, show_path=False)],
    )
    job: JobSpec | None = None
    try:
        job = parse_input(sys.argv[1:] if argv is None else argv)
        report = run(job)
    except InputError as exc:
        _show_input_error(exc)
        return 2
    except ValidationError as exc:
        for err in exc.errors():
            where = ".".join(str(p) for p in err["loc"]) or "input"
            console.print(f"[red]❌  {escape(where)}: {escape(err['msg'])}[/red]", highlight=False)
        return 2
    except SweedlerError as exc:
        if job is None:
            console.print(f"[red]❌  {type(exc).__name__}: {escape(str(exc))}[/red]", highlight=False)
            return 1
        log.warning("%s failed: %s", job.command, exc)
        report = Report(command=job.command, params=dict(job.params))
        report.add_violation(type(exc).__name__, str(exc), {"where": list(getattr(exc, "where", ()))})

    _emit(job, report)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
