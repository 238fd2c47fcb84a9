"""Command registry: every CLI command is a function JobSpec → Report.

Group modules register their commands with ``@command``; ``app.main`` builds
the argparse sub-parsers from the registry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from app.models.job import JobSpec
from app.models.report import Report

Handler = Callable[[JobSpec], Report]


@dataclass(frozen=True)
class Arg:
    flag: str
    help: str
    default: Any = None
    type: Callable[[str], Any] = str
    flag_only: bool = False

    @property
    def dest(self) -> str:
        return self.flag.lstrip("-").replace("-", "_")


@dataclass(frozen=True)
class Command:
    name: str
    help: str
    handler: Handler
    args: tuple[Arg, ...] = field(default_factory=tuple)


COMMANDS: dict[str, Command] = {}


def command(name: str, help: str, *args: Arg) -> Callable[[Handler], Handler]:
    def register(fn: Handler) -> Handler:
        COMMANDS[name] = Command(name, help, fn, tuple(args))
        return fn

    return register


def get(name: str) -> Command:
    return COMMANDS[name]


# group modules register on import
from app.commands import comodules, extensions, measuring, modules, presentation, qcalc  # noqa: E402,F401
