"""Global configuration — loads .env and exposes settings."""

from __future__ import annotations

import os
from pathlib import Path

from dotenv import load_dotenv

# ── paths ────────────────────────────────────────────────────────────────
ROOT_DIR = Path(__file__).resolve().parent.parent
APP_DIR = ROOT_DIR / "app"
TEMPLATES_DIR = ROOT_DIR / "templates"

# ── env ──────────────────────────────────────────────────────────────────
load_dotenv(ROOT_DIR / ".env")

RUNS_DIR = Path(os.getenv("SWEEDLER_RUNS_DIR", str(ROOT_DIR / "runs")))
LOG_LEVEL: str = os.getenv("SWEEDLER_LOG_LEVEL", "WARNING").upper()

_BOUND_RAW: str = os.getenv("SWEEDLER_BOUND", "8")
_RULE_CAP_RAW: str = os.getenv("SWEEDLER_RULE_CAP", "10000")

# ── validation helpers ───────────────────────────────────────────────────


def require_positive_int(name: str, value: str | int) -> int:
    try:
        number = int(value)
    except (TypeError, ValueError):
        number = 0
    if number < 1:
        raise SystemExit(
            f"❌  {name} must be a positive integer, got {value!r}. "
            "Fix it in .env or pass the matching command-line flag."
        )
    return number


def default_bound() -> int:
    return require_positive_int("SWEEDLER_BOUND", os.getenv("SWEEDLER_BOUND", _BOUND_RAW))


def default_rule_cap() -> int:
    return require_positive_int("SWEEDLER_RULE_CAP", os.getenv("SWEEDLER_RULE_CAP", _RULE_CAP_RAW))
