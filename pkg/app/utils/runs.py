"""Run folder management — every saved CLI run gets its own directory tree."""

from __future__ import annotations

import json
import re
from datetime import datetime
from pathlib import Path
from typing import Any

from app import config


def _slugify(text: str) -> str:
    """Turn a command line into a safe folder name."""
    return re.sub(r"[^a-z0-9]+", "-", text.lower()).strip("-")[:80]


def create_run(command: str, params: dict[str, Any], runs_dir: Path | None = None) -> Path:
    """Create a new run folder and return its path."""
    root = runs_dir or config.RUNS_DIR
    timestamp = datetime.now().strftime("%Y%m%d-%H%M%S")
    label = " ".join([command] + [f"{k} {v}" for k, v in sorted(params.items()) if v is not None])
    run_dir = root / f"{timestamp}_{_slugify(label)}"
    for sub in ("outputs", "logs"):
        (run_dir / sub).mkdir(parents=True, exist_ok=True)

    meta = {
        "command": command,
        "params": params,
        "created_at": datetime.now().isoformat(),
    }
    (run_dir / "run.json").write_text(json.dumps(meta, indent=2, default=str))
    return run_dir


def load_run(run_dir: Path) -> dict[str, Any]:
    """Load run metadata."""
    return json.loads((run_dir / "run.json").read_text())


def save_output(run_dir: Path, filename: str, data: Any) -> Path:
    """Save an output artifact (JSON or text)."""
    out = run_dir / "outputs" / filename
    if filename.endswith(".json"):
        out.write_text(data if isinstance(data, str) else json.dumps(data, indent=2, sort_keys=True, default=str))
    else:
        out.write_text(str(data))
    return out


def save_log(run_dir: Path, label: str, content: str) -> Path:
    """Write a log entry to the run's logs folder."""
    ts = datetime.now().strftime("%Y%m%d-%H%M%S")
    log_file = run_dir / "logs" / f"{ts}_{label}.log"
    log_file.write_text(content)
    return log_file


def list_runs(runs_dir: Path | None = None) -> list[Path]:
    """Return all run directories, newest first."""
    root = runs_dir or config.RUNS_DIR
    if not root.exists():
        return []
    return sorted(
        [d for d in root.iterdir() if d.is_dir() and (d / "run.json").exists()],
        reverse=True,
    )
