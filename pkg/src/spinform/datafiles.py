"""Location of the shipped transcription data."""

from __future__ import annotations

import os
from pathlib import Path

ENV_VAR = "SPINFORM_DATA_DIR"


def data_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    if override:
        return Path(override)
    return Path(__file__).resolve().parent / "data"


def data_path(*parts: str) -> Path:
    return data_dir().joinpath(*parts)
