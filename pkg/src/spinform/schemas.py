"""JSON schema validation for descriptor, catalog, chain and report files."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import jsonschema

KINDS = ("descriptor", "catalog", "chain", "report")


class SchemaError(ValueError):
    pass


@lru_cache(maxsize=None)
def load_schema(kind: str) -> dict:
    # schemas are part of the package, not the overridable data directory
    if kind not in KINDS:
        raise ValueError(f"unknown schema {kind!r}")
    text = resources.files("spinform").joinpath("data", "schemas", f"{kind}.schema.json").read_text()
    return json.loads(text)


def validate_document(data, kind: str) -> None:
    validator = jsonschema.Draft202012Validator(load_schema(kind))
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        lines = []
        for e in errors[:10]:
            where = "/".join(str(p) for p in e.absolute_path) or "<root>"
            lines.append(f"{where}: {e.message}")
        raise SchemaError("; ".join(lines))
