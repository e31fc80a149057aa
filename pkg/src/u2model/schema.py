"""Access to the JSON schemas shipped in ``u2model/schemas``."""
from __future__ import annotations

import json
from importlib import resources


def schema_name(command: str) -> str:
    return command.replace(" ", "-")


def load_schema(name: str) -> dict:
    """Schema for a CLI command ("oracle fusion" or "oracle-fusion") or "model-object"."""
    path = resources.files("u2model") / "schemas" / f"{schema_name(name)}.json"
    return json.loads(path.read_text(encoding="utf-8"))


def available() -> list[str]:
    return sorted(p.name[:-5] for p in (resources.files("u2model") / "schemas").iterdir()
                  if p.name.endswith(".json"))
