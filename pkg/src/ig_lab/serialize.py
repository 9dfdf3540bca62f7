"""JSON input/output for semigroups, biorders, words and reports."""

from __future__ import annotations

import json
from pathlib import Path

from .biorder import BiorderedSet, SemigroupTable, build_biorder, load_abstract_biorder
from .errors import IgLabError, SanityViolation


def parse_input(data: dict) -> BiorderedSet:
    """Accept either a semigroup table or an abstract biorder description.

    Semigroup form: {"size": n, "table": [[...]], "names": [...]}
    Biorder form:   {"elements": [...], "products": [["e","f","g"], ...]}
    """
    if "table" in data:
        n = int(data.get("size", len(data["table"])))
        if n != len(data["table"]):
            raise SanityViolation("size field disagrees with table dimensions")
        return build_biorder(SemigroupTable(data["table"], data.get("names")))
    if "elements" in data:
        return load_abstract_biorder(data)
    raise SanityViolation("input must contain a 'table' (semigroup) or 'elements' (biorder)")


def load_input(path: str | Path) -> BiorderedSet:
    with open(path) as fh:
        return parse_input(json.load(fh))


def dump_json(data, path: str | Path | None = None) -> str:
    """Canonical JSON: sorted keys, fixed separators, so identical runs are
    byte-identical."""
    text = json.dumps(data, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text
