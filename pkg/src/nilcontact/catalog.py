"""Built-in algebras shipped as JSON files in ``nilcontact/data``."""
from __future__ import annotations

import json
from importlib import resources

from .errors import InvalidInput
from .io import AlgebraInput, parse_data

NAMES = ("heisenberg3", "heisenberg5", "heisenberg7", "paper-ex5d", "paper-ex7d")


def names() -> list:
    return sorted(NAMES)


def raw(name: str) -> dict:
    if name not in NAMES:
        raise InvalidInput(f"unknown catalog entry {name!r}; available: {', '.join(names())}")
    text = resources.files("nilcontact").joinpath(f"data/{name}.json").read_text("utf-8")
    return json.loads(text)


def get(name: str) -> AlgebraInput:
    return parse_data(raw(name))
