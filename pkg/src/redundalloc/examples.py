"""Bundled example specifications."""

from __future__ import annotations

import json
from importlib import resources

EXAMPLES = ("example1", "example2", "example3")


def example_path(name: str):
    """Filesystem path of a bundled spec, e.g. ``example_path("example1")``."""
    if name not in EXAMPLES:
        raise ValueError(f"unknown example {name!r}; expected one of {EXAMPLES}")
    return resources.files("redundalloc") / "data" / f"{name}.json"


def load_example(name: str, **overrides):
    """Parsed ``RunSpec`` of a bundled example.

    Top-level keys in ``overrides`` replace those of the stored spec, e.g.
    ``load_example("example1", copula={"family": "gumbel", "alpha": 1})``.
    """
    from .cli import parse_spec

    obj = json.loads(example_path(name).read_text())
    obj.update(overrides)
    return parse_spec(obj)
