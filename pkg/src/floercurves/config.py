"""Reading curve configurations and rendering exact values for output."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping

import jsonschema

from .errors import ConfigMismatch
from .knotified import CompositeKnotSpec
from .obstructions import CurveConfig
from .semigroups import NumericalSemigroup, torus_knot_semigroup

__all__ = ["CONFIG_SCHEMA", "parse_cusp", "parse_config", "parse_spec", "load_json", "frac_json", "frac_text"]

_LINKS = {
    "type": "object",
    "patternProperties": {"^[1-9][0-9]*$": {"type": "integer", "minimum": 0}},
    "additionalProperties": False,
}

CONFIG_SCHEMA = {
    "type": "object",
    "properties": {
        "degree": {"type": "integer", "minimum": 3},
        "genus": {"type": "integer", "minimum": 0},
        "cusps": {
            "type": "array",
            "items": {
                "oneOf": [
                    {
                        "type": "object",
                        "properties": {
                            "type": {"const": "torus_knot"},
                            "p": {"type": "integer", "minimum": 2},
                            "q": {"type": "integer", "minimum": 2},
                        },
                        "required": ["type", "p", "q"],
                        "additionalProperties": False,
                    },
                    {
                        "type": "object",
                        "properties": {
                            "type": {"const": "gaps"},
                            "gaps": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                        },
                        "required": ["type", "gaps"],
                        "additionalProperties": False,
                    },
                ]
            },
        },
        "positive_tn": _LINKS,
        "negative_tn": _LINKS,
        "options": {
            "type": "object",
            "properties": {"allow_genus_slack": {"type": "boolean"}},
            "additionalProperties": False,
        },
    },
    "required": ["genus"],
    "additionalProperties": False,
}


def load_json(path) -> Any:
    with open(path) as fh:
        return json.load(fh)


def _validate(doc: Mapping) -> None:
    try:
        jsonschema.validate(doc, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigMismatch(f"schema violation at {where}: {exc.message}") from exc


def parse_cusp(entry: Mapping) -> NumericalSemigroup:
    if entry["type"] == "torus_knot":
        return torus_knot_semigroup(entry["p"], entry["q"])
    return NumericalSemigroup.from_gaps(entry["gaps"])


def _links(doc: Mapping, key: str) -> dict[int, int]:
    return {int(n): int(m) for n, m in doc.get(key, {}).items()}


def parse_spec(doc: Mapping) -> CompositeKnotSpec:
    """Composite-knot data from a configuration document; the degree is ignored."""
    _validate(doc)
    return CompositeKnotSpec(
        tuple(parse_cusp(c) for c in doc.get("cusps", [])),
        _links(doc, "positive_tn"),
        _links(doc, "negative_tn"),
        doc["genus"],
    )


def parse_config(doc: Mapping, allow_genus_slack: bool | None = None) -> CurveConfig:
    _validate(doc)
    if "degree" not in doc:
        raise ConfigMismatch("a curve configuration needs a degree")
    slack = doc.get("options", {}).get("allow_genus_slack", False)
    if allow_genus_slack is not None:
        slack = slack or allow_genus_slack
    return CurveConfig(
        doc["degree"],
        doc["genus"],
        tuple(parse_cusp(c) for c in doc.get("cusps", [])),
        _links(doc, "positive_tn"),
        _links(doc, "negative_tn"),
        slack,
    )


def frac_json(x) -> dict[str, int]:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def frac_text(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
