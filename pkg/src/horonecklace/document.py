"""JSON configuration documents: two eyes plus an ordered list of beads."""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from jsonschema import Draft202012Validator

from .core import Horoball
from .necklace import EyePair, Necklace

_BALL = {
    "type": "object",
    "required": ["center", "height"],
    "additionalProperties": False,
    "properties": {
        "center": {
            "type": "array",
            "items": {"type": "number"},
            "minItems": 2,
            "maxItems": 2,
        },
        "height": {"type": "number"},
    },
}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "horonecklace/config.schema.json",
    "title": "Horoball configuration",
    "description": "Two full-sized eyes and a cyclically ordered list of beads. "
                   "Heights are Euclidean diameters; bead order is the necklace order.",
    "type": "object",
    "required": ["eyes", "beads"],
    "additionalProperties": False,
    "properties": {
        "eyes": {"type": "array", "items": _BALL, "minItems": 2, "maxItems": 2},
        "beads": {"type": "array", "items": _BALL},
        "metadata": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "label": {"type": "string"},
                "theta": {"type": "number"},
            },
        },
    },
}

_VALIDATOR = Draft202012Validator(SCHEMA)


class DocumentError(ValueError):
    """Schema violation; ``path`` is a JSON pointer to the offending value."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path or '/'}: {message}")
        self.path = path
        self.message = message


@dataclass
class ConfigDocument:
    eyes: list[Horoball]
    beads: list[Horoball]
    metadata: dict = field(default_factory=dict)

    @classmethod
    def from_config(cls, n: Necklace | None, eyes: EyePair, **metadata) -> "ConfigDocument":
        beads = list(n.beads) if n is not None else []
        return cls([eyes.c1, eyes.c2], beads, dict(metadata))

    def eye_pair(self) -> EyePair:
        return EyePair(*self.eyes)

    def necklace(self) -> Necklace:
        return Necklace(tuple(self.beads))

    def to_dict(self) -> dict:
        out = {"eyes": [_ball(b) for b in self.eyes], "beads": [_ball(b) for b in self.beads]}
        if self.metadata:
            out["metadata"] = dict(self.metadata)
        return out


def _ball(b: Horoball) -> dict:
    return {"center": [b.center.x, b.center.y], "height": b.height}


def _pointer(parts) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in parts)


def validate_dict(raw) -> None:
    errors = sorted(_VALIDATOR.iter_errors(raw), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        e = errors[0]
        raise DocumentError(_pointer(e.absolute_path), e.message)


def from_dict(raw) -> ConfigDocument:
    """Build a document; raises DocumentError on schema violations and
    GeometryError on impossible values (e.g. a zero height)."""
    validate_dict(raw)
    eyes = [Horoball(tuple(e["center"]), e["height"]) for e in raw["eyes"]]
    beads = [Horoball(tuple(b["center"]), b["height"]) for b in raw["beads"]]
    return ConfigDocument(eyes, beads, dict(raw.get("metadata", {})))


def dumps(doc: ConfigDocument) -> str:
    """Canonical text: two-space indent, shortest round-trip floats, trailing newline."""
    return json.dumps(doc.to_dict(), indent=2) + "\n"


def loads(text: str) -> ConfigDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("", f"invalid JSON: {exc}") from None
    return from_dict(raw)


def load(path) -> ConfigDocument:
    """Read a document from ``path`` (``-`` reads stdin)."""
    if str(path) == "-":
        return loads(sys.stdin.read())
    return loads(Path(path).read_text())


def save(doc: ConfigDocument, path) -> None:
    text = dumps(doc)
    if str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def schema_text() -> str:
    return json.dumps(SCHEMA, indent=2) + "\n"
