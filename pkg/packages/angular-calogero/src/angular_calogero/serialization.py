"""Pydantic plumbing shared by every serializable record."""

import json
from fractions import Fraction
from typing import Annotated, Any

from pydantic import BaseModel, PlainSerializer, PlainValidator, WithJsonSchema

from .polycore import parse_rational

__all__ = ["Rational", "Record"]


def _validate_rational(value: Any) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, str | int | Fraction):
        raise ValueError(f"Expected an exact rational, got {value!r}")
    return parse_rational(value)


Rational = Annotated[
    Fraction,
    PlainValidator(_validate_rational),
    PlainSerializer(str, return_type=str),
    WithJsonSchema({"type": "string", "pattern": r"^-?\d+(/\d+)?$"}),
]
"""Exact rational: a Fraction in Python, a ``"p/q"`` string in JSON."""


class Record(BaseModel):
    """Base for records emitted by the CLI and stored in the cache."""

    model_config = {"frozen": True}

    def to_dict(self) -> dict[str, Any]:
        """Convert to a JSON-compatible dictionary."""
        return self.model_dump(mode="json")

    def to_json(self) -> str:
        """Convert to key-sorted JSON text."""
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)
