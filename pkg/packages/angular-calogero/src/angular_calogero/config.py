"""Run configuration shared by the CLI commands."""

from __future__ import annotations

from enum import StrEnum
from fractions import Fraction
from pathlib import Path

from pydantic import BaseModel, Field, field_validator

from .polycore import parse_rational
from .serialization import Rational
from .spectra import ModelVariant

__all__ = ["OutputFormat", "RunConfig", "parse_couplings"]

CACHE_ENV_VAR = "ANGULAR_CALOGERO_CACHE_DIR"


class OutputFormat(StrEnum):
    """Output format options."""

    JSON = "json"
    TEXT = "text"


class RunConfig(BaseModel):
    """Validated parameters of one CLI run.

    Rationals arrive as ``"p/q"`` text and are held as Fractions.
    """

    model_config = {"frozen": True}

    n: int = Field(default=3, ge=2)
    g: Rational = Fraction(1)
    omega: Rational = Fraction(1)
    variant: ModelVariant = ModelVariant.ANGULAR
    max_level: int = Field(default=6, ge=0)
    root_system: str | None = None
    couplings: dict[str, Rational] | None = None
    s: int = Field(default=2, ge=1)
    output: OutputFormat = OutputFormat.TEXT
    cache_dir: Path | None = None
    seed: int = 0
    trust_cache: bool = False
    jobs: int = Field(default=1, ge=1)

    @field_validator("g")
    @classmethod
    def _nonnegative_coupling(cls, value: Fraction) -> Fraction:
        if value < 0:
            raise ValueError(f"coupling must be nonnegative, got {value}")
        return value

    @field_validator("omega")
    @classmethod
    def _positive_frequency(cls, value: Fraction) -> Fraction:
        if value <= 0:
            raise ValueError(f"frequency must be positive, got {value}")
        return value

    @field_validator("couplings")
    @classmethod
    def _nonnegative_multiplicities(
        cls, value: dict[str, Fraction] | None
    ) -> dict[str, Fraction] | None:
        if value is not None and any(v < 0 for v in value.values()):
            raise ValueError(f"multiplicities must be nonnegative, got {value}")
        return value

    def coupling_for_roots(self) -> dict[str, Fraction] | Fraction:
        """Per-orbit multiplicities when given, else the scalar coupling."""
        return dict(self.couplings) if self.couplings is not None else self.g


def parse_couplings(text: str) -> dict[str, Fraction] | Fraction:
    """Parse ``"short=1,long=2"`` into per-orbit multiplicities, or a bare rational.

    Args:
        text: Comma-separated ``orbit=value`` pairs or a single rational

    Returns:
        The multiplicities by orbit name, or the scalar

    Raises:
        ValueError: If a value is not a rational or an orbit repeats

    """
    text = text.strip()
    if "=" not in text:
        return parse_rational(text)
    couplings: dict[str, Fraction] = {}
    for item in text.split(","):
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or not name:
            raise ValueError(f"Expected orbit=value, got {item!r}")
        if name in couplings:
            raise ValueError(f"Orbit {name!r} given twice")
        couplings[name] = parse_rational(value.strip())
    return couplings
