"""On-disk cache of deformed harmonics.

Entries are JSON files named by the sha256 of their canonical key. The cache is
advisory: a reloaded harmonic is checked against L(g) again unless the caller trusts it.
"""

from __future__ import annotations

import hashlib
import json
import logging
from fractions import Fraction
from typing import TYPE_CHECKING

from pydantic import ValidationError

from .harmonics import DeformedHarmonic, deformed_harmonic, is_harmonic, require_harmonic
from .polycore import format_poly, parse_poly
from .serialization import Rational, Record
from .spectra import ModelVariant, MultiIndex

if TYPE_CHECKING:
    from pathlib import Path

    from .dunkl import DunklContext

__all__ = ["HarmonicCache", "HarmonicRecord", "cache_key"]

logger = logging.getLogger(__name__)


class HarmonicRecord(Record):
    """A deformed harmonic as stored on disk and emitted by ``eigenfunction``."""

    variant: ModelVariant
    n: int
    g: Rational
    k: list[int]
    m: int
    q: Rational
    poly: str
    verified: bool

    @classmethod
    def from_harmonic(cls, harmonic: DeformedHarmonic, *, verified: bool) -> HarmonicRecord:
        """Serialize a harmonic; ``poly`` uses the text grammar over x1..xn."""
        variant = ModelVariant.RELATIVE_ANGULAR if harmonic.relative else ModelVariant.ANGULAR
        return cls(
            variant=variant,
            n=harmonic.ctx.n,
            g=harmonic.ctx.g,
            k=list(harmonic.k.k),
            m=harmonic.m,
            q=harmonic.q,
            poly=format_poly(harmonic.poly),
            verified=verified,
        )

    def to_harmonic(self, ctx: DunklContext) -> DeformedHarmonic:
        """Rebuild the harmonic for ``ctx`` from the stored text."""
        return DeformedHarmonic(
            ctx=ctx,
            k=MultiIndex(tuple(self.k)),
            m=self.m,
            q=self.q,
            poly=parse_poly(self.poly, self.n),
            relative=self.variant is ModelVariant.RELATIVE_ANGULAR,
        )


def cache_key(module: str, n: int, g: Fraction, variant: ModelVariant, k: MultiIndex) -> str:
    """Hex sha256 of the canonical JSON of (module, n, g, variant, k)."""
    payload = json.dumps(
        {"g": str(g), "k": list(k.k), "module": module, "n": n, "variant": str(variant)},
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class HarmonicCache:
    """Directory of cached harmonics with hit/miss counters."""

    MODULE = "harmonics"

    def __init__(self, directory: Path, *, trust: bool = False) -> None:
        """Initialize the cache.

        Args:
            directory: Cache directory, created on first store
            trust: Skip the L(g) re-check on reload

        """
        self.directory = directory
        self.trust = trust
        self.hits = 0
        self.misses = 0

    def path_for(self, ctx: DunklContext, k: MultiIndex, *, relative: bool = False) -> Path:
        """File holding the harmonic of ``k`` at ``ctx``."""
        variant = ModelVariant.RELATIVE_ANGULAR if relative else ModelVariant.ANGULAR
        return self.directory / f"{cache_key(self.MODULE, ctx.n, ctx.g, variant, k)}.json"

    def load(
        self, ctx: DunklContext, k: MultiIndex, *, relative: bool = False
    ) -> DeformedHarmonic | None:
        """Reload a harmonic, or None when absent, unreadable or no longer harmonic."""
        path = self.path_for(ctx, k, relative=relative)
        if not path.is_file():
            return None
        try:
            record = HarmonicRecord.model_validate_json(path.read_text(encoding="utf-8"))
            harmonic = record.to_harmonic(ctx)
        except (OSError, ValidationError, ValueError) as e:
            logger.warning("Ignoring unreadable cache entry %s: %s", path.name, e)
            return None
        if record.n != ctx.n or record.g != ctx.g or record.k != list(k.k):
            logger.warning("Cache entry %s does not match its key", path.name)
            return None
        if not self.trust and not is_harmonic(ctx, harmonic.poly):
            logger.warning("Cached h_(%s) at n=%d g=%s failed the L(g) check", k, ctx.n, ctx.g)
            return None
        return harmonic

    def store(self, harmonic: DeformedHarmonic) -> HarmonicRecord:
        """Write a harmonic and return its record."""
        record = HarmonicRecord.from_harmonic(harmonic, verified=True)
        path = self.path_for(harmonic.ctx, harmonic.k, relative=harmonic.relative)
        self.directory.mkdir(parents=True, exist_ok=True)
        path.write_text(record.to_json() + "\n", encoding="utf-8")
        logger.debug("cached h_(%s) at %s", harmonic.k, path.name)
        return record

    def get_or_build(
        self, ctx: DunklContext, k: MultiIndex, *, relative: bool = False
    ) -> tuple[DeformedHarmonic, bool]:
        """Return the harmonic and whether it came from the cache.

        Raises:
            VariantConstraintError: If k violates the variant constraints
            HarmonicityLostError: If a freshly built harmonic is not annihilated by L(g)

        """
        if (cached := self.load(ctx, k, relative=relative)) is not None:
            self.hits += 1
            return cached, True
        self.misses += 1
        harmonic = deformed_harmonic(ctx, k, relative=relative)
        require_harmonic(ctx, harmonic)
        self.store(harmonic)
        return harmonic, False
