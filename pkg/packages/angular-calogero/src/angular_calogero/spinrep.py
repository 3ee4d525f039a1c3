"""SU(s) content of the bosonic spin-Calogero model and its angular reductions.

A state with quantum numbers k whose nonzero entries sit at positions c_1 < ... < c_r
carries the spin representation [c_1] x [c_2 - c_1] x ... x [n - c_r]. Summing over the
states of a level gives S(m); the angular and relative reductions subtract shifted
copies of it.
"""

from __future__ import annotations

import logging
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

from .errors import NegativeMultiplicityError
from .serialization import Record
from .spectra import ModelVariant, MultiIndex, enumerate_levels

if TYPE_CHECKING:
    from collections.abc import Iterator, Mapping

__all__ = [
    "CharacterRecord",
    "CharacterTerm",
    "VirtualCharacter",
    "YoungDiagram",
    "character_record",
    "fermionic_vacuum",
    "irrep_dimension",
    "level_content",
    "pieri_product",
    "spin_content",
]

logger = logging.getLogger(__name__)

_DIAGRAM_RE = re.compile(r"^\[\s*(\d+(?:\s*,\s*\d+)*)?\s*\]$")


@dataclass(frozen=True, order=True)
class YoungDiagram:
    """Weakly decreasing positive row lengths; the empty diagram is the trivial irrep."""

    rows: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        """Drop zero rows and validate the shape.

        Raises:
            ValueError: If rows increase or are negative

        """
        rows = tuple(int(r) for r in self.rows if r)
        if any(r < 0 for r in rows) or any(a < b for a, b in zip(rows, rows[1:], strict=False)):
            raise ValueError(f"Not a Young diagram: {list(self.rows)}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def row(cls, length: int) -> YoungDiagram:
        """The symmetric irrep [length]."""
        return cls((length,))

    @classmethod
    def parse(cls, text: str) -> YoungDiagram:
        """Parse ``[3,1,1]``; ``[0]`` and ``[]`` are the trivial irrep.

        Raises:
            ValueError: If the text is not a diagram

        """
        match = _DIAGRAM_RE.match(text.strip())
        if match is None:
            raise ValueError(f"Not a Young diagram: {text!r}")
        body = match.group(1)
        return cls(tuple(int(part) for part in body.split(",")) if body else ())

    @property
    def size(self) -> int:
        """Number of boxes."""
        return sum(self.rows)

    @property
    def height(self) -> int:
        """Number of rows."""
        return len(self.rows)

    def canonical(self, s: int) -> YoungDiagram | None:
        """SU(s) form with full columns stripped; None when the irrep vanishes (> s rows)."""
        if self.height > s:
            return None
        if self.height == s:
            return YoungDiagram(tuple(r - self.rows[-1] for r in self.rows))
        return self

    def horizontal_strips(self, boxes: int) -> Iterator[YoungDiagram]:
        """Diagrams obtained by adding ``boxes`` boxes, no two in the same column."""
        rows = (*self.rows, 0)

        def grow(index: int, remaining: int, built: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
            if index == len(rows):
                if remaining == 0:
                    yield built
                return
            room = remaining if index == 0 else min(remaining, rows[index - 1] - rows[index])
            for added in range(room, -1, -1):
                yield from grow(index + 1, remaining - added, (*built, rows[index] + added))

        for shape in grow(0, boxes, ()):
            yield YoungDiagram(shape)

    def __str__(self) -> str:
        return "[" + ",".join(str(r) for r in self.rows) + "]" if self.rows else "[0]"


class VirtualCharacter:
    """Integer combination of SU(s) irreps; multiplicities may be negative."""

    __slots__ = ("s", "terms")

    def __init__(self, s: int, terms: Mapping[YoungDiagram, int] | None = None) -> None:
        """Canonicalize every diagram for SU(s) and drop zero entries.

        Raises:
            ValueError: If s < 1

        """
        if s < 1:
            raise ValueError(f"SU(s) needs s >= 1, got {s}")
        self.s = s
        acc: Counter[YoungDiagram] = Counter()
        for diagram, multiplicity in (terms or {}).items():
            if (canonical := diagram.canonical(s)) is not None:
                acc[canonical] += multiplicity
        self.terms = {d: c for d, c in acc.items() if c}

    @classmethod
    def irrep(cls, s: int, diagram: YoungDiagram) -> VirtualCharacter:
        """A single irrep with multiplicity one."""
        return cls(s, {diagram: 1})

    @classmethod
    def zero(cls, s: int) -> VirtualCharacter:
        """The empty character."""
        return cls(s)

    def _same_group(self, other: VirtualCharacter) -> None:
        if other.s != self.s:
            raise ValueError(f"Characters of SU({self.s}) and SU({other.s}) do not combine")

    def __add__(self, other: VirtualCharacter) -> VirtualCharacter:
        self._same_group(other)
        acc = Counter(self.terms)
        acc.update(other.terms)
        return VirtualCharacter(self.s, acc)

    def __neg__(self) -> VirtualCharacter:
        return VirtualCharacter(self.s, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other: VirtualCharacter) -> VirtualCharacter:
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VirtualCharacter):
            return NotImplemented
        return self.s == other.s and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    @property
    def is_nonnegative(self) -> bool:
        """Whether the character is a true representation."""
        return all(c > 0 for c in self.terms.values())

    def dimension(self) -> int:
        """Total dimension sum_d mult(d) dim(d)."""
        return sum(c * irrep_dimension(self.s, d) for d, c in self.terms.items())

    def sorted_terms(self) -> list[tuple[YoungDiagram, int]]:
        """Terms with the largest diagrams (lexicographically) first."""
        return sorted(self.terms.items(), key=lambda item: item[0].rows, reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        text = ""
        for diagram, count in self.sorted_terms():
            if not text:
                text = f"{count}*{diagram}"
            else:
                text += f" - {-count}*{diagram}" if count < 0 else f" + {count}*{diagram}"
        return text

    def __repr__(self) -> str:
        return f"VirtualCharacter(s={self.s}, {self})"


class CharacterTerm(Record):
    """One irrep of a decomposed character."""

    diagram: str
    multiplicity: int
    dimension: int


class CharacterRecord(Record):
    """Spin content of a level, as emitted by the CLI."""

    variant: ModelVariant
    n: int
    m: int
    s: int
    character: str
    terms: list[CharacterTerm]
    dimension: int


def irrep_dimension(s: int, diagram: YoungDiagram) -> int:
    """Weyl dimension prod_{i<j} (l_i - l_j + j - i)/(j - i) with rows padded to s.

    Raises:
        ValueError: If the diagram has more than s rows

    """
    if diagram.height > s:
        raise ValueError(f"{diagram} has more than {s} rows")
    rows = (*diagram.rows, *(0,) * (s - diagram.height))
    value = Fraction(1)
    for i in range(s):
        for j in range(i + 1, s):
            value *= Fraction(rows[i] - rows[j] + j - i, j - i)
    return int(value)


def pieri_product(character: VirtualCharacter, ell: int) -> VirtualCharacter:
    """Multiply every irrep by the symmetric irrep [ell] with the Pieri rule.

    Raises:
        ValueError: If ell < 0

    """
    if ell < 0:
        raise ValueError(f"Row length must be nonnegative, got {ell}")
    acc: Counter[YoungDiagram] = Counter()
    for diagram, count in character.terms.items():
        for grown in diagram.horizontal_strips(ell):
            acc[grown] += count
    return VirtualCharacter(character.s, acc)


def level_content(n: int, k: MultiIndex, s: int) -> VirtualCharacter:
    """[c_1] x [c_2 - c_1] x ... x [n - c_r] for the nonzero positions c of k.

    Raises:
        ValueError: If k has the wrong length

    """
    if k.n != n:
        raise ValueError(f"Multi-index has {k.n} entries, expected {n}")
    positions = [i for i in range(1, n + 1) if k[i]]
    character = VirtualCharacter.irrep(s, YoungDiagram())
    previous = 0
    for position in [*positions, n]:
        if position > previous:
            character = pieri_product(character, position - previous)
        previous = position
    return character


def _full_content(n: int, m: int, s: int) -> VirtualCharacter:
    total = VirtualCharacter.zero(s)
    if m < 0:
        return total
    for k in enumerate_levels(ModelVariant.FULL, n, m):
        total += level_content(n, k, s)
    return total


def spin_content(variant: ModelVariant, n: int, m: int, s: int) -> VirtualCharacter:
    """S(m) and its relative and angular reductions.

    Full: S(m); Relative: S(m) - S(m-1); Angular: S(m) - S(m-2);
    RelativeAngular: S(m) - S(m-1) - S(m-2) + S(m-3).

    Raises:
        NegativeMultiplicityError: If a reduction leaves a negative multiplicity
        ValueError: If m < 0

    """
    if m < 0:
        raise ValueError(f"Level must be nonnegative, got {m}")
    content = _full_content(n, m, s)
    if variant.excludes_k1:
        content -= _full_content(n, m - 1, s)
    if variant.excludes_k2:
        content -= _full_content(n, m - 2, s)
    if variant.excludes_k1 and variant.excludes_k2:
        content += _full_content(n, m - 3, s)
    if not content.is_nonnegative:
        raise NegativeMultiplicityError(f"{variant} spin content n={n} m={m} s={s}: {content}")
    logger.debug("%s spin content n=%d m=%d s=%d: %s", variant, n, m, s, content)
    return content


def fermionic_vacuum(n: int, s: int) -> YoungDiagram:
    """The antiferromagnetic ground state {n mod s}: a single column."""
    if s < 1:
        raise ValueError(f"SU(s) needs s >= 1, got {s}")
    return YoungDiagram((1,) * (n % s))


def character_record(
    variant: ModelVariant, n: int, m: int, character: VirtualCharacter
) -> CharacterRecord:
    """Serialize a decomposed character with its irrep dimensions."""
    terms = [
        CharacterTerm(diagram=str(d), multiplicity=c, dimension=irrep_dimension(character.s, d))
        for d, c in character.sorted_terms()
    ]
    return CharacterRecord(
        variant=variant,
        n=n,
        m=m,
        s=character.s,
        character=str(character),
        terms=terms,
        dimension=character.dimension(),
    )
