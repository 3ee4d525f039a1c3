"""Closed-form spectra and degeneracies of the four model variants.

* Full: E = omega * (g n(n-1)/2 + n/2 + sum_i i k_i)
* Relative: no k_1 term and (n-1)/2 instead of n/2
* Angular: eps = q(q+n-2)/2 with q = g n(n-1)/2 + k_1 + sum_{i>=3} i k_i (no k_2)
* Relative angular: eps = q(q+n-3)/2 with q = g n(n-1)/2 + sum_{i>=3} i k_i

Energies of the Full and Relative variants are kept in units of omega.
"""

from __future__ import annotations

import logging
import math
import threading
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from typing import TYPE_CHECKING

from .errors import VariantConstraintError
from .serialization import Rational, Record

if TYPE_CHECKING:
    from collections.abc import Iterator

__all__ = [
    "ModelVariant",
    "MultiIndex",
    "SpectrumEntry",
    "SpectrumRow",
    "check_variant",
    "degeneracy",
    "effective_momentum",
    "energy",
    "enumerate_levels",
    "free_harmonic_dimension",
    "level_energy",
    "partitions_count",
    "radial_barrier",
    "spectrum_table",
]

logger = logging.getLogger(__name__)


class ModelVariant(StrEnum):
    """The four Hamiltonians: full, relative, angular and relative angular."""

    FULL = "full"
    RELATIVE = "relative"
    ANGULAR = "angular"
    RELATIVE_ANGULAR = "relative-angular"

    @property
    def excludes_k1(self) -> bool:
        """Whether k_1 (the center-of-mass quantum) must vanish."""
        return self in {ModelVariant.RELATIVE, ModelVariant.RELATIVE_ANGULAR}

    @property
    def excludes_k2(self) -> bool:
        """Whether k_2 (the radial quantum) must vanish."""
        return self in {ModelVariant.ANGULAR, ModelVariant.RELATIVE_ANGULAR}

    @property
    def is_angular(self) -> bool:
        """Whether energies are dimensionless (omega does not enter)."""
        return self.excludes_k2


@dataclass(frozen=True)
class MultiIndex:
    """Quantum numbers k = (k_1, ..., k_n)."""

    k: tuple[int, ...]

    def __post_init__(self) -> None:
        """Validate entries.

        Raises:
            ValueError: If empty or any entry is negative

        """
        object.__setattr__(self, "k", tuple(int(v) for v in self.k))
        if not self.k:
            raise ValueError("A multi-index needs at least one entry")
        if any(v < 0 for v in self.k):
            raise ValueError(f"Quantum numbers must be nonnegative: {self.k}")

    @classmethod
    def parse(cls, text: str) -> MultiIndex:
        """Parse ``"2,0,1"`` or ``"(2, 0, 1)"``.

        Raises:
            ValueError: If an entry is not an integer

        """
        body = text.strip().strip("()[]")
        try:
            return cls(tuple(int(part) for part in body.split(",") if part.strip()))
        except ValueError as e:
            raise ValueError(f"Not a multi-index: {text!r}") from e

    @classmethod
    def zero(cls, n: int) -> MultiIndex:
        """The ground-state index."""
        return cls((0,) * n)

    @property
    def n(self) -> int:
        """Number of entries."""
        return len(self.k)

    @property
    def level(self) -> int:
        """m = sum_i i k_i."""
        return sum(i * v for i, v in enumerate(self.k, start=1))

    def weighted_level(self, degrees: tuple[int, ...]) -> int:
        """sum_i d_i k_i for Coxeter degrees."""
        return sum(d * v for d, v in zip(degrees, self.k, strict=True))

    def __getitem__(self, ell: int) -> int:
        """k_ell with 1-based ``ell`` (0 beyond the end)."""
        return self.k[ell - 1] if 1 <= ell <= len(self.k) else 0

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.k)


class SpectrumEntry(Record):
    """One eigenstate label with its energy, effective angular momentum and degeneracy."""

    variant: ModelVariant
    n: int
    g: Rational
    k: list[int]
    level: int
    energy: Rational
    q: Rational
    degeneracy: int
    omega: Rational | None = None

    @property
    def absolute_energy(self) -> Fraction:
        """Energy multiplied by omega for Full/Relative when omega is known."""
        if self.variant.is_angular or self.omega is None:
            return self.energy
        return self.energy * self.omega


class SpectrumRow(Record):
    """All states of one level of a variant (q only for angular variants)."""

    level: int
    energy: Rational
    q: Rational | None
    degeneracy: int
    states: list[list[int]]


class _PartitionTable:
    """Growable per-n tables of p_n(m), guarded for concurrent use."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._tables: dict[int, list[int]] = {}

    def count(self, n: int, m: int) -> int:
        if m < 0:
            return 0
        with self._lock:
            table = self._tables.get(n)
            if table is None or len(table) <= m:
                size = max(m + 1, 2 * len(table) if table else 16)
                table = [1] + [0] * (size - 1)
                for part in range(1, n + 1):
                    for total in range(part, size):
                        table[total] += table[total - part]
                self._tables[n] = table
            return table[m]


_PARTITIONS = _PartitionTable()


def partitions_count(n: int, m: int) -> int:
    """p_n(m): partitions of m into parts no bigger than n (0 for m < 0).

    Raises:
        ValueError: If n < 1

    """
    if n < 1:
        raise ValueError(f"Part bound must be positive, got {n}")
    return _PARTITIONS.count(n, m)


def _allowed_parts(variant: ModelVariant, n: int) -> list[int]:
    excluded = {1} if variant.excludes_k1 else set()
    if variant.excludes_k2:
        excluded.add(2)
    return [i for i in range(1, n + 1) if i not in excluded]


def _fill(parts: list[int], position: int, remaining: int) -> Iterator[dict[int, int]]:
    if position == len(parts):
        if remaining == 0:
            yield {}
        return
    part = parts[position]
    for count in range(remaining // part, -1, -1):
        for rest in _fill(parts, position + 1, remaining - count * part):
            yield {part: count, **rest}


def enumerate_levels(variant: ModelVariant, n: int, m: int) -> list[MultiIndex]:
    """All k at level m that respect the variant's constraints, in descending lex order.

    Raises:
        ValueError: If m < 0

    """
    if m < 0:
        raise ValueError(f"Level must be nonnegative, got {m}")
    found = []
    for assignment in _fill(_allowed_parts(variant, n), 0, m):
        found.append(MultiIndex(tuple(assignment.get(i, 0) for i in range(1, n + 1))))
    return found


def check_variant(variant: ModelVariant, k: MultiIndex) -> None:
    """Raise if k is not a valid label of the variant.

    Raises:
        VariantConstraintError: If k_1 or k_2 is set where the variant forbids it

    """
    if variant.excludes_k1 and k[1]:
        raise VariantConstraintError(f"{variant} states have k_1 = 0, got k = ({k})")
    if variant.excludes_k2 and k[2]:
        raise VariantConstraintError(f"{variant} states have k_2 = 0, got k = ({k})")


def _ground_q(n: int, g: Fraction) -> Fraction:
    return g * n * (n - 1) / 2


def effective_momentum(variant: ModelVariant, n: int, g: Fraction, k: MultiIndex) -> Fraction:
    """q (or q~): g n(n-1)/2 plus the level carried by every k except k_2 (and k_1 if relative)."""
    level = sum(i * k[i] for i in range(3, k.n + 1))
    if not variant.excludes_k1:
        level += k[1]
    return _ground_q(n, g) + level


def degeneracy(variant: ModelVariant, n: int, m: int) -> int:
    """Number of states at level m."""
    p = partitions_count
    match variant:
        case ModelVariant.FULL:
            return p(n, m)
        case ModelVariant.RELATIVE:
            return p(n, m) - p(n, m - 1)
        case ModelVariant.ANGULAR:
            return p(n, m) - p(n, m - 2)
        case ModelVariant.RELATIVE_ANGULAR:
            return p(n, m) - p(n, m - 1) - p(n, m - 2) + p(n, m - 3)


def energy(
    variant: ModelVariant, n: int, g: Fraction, omega: Fraction | None, k: MultiIndex
) -> SpectrumEntry:
    """Energy of state k of the variant.

    Args:
        variant: Model variant
        n: Particle number
        g: Coupling (>= 0)
        omega: Frequency; required positive for Full/Relative, ignored by angular variants
        k: Quantum numbers

    Returns:
        The spectrum entry; Full/Relative energies in units of omega

    Raises:
        VariantConstraintError: If k violates the variant
        ValueError: If g < 0, omega <= 0 or k has the wrong length

    """
    if k.n != n:
        raise ValueError(f"Multi-index has {k.n} entries, expected {n}")
    if g < 0:
        raise ValueError(f"Coupling must be nonnegative, got {g}")
    if omega is not None and omega <= 0:
        raise ValueError(f"Frequency must be positive, got {omega}")
    check_variant(variant, k)
    return SpectrumEntry(
        variant=variant,
        n=n,
        g=g,
        k=list(k.k),
        level=k.level,
        energy=level_energy(variant, n, g, k.level),
        q=effective_momentum(variant, n, g, k),
        degeneracy=degeneracy(variant, n, k.level),
        omega=None if variant.is_angular else omega,
    )


def level_energy(variant: ModelVariant, n: int, g: Fraction, m: int) -> Fraction:
    """Energy of level m; it depends on k only through the level once the variant holds."""
    ground = _ground_q(n, g)
    match variant:
        case ModelVariant.FULL:
            return ground + Fraction(n, 2) + m
        case ModelVariant.RELATIVE:
            return ground + Fraction(n - 1, 2) + m
        case ModelVariant.ANGULAR:
            q = ground + m
            return q * (q + n - 2) / 2
        case ModelVariant.RELATIVE_ANGULAR:
            q = ground + m
            return q * (q + n - 3) / 2


def radial_barrier(variant: ModelVariant, n: int, q: Fraction) -> Fraction:
    """Barrier parameter h with eps = h(h-1)/2 - (D-1)(D-3)/8 on the sphere S^(D-1).

    D is n for Angular and n-1 for RelativeAngular.

    Raises:
        ValueError: If the variant is not angular

    """
    if not variant.is_angular:
        raise ValueError("Barrier parameters exist for angular variants only")
    dimension = n if variant is ModelVariant.ANGULAR else n - 1
    return q + Fraction(dimension - 1, 2)


def free_harmonic_dimension(n: int, m: int) -> int:
    """Dimension of classical harmonic polynomials of degree m in n variables."""
    if m < 0:
        return 0
    lower = math.comb(n + m - 3, n - 1) if m >= 2 else 0
    return math.comb(n + m - 1, n - 1) - lower


def spectrum_table(
    variant: ModelVariant, n: int, g: Fraction, omega: Fraction | None, max_level: int
) -> list[SpectrumRow]:
    """One row per level 0..max_level with energy, q, degeneracy and the states.

    Levels without states are kept (degeneracy 0) so the table has no gaps.
    """
    if g < 0:
        raise ValueError(f"Coupling must be nonnegative, got {g}")
    if omega is not None and omega <= 0:
        raise ValueError(f"Frequency must be positive, got {omega}")
    rows = []
    for m in range(max_level + 1):
        states = enumerate_levels(variant, n, m)
        rows.append(
            SpectrumRow(
                level=m,
                energy=level_energy(variant, n, g, m),
                q=_ground_q(n, g) + m if variant.is_angular else None,
                degeneracy=degeneracy(variant, n, m),
                states=[list(k.k) for k in states],
            )
        )
    logger.debug("spectrum table %s n=%d g=%s up to m=%d", variant, n, g, max_level)
    return rows

