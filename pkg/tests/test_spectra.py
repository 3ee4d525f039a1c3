"""
Tests for spectra module.
"""

from fractions import Fraction

import pytest
from angular_calogero.errors import VariantConstraintError
from angular_calogero.spectra import (
    ModelVariant,
    MultiIndex,
    SpectrumEntry,
    check_variant,
    degeneracy,
    effective_momentum,
    energy,
    enumerate_levels,
    free_harmonic_dimension,
    level_energy,
    partitions_count,
    radial_barrier,
    spectrum_table,
)

# ===== MultiIndex Tests =====


class TestMultiIndex:
    """Tests for quantum-number vectors."""

    @staticmethod
    def test_parse_forms() -> None:
        """Bare and parenthesized lists parse alike."""
        assert MultiIndex.parse("2,0,1") == MultiIndex.parse("(2, 0, 1)")
        assert str(MultiIndex.parse("(2, 0, 1)")) == "2,0,1"

    @staticmethod
    def test_level_and_indexing() -> None:
        """m = sum i k_i with one-based access."""
        k = MultiIndex((2, 0, 1))
        assert k.level == 5
        assert k[1] == 2
        assert k[3] == 1
        assert k[4] == 0

    @staticmethod
    def test_negative_entries_rejected() -> None:
        """Quantum numbers are nonnegative."""
        with pytest.raises(ValueError, match="nonnegative"):
            MultiIndex((1, -1))

    @staticmethod
    def test_parse_rejects_text() -> None:
        """Non-integers are not quantum numbers."""
        with pytest.raises(ValueError, match="Not a multi-index"):
            MultiIndex.parse("a,b")

    @staticmethod
    def test_zero() -> None:
        """The ground state has level zero."""
        assert MultiIndex.zero(4).level == 0
        assert MultiIndex.zero(4).n == 4


# ===== Partitions and degeneracies =====


@pytest.mark.parametrize(
    ("n", "m", "expected"), [(3, 3, 3), (4, 4, 5), (2, 4, 3), (5, 0, 1), (3, -1, 0), (1, 7, 1)]
)
def test_partitions_count(n, m, expected) -> None:
    """p_n(m) counts partitions of m into parts at most n."""
    assert partitions_count(n, m) == expected


def test_partitions_count_grows_table() -> None:
    """Large levels extend the cached table."""
    assert partitions_count(2, 40) == 21


def test_partitions_count_rejects_zero_bound() -> None:
    """Parts must be bounded by a positive n."""
    with pytest.raises(ValueError, match="positive"):
        partitions_count(0, 3)


@pytest.mark.parametrize(
    ("variant", "n", "m", "expected"),
    [
        (ModelVariant.ANGULAR, 4, 4, 3),
        (ModelVariant.ANGULAR, 3, 3, 2),
        (ModelVariant.ANGULAR, 2, 2, 1),
        (ModelVariant.FULL, 3, 3, 3),
        (ModelVariant.RELATIVE, 3, 3, 1),
        (ModelVariant.RELATIVE_ANGULAR, 3, 3, 1),
        (ModelVariant.RELATIVE_ANGULAR, 3, 4, 0),
    ],
)
def test_degeneracy(variant, n, m, expected) -> None:
    """Degeneracies follow from p_n(m)."""
    assert degeneracy(variant, n, m) == expected


@pytest.mark.parametrize("variant", list(ModelVariant))
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_enumeration_matches_degeneracy(variant, n) -> None:
    """Every level lists exactly the predicted number of labels, all admissible."""
    for m in range(9):
        labels = enumerate_levels(variant, n, m)
        assert len(labels) == degeneracy(variant, n, m)
        assert len(set(labels)) == len(labels)
        for k in labels:
            assert k.level == m
            check_variant(variant, k)


def test_enumeration_order() -> None:
    """Labels come in descending lexicographic order."""
    labels = enumerate_levels(ModelVariant.ANGULAR, 3, 3)
    assert [k.k for k in labels] == [(3, 0, 0), (0, 0, 1)]


def test_enumeration_rejects_negative_level() -> None:
    """Levels are nonnegative."""
    with pytest.raises(ValueError, match="nonnegative"):
        enumerate_levels(ModelVariant.FULL, 3, -1)


def test_check_variant() -> None:
    """Angular variants forbid k_2, relative ones k_1."""
    with pytest.raises(VariantConstraintError):
        check_variant(ModelVariant.ANGULAR, MultiIndex((0, 1, 0)))
    with pytest.raises(VariantConstraintError):
        check_variant(ModelVariant.RELATIVE, MultiIndex((1, 0, 0)))
    check_variant(ModelVariant.FULL, MultiIndex((1, 1, 1)))


# ===== Energies =====


class TestEnergy:
    """Tests for closed-form energies."""

    @staticmethod
    def test_angular_three_particles() -> None:
        """k = (0,0,1) at n = 3, g = 1 has q = 6 and eps = 21."""
        entry = energy(ModelVariant.ANGULAR, 3, Fraction(1), None, MultiIndex((0, 0, 1)))
        assert entry.q == 6
        assert entry.energy == 21
        assert entry.degeneracy == 2
        assert entry.omega is None

    @staticmethod
    def test_full_energy() -> None:
        """E / omega = g n(n-1)/2 + n/2 + m."""
        entry = energy(ModelVariant.FULL, 3, Fraction(1, 2), Fraction(2), MultiIndex((1, 1, 0)))
        assert entry.energy == Fraction(3, 2) + Fraction(3, 2) + 3
        assert entry.absolute_energy == 2 * entry.energy

    @staticmethod
    def test_relative_energy() -> None:
        """The center of mass drops out of the zero-point energy."""
        assert level_energy(ModelVariant.RELATIVE, 3, Fraction(1), 2) == 3 + 1 + 2

    @staticmethod
    def test_relative_angular_closed_form() -> None:
        """At n = 3 the relative-angular eigenvalues are 9/2 (g + k_3)^2."""
        for g in (Fraction(0), Fraction(1, 2), Fraction(2)):
            for k3 in range(4):
                entry = energy(
                    ModelVariant.RELATIVE_ANGULAR, 3, g, None, MultiIndex((0, 0, k3))
                )
                assert entry.energy == Fraction(9, 2) * (g + k3) ** 2

    @staticmethod
    def test_two_particle_angular() -> None:
        """At n = 2, eps = (g + k_1)^2 / 2."""
        g = Fraction(1, 2)
        for k1 in range(5):
            entry = energy(ModelVariant.ANGULAR, 2, g, None, MultiIndex((k1, 0)))
            assert entry.q == g + k1
            assert entry.energy == (g + k1) ** 2 / 2

    @staticmethod
    def test_energy_depends_only_on_level() -> None:
        """States of one level share their energy."""
        g = Fraction(3, 2)
        for m in range(7):
            energies = {
                energy(ModelVariant.ANGULAR, 4, g, None, k).energy
                for k in enumerate_levels(ModelVariant.ANGULAR, 4, m)
            }
            assert len(energies) <= 1

    @staticmethod
    def test_invalid_inputs() -> None:
        """Wrong lengths, negative couplings and frequencies are rejected."""
        with pytest.raises(ValueError, match="entries"):
            energy(ModelVariant.FULL, 3, Fraction(1), Fraction(1), MultiIndex((1, 0)))
        with pytest.raises(ValueError, match="Coupling"):
            energy(ModelVariant.FULL, 2, Fraction(-1), Fraction(1), MultiIndex((1, 0)))
        with pytest.raises(ValueError, match="Frequency"):
            energy(ModelVariant.FULL, 2, Fraction(1), Fraction(0), MultiIndex((1, 0)))
        with pytest.raises(VariantConstraintError):
            energy(ModelVariant.ANGULAR, 2, Fraction(1), None, MultiIndex((0, 1)))


def test_effective_momentum_excludes_radial_quanta() -> None:
    """k_2 never enters q; k_1 is dropped for relative variants."""
    k = MultiIndex((1, 0, 1))
    assert effective_momentum(ModelVariant.ANGULAR, 3, Fraction(1), k) == 3 + 1 + 3
    assert effective_momentum(ModelVariant.FULL, 3, Fraction(1), MultiIndex((0, 2, 0))) == 3


def test_radial_barrier() -> None:
    """h = q + (D - 1)/2 with D = n or n - 1."""
    assert radial_barrier(ModelVariant.ANGULAR, 3, Fraction(6)) == 7
    assert radial_barrier(ModelVariant.RELATIVE_ANGULAR, 3, Fraction(3)) == Fraction(7, 2)
    with pytest.raises(ValueError, match="angular"):
        radial_barrier(ModelVariant.FULL, 3, Fraction(1))


def test_barrier_reproduces_eigenvalue() -> None:
    """eps = h(h-1)/2 - (D-1)(D-3)/8 on the sphere."""
    n, g = 4, Fraction(1, 2)
    for m in range(5):
        eps = level_energy(ModelVariant.ANGULAR, n, g, m)
        q = g * n * (n - 1) / 2 + m
        h = radial_barrier(ModelVariant.ANGULAR, n, q)
        assert eps == h * (h - 1) / 2 - Fraction((n - 1) * (n - 3), 8)


def test_free_harmonic_dimension() -> None:
    """Classical harmonics of degree m in n variables."""
    assert free_harmonic_dimension(3, 2) == 5
    assert free_harmonic_dimension(2, 5) == 2
    assert free_harmonic_dimension(4, 0) == 1
    assert free_harmonic_dimension(3, -1) == 0


# ===== Tables =====


def test_spectrum_table_rows() -> None:
    """One row per level, including empty ones."""
    rows = spectrum_table(ModelVariant.RELATIVE_ANGULAR, 3, Fraction(1), None, 4)
    assert [row.level for row in rows] == [0, 1, 2, 3, 4]
    assert [row.degeneracy for row in rows] == [1, 0, 0, 1, 0]
    assert rows[3].states == [[0, 0, 1]]
    assert rows[3].q == 6


def test_full_table_has_no_q() -> None:
    """q is reported for angular variants only."""
    rows = spectrum_table(ModelVariant.FULL, 2, Fraction(1), Fraction(1), 2)
    assert all(row.q is None for row in rows)


def test_spectrum_entry_serializes_rationals() -> None:
    """Energies are exact p/q strings in JSON."""
    entry = energy(ModelVariant.ANGULAR, 2, Fraction(1, 2), None, MultiIndex((1, 0)))
    data = entry.to_dict()
    assert data["energy"] == "9/8"
    assert SpectrumEntry.model_validate(data) == entry
