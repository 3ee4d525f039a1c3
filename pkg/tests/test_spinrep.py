"""
Tests for spinrep module.
"""

import pytest
from angular_calogero.spectra import ModelVariant, MultiIndex
from angular_calogero.spinrep import (
    VirtualCharacter,
    YoungDiagram,
    character_record,
    fermionic_vacuum,
    irrep_dimension,
    level_content,
    pieri_product,
    spin_content,
)


def _d(*rows: int) -> YoungDiagram:
    return YoungDiagram(rows)


def _product(s: int, *rows: int) -> VirtualCharacter:
    """[r_1] x [r_2] x ... decomposed for SU(s)."""
    character = VirtualCharacter.irrep(s, YoungDiagram())
    for row in rows:
        character = pieri_product(character, row)
    return character


def _character(s: int, *terms: tuple[YoungDiagram, int]) -> VirtualCharacter:
    return VirtualCharacter(s, dict(terms))


# ===== YoungDiagram Tests =====


class TestYoungDiagram:
    """Tests for diagram parsing and canonical forms."""

    @staticmethod
    def test_parse() -> None:
        """Bracketed rows parse; [0] and [] are trivial."""
        assert YoungDiagram.parse("[3,1,1]") == _d(3, 1, 1)
        assert YoungDiagram.parse("[ 2 , 2 ]") == _d(2, 2)
        assert YoungDiagram.parse("[0]") == YoungDiagram()
        assert YoungDiagram.parse("[]") == YoungDiagram()

    @staticmethod
    def test_parse_rejects_garbage() -> None:
        """Rows need brackets."""
        with pytest.raises(ValueError, match="Young diagram"):
            YoungDiagram.parse("3,1")

    @staticmethod
    def test_rows_must_decrease() -> None:
        """Increasing rows are not a diagram."""
        with pytest.raises(ValueError, match="Young diagram"):
            _d(1, 2)

    @staticmethod
    def test_str() -> None:
        """The trivial diagram prints as [0]."""
        assert str(_d(3, 1)) == "[3,1]"
        assert str(YoungDiagram()) == "[0]"

    @staticmethod
    def test_canonical() -> None:
        """Full columns are stripped and overfull diagrams vanish."""
        assert _d(3, 1).canonical(2) == _d(2)
        assert _d(1, 1, 1).canonical(2) is None
        assert _d(2, 1).canonical(3) == _d(2, 1)

    @staticmethod
    def test_horizontal_strips() -> None:
        """[1] grows by two boxes into [3] and [2,1]."""
        assert set(_d(1).horizontal_strips(2)) == {_d(3), _d(2, 1)}


# ===== Characters and Pieri =====


class TestPieri:
    """Tests for products with symmetric irreps."""

    @staticmethod
    def test_base_case() -> None:
        """[1] x [1] = [2] + [1,1]."""
        result = pieri_product(VirtualCharacter.irrep(3, _d(1)), 1)
        assert result == _character(3, (_d(2), 1), (_d(1, 1), 1))
        assert str(result) == "1*[2] + 1*[1,1]"

    @staticmethod
    def test_two_rows() -> None:
        """[2] x [2] = [4] + [3,1] + [2,2]."""
        result = pieri_product(VirtualCharacter.irrep(4, _d(2)), 2)
        assert result == _character(4, (_d(4), 1), (_d(3, 1), 1), (_d(2, 2), 1))

    @staticmethod
    def test_su2_column_stripping() -> None:
        """For s = 2, [1,1] x [1] = [1]."""
        result = pieri_product(VirtualCharacter.irrep(2, _d(1, 1)), 1)
        assert result == VirtualCharacter.irrep(2, _d(1))

    @staticmethod
    def test_multiplying_by_trivial_row() -> None:
        """[0] is the identity."""
        character = _character(3, (_d(2, 1), 2), (_d(1), 1))
        assert pieri_product(character, 0) == character

    @staticmethod
    @pytest.mark.parametrize(
        ("rows", "ell"), [((1,), 1), ((2,), 2), ((2, 1), 2), ((3, 1, 1), 3), ((2, 2), 1)]
    )
    def test_dimension_conserved(rows, ell) -> None:
        """Without stripping, dim(c x [ell]) = dim(c) dim([ell])."""
        s = 8
        character = VirtualCharacter.irrep(s, YoungDiagram(rows))
        product = pieri_product(character, ell)
        assert product.dimension() == character.dimension() * irrep_dimension(s, _d(ell))

    @staticmethod
    def test_negative_row_rejected() -> None:
        """Row lengths are nonnegative."""
        with pytest.raises(ValueError, match="nonnegative"):
            pieri_product(VirtualCharacter.irrep(2, _d(1)), -1)

    @staticmethod
    def test_virtual_arithmetic() -> None:
        """Subtraction may leave negative multiplicities."""
        difference = VirtualCharacter.irrep(3, _d(1)) - VirtualCharacter.irrep(3, _d(2))
        assert not difference.is_nonnegative
        assert str(difference) == "-1*[2] + 1*[1]"
        assert (difference + VirtualCharacter.irrep(3, _d(2))).is_nonnegative
        assert VirtualCharacter.zero(3) == difference - difference

    @staticmethod
    def test_mixed_groups_rejected() -> None:
        """SU(2) and SU(3) characters do not add."""
        with pytest.raises(ValueError, match="do not combine"):
            VirtualCharacter.irrep(2, _d(1)) + VirtualCharacter.irrep(3, _d(1))


# ===== Dimensions =====


@pytest.mark.parametrize("ell", range(6))
def test_su2_multiplet_dimension(ell) -> None:
    """[ell] of SU(2) has ell + 1 states."""
    assert irrep_dimension(2, _d(ell)) == ell + 1


def test_irrep_dimensions() -> None:
    """Fundamental, antisymmetric and adjoint."""
    for s in range(1, 6):
        assert irrep_dimension(s, _d(1)) == s
    assert irrep_dimension(3, _d(1, 1)) == 3
    assert irrep_dimension(3, _d(2, 1)) == 8
    with pytest.raises(ValueError, match="rows"):
        irrep_dimension(2, _d(1, 1, 1))


# ===== Level and spin content =====


class TestLevelContent:
    """Tests for the positions formula."""

    @staticmethod
    def test_ground_state() -> None:
        """k = 0 carries [n]."""
        assert level_content(4, MultiIndex.zero(4), 3) == VirtualCharacter.irrep(3, _d(4))

    @staticmethod
    def test_positions_formula() -> None:
        """k = (1,0,2,0) carries [1] x [2] x [1]."""
        assert level_content(4, MultiIndex((1, 0, 2, 0)), 3) == _product(3, 1, 2, 1)

    @staticmethod
    def test_depends_on_positions_only() -> None:
        """Values of the nonzero entries do not matter."""
        for s in (2, 3, 4):
            left = level_content(4, MultiIndex((1, 0, 2, 0)), s)
            assert left == level_content(4, MultiIndex((3, 0, 1, 0)), s)
            assert level_content(4, MultiIndex((2, 0, 0, 0)), s) == _product(s, 1, 3)

    @staticmethod
    def test_wrong_length() -> None:
        """The multi-index must have n entries."""
        with pytest.raises(ValueError, match="entries"):
            level_content(4, MultiIndex((1, 0)), 2)


class TestSpinContent:
    """Tests for S(m) and its reductions."""

    N, S = 4, 3

    def test_angular_levels(self) -> None:
        """The first angular levels at n = 4, s = 3."""
        n, s = self.N, self.S
        expected = [
            _product(s, n),
            _product(s, 1, n - 1),
            _product(s, 2, n - 2) + _product(s, 1, n - 1) - _product(s, n),
            _product(s, 1, 1, n - 2) + _product(s, 3, n - 3),
            _product(s, 1, 1, n - 2) + _product(s, 1, 2, n - 3) + _product(s, 4, n - 4),
        ]
        for m, character in enumerate(expected):
            assert spin_content(ModelVariant.ANGULAR, n, m, s) == character

    def test_singlet_removed_at_level_two(self) -> None:
        """[1] x [n-1] at level 2 loses exactly its [n] component."""
        n, s = self.N, self.S
        content = spin_content(ModelVariant.ANGULAR, n, 2, s)
        assert content == _product(s, 2, n - 2) + VirtualCharacter.irrep(s, _d(n - 1, 1))

    def test_relative_angular_is_difference(self) -> None:
        """S~(m) = S_angular(m) - S_angular(m-1)."""
        n, s = self.N, self.S
        for m in range(1, 6):
            relative = spin_content(ModelVariant.RELATIVE_ANGULAR, n, m, s)
            angular = spin_content(ModelVariant.ANGULAR, n, m, s)
            angular -= spin_content(ModelVariant.ANGULAR, n, m - 1, s)
            assert relative == angular

    @staticmethod
    def test_su1_counts_states() -> None:
        """For s = 1 every irrep is trivial and the multiplicity is the degeneracy."""
        content = spin_content(ModelVariant.ANGULAR, 4, 4, 1)
        assert content == _character(1, (YoungDiagram(), 3))

    @staticmethod
    def test_negative_level_rejected() -> None:
        """Levels are nonnegative."""
        with pytest.raises(ValueError, match="nonnegative"):
            spin_content(ModelVariant.FULL, 3, -1, 2)


@pytest.mark.slow
@pytest.mark.parametrize("variant", list(ModelVariant))
def test_reductions_are_true_representations(variant) -> None:
    """Every reduction keeps nonnegative multiplicities."""
    for n in range(2, 7):
        for m in range(9):
            for s in range(1, 5):
                assert spin_content(variant, n, m, s).is_nonnegative


def test_fermionic_vacuum() -> None:
    """The vacuum is the single column {n mod s}."""
    assert fermionic_vacuum(5, 3) == _d(1, 1)
    assert fermionic_vacuum(6, 3) == YoungDiagram()
    with pytest.raises(ValueError, match="s >= 1"):
        fermionic_vacuum(3, 0)


def test_character_record() -> None:
    """Records list every irrep with its dimension."""
    record = character_record(ModelVariant.ANGULAR, 3, 1, _product(3, 1, 2))
    assert record.character == "1*[3] + 1*[2,1]"
    assert [term.dimension for term in record.terms] == [10, 8]
    assert record.dimension == 18
    assert record.to_dict()["variant"] == ModelVariant.ANGULAR.value
