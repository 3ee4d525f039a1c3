"""
Tests for intertwine module.
"""

from fractions import Fraction

import pytest
from angular_calogero.dunkl import DunklContext
from angular_calogero.errors import NotSymmetricError, UnsupportedCouplingError
from angular_calogero.intertwine import (
    IntertwinerContext,
    dunkl_pairing,
    harmonic_transport,
    intertwiner_apply,
    intertwining_residual,
    kernel_probe,
    symmetric_monomial_basis,
)
from angular_calogero.polycore import (
    MultiPoly,
    coefficient,
    is_symmetric,
    power_sum,
    squared_radius,
)

COUPLINGS = [Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2)]


# ===== Fixtures =====


@pytest.fixture(params=COUPLINGS, ids=str)
def g(request) -> Fraction:
    """The tested couplings."""
    return request.param


def _ictx(n: int, g: Fraction | int) -> IntertwinerContext:
    return IntertwinerContext(DunklContext(n, Fraction(g)))


# ===== K(g) Tests =====


class TestIntertwiner:
    """Tests for the intertwining operator on symmetric polynomials."""

    @staticmethod
    def test_target_is_shifted() -> None:
        """K(g) starts from coupling g + 1."""
        assert _ictx(3, Fraction(1, 2)).target.g == Fraction(3, 2)

    @staticmethod
    def test_two_particle_constant(g) -> None:
        """K(g) 1 = (D_1 - D_2)(x1 - x2) = 2(1 + 2g) at n = 2."""
        assert intertwiner_apply(_ictx(2, g), MultiPoly.constant(2, 1)) == 2 * (1 + 2 * g)

    @staticmethod
    def test_preserves_degree_and_symmetry(g) -> None:
        """The image of a homogeneous symmetric polynomial is homogeneous of equal degree."""
        f = power_sum(3, 1) * squared_radius(3)
        image = intertwiner_apply(_ictx(3, g), f)
        assert is_symmetric(image)
        assert image.is_homogeneous
        assert image.degree == f.degree

    @staticmethod
    def test_requires_symmetric_input() -> None:
        """Non-symmetric operands are rejected."""
        with pytest.raises(NotSymmetricError):
            intertwiner_apply(_ictx(2, 1), MultiPoly.variable(2, 1))

    @staticmethod
    @pytest.mark.parametrize("n", [2, 3])
    def test_intertwining_residual_vanishes(n, g) -> None:
        """K(g) L(g+1) = L(g) K(g) on symmetric polynomials."""
        ictx = _ictx(n, g)
        for f in [
            squared_radius(n),
            power_sum(n, 1) ** 2,
            power_sum(n, 3),
            power_sum(n, 1) * squared_radius(n),
        ]:
            assert intertwining_residual(ictx, f).is_zero


# ===== Pairing Tests =====


def test_pairing_of_linear_monomials(g) -> None:
    """(x1, x1) = 1 + g(n-1) and (x1, x2) = -g."""
    for n in (2, 3, 4):
        ctx = DunklContext(n, g)
        x1, x2 = MultiPoly.variable(n, 1), MultiPoly.variable(n, 2)
        assert dunkl_pairing(ctx, x1, x1) == coefficient(1 + g * (n - 1))
        assert dunkl_pairing(ctx, x1, x2) == coefficient(-g)


def test_pairing_is_symmetric(g) -> None:
    """(f, h) = (h, f) for polynomials of equal degree."""
    ctx = DunklContext(3, g)
    f = MultiPoly.variable(3, 1) ** 2 + MultiPoly.variable(3, 2) * MultiPoly.variable(3, 3)
    h = MultiPoly.variable(3, 1) * MultiPoly.variable(3, 2)
    assert dunkl_pairing(ctx, f, h) == dunkl_pairing(ctx, h, f)


def test_pairing_of_different_degrees_vanishes() -> None:
    """No constant term survives when the degrees differ."""
    ctx = DunklContext(3, Fraction(1))
    assert dunkl_pairing(ctx, power_sum(3, 1), squared_radius(3)) == coefficient(0)


# ===== Kernel and transport =====


@pytest.mark.parametrize(("n", "m", "size"), [(3, 0, 1), (3, 2, 2), (3, 4, 4), (2, 4, 3)])
def test_symmetric_monomial_basis(n, m, size) -> None:
    """One monomial symmetric function per partition with at most n parts."""
    basis = symmetric_monomial_basis(n, m)
    assert len(basis) == size
    assert all(is_symmetric(f) for f in basis)


@pytest.mark.parametrize("coupling", [0, 1, 2])
def test_kernel_probe_full_rank(coupling) -> None:
    """K(g) loses no symmetric polynomial at integer couplings."""
    for m in range(4):
        report = kernel_probe(_ictx(3, coupling), m)
        assert report.rank == report.dimension
        assert report.m == m


@pytest.mark.parametrize("coupling", [0, 1])
def test_harmonic_transport(coupling) -> None:
    """Harmonics at g + 1 land on independent harmonics at g."""
    for m in (2, 3):
        report = harmonic_transport(_ictx(3, coupling), m)
        assert report.harmonic
        assert report.rank == report.transported


def test_fractional_coupling_rejected() -> None:
    """The kernel argument is only made at integer couplings."""
    with pytest.raises(UnsupportedCouplingError):
        kernel_probe(_ictx(3, Fraction(1, 2)), 2)
    with pytest.raises(UnsupportedCouplingError):
        harmonic_transport(_ictx(3, Fraction(1, 2)), 2)
