"""
Tests for polycore module.
"""

import pickle
import random
from fractions import Fraction

import pytest
from angular_calogero.errors import (
    DivisionNotExactError,
    IncompatibleRadialBaseError,
    NotPolynomialError,
    VariableCountMismatchError,
)
from angular_calogero.polycore import (
    I_UNIT,
    ArithOp,
    MultiPoly,
    RadialPoly,
    apply_transposition,
    arith,
    center_of_mass,
    coefficient,
    exact_divide,
    format_coefficient,
    format_poly,
    gaussian,
    is_symmetric,
    iter_points,
    normalize_leading,
    parse_coefficient,
    parse_poly,
    parse_rational,
    polynomial_ring,
    power_sum,
    proportional,
    radial_collect,
    random_polynomial,
    restrict_to_hyperplane,
    squared_radius,
    substitute,
    to_fraction,
    vandermonde,
)

# ===== Fixtures =====


@pytest.fixture
def x1() -> MultiPoly:
    """x1 in two variables."""
    return MultiPoly.variable(2, 1)


@pytest.fixture
def x2() -> MultiPoly:
    """x2 in two variables."""
    return MultiPoly.variable(2, 2)


# ===== Coefficient Tests =====


class TestCoefficients:
    """Tests for Gaussian-rational coefficients."""

    @staticmethod
    def test_conjugate_product_is_norm() -> None:
        """(1+2i)(1-2i) = 5."""
        z = gaussian(1, 2)
        assert z * z.conjugate() == coefficient(5)

    @staticmethod
    def test_division() -> None:
        """z * (1/z) = 1."""
        z = gaussian(Fraction(1, 2), -3)
        assert z * (coefficient(1) / z) == coefficient(1)

    @staticmethod
    def test_real_values_convert_back() -> None:
        """Ints and Fractions survive the trip into QQ_I."""
        assert to_fraction(coefficient(Fraction(-3, 4))) == Fraction(-3, 4)
        assert to_fraction(coefficient(7)) == 7
        with pytest.raises(ValueError, match="not real"):
            to_fraction(I_UNIT)

    @staticmethod
    def test_format_and_parse() -> None:
        """Real values print as rationals, complex ones as a+bi."""
        assert format_coefficient(coefficient(Fraction(1, 2))) == "1/2"
        assert format_coefficient(gaussian(1, 2)) == "1+2i"
        assert parse_coefficient("1+2i") == gaussian(1, 2)
        assert parse_coefficient("-3/4") == coefficient(Fraction(-3, 4))

    @staticmethod
    def test_parse_rejects_garbage() -> None:
        """Malformed coefficients raise ValueError."""
        with pytest.raises(ValueError, match="Not a coefficient"):
            parse_coefficient("1.5")

    @staticmethod
    def test_zero_is_falsy() -> None:
        """Only zero is falsy."""
        assert not coefficient(0)
        assert I_UNIT


def test_parse_rational_forms() -> None:
    """Text, int and Fraction inputs all become Fractions."""
    assert parse_rational("3/2") == Fraction(3, 2)
    assert parse_rational(" -1 ") == -1
    assert parse_rational(4) == 4
    assert parse_rational(Fraction(1, 3)) == Fraction(1, 3)


def test_parse_rational_rejects_division_by_zero() -> None:
    """A zero denominator is not a rational."""
    with pytest.raises(ValueError, match="Not an exact rational"):
        parse_rational("1/0")


# ===== MultiPoly Tests =====


class TestMultiPoly:
    """Tests for sparse multivariate polynomials."""

    @staticmethod
    def test_zero_coefficients_are_dropped() -> None:
        """Terms with zero coefficients never appear."""
        poly = MultiPoly(2, {(1, 0): 0, (0, 1): 2})
        assert list(poly.terms) == [(0, 1)]

    @staticmethod
    def test_invalid_exponents_rejected() -> None:
        """Exponent vectors must match the variable count."""
        with pytest.raises(ValueError, match="Invalid exponent vector"):
            MultiPoly(2, {(1, 0, 0): 1})

    @staticmethod
    def test_polynomials_share_one_ring(x1, x2) -> None:
        """Every polynomial in two variables lives in the cached QQ_I[x1, x2]."""
        assert x1.element.ring is polynomial_ring(2)
        assert (x1 * x2 + 1).element.ring is polynomial_ring(2)
        assert polynomial_ring(2).ngens == 2

    @staticmethod
    def test_degree_and_homogeneity(x1, x2) -> None:
        """Degree is -1 for zero; sums of mixed degree are not homogeneous."""
        assert MultiPoly.zero(2).degree == -1
        assert (x1**2 + x1 * x2).is_homogeneous
        assert not (x1**2 + x2).is_homogeneous
        assert (x1**3 + x2).degree == 3

    @staticmethod
    def test_ring_operations(x1, x2) -> None:
        """(x1 + x2)^2 expands with the binomial coefficients."""
        square = (x1 + x2) ** 2
        assert square == x1**2 + (x1 * x2).scale(2) + x2**2
        assert (square - square).is_zero
        assert square / 2 == square.scale(Fraction(1, 2))

    @staticmethod
    def test_mixing_variable_counts_fails(x1) -> None:
        """Polynomials from different rings do not add."""
        with pytest.raises(VariableCountMismatchError):
            _ = x1 + MultiPoly.variable(3, 1)

    @staticmethod
    def test_derivative_euler_laplacian(x1, x2) -> None:
        """Derivatives of x1^3 x2."""
        poly = x1**3 * x2
        assert poly.derivative(1) == (x1**2 * x2).scale(3)
        assert poly.euler() == poly.scale(4)
        assert poly.laplacian() == (x1 * x2).scale(6)

    @staticmethod
    def test_evaluate(x1, x2) -> None:
        """(x1 + x2)^2 at (1, 2) is 9."""
        assert ((x1 + x2) ** 2).evaluate([1, 2]) == coefficient(9)
        assert (x1 * x2.scale(I_UNIT)).evaluate([Fraction(1, 2), 4]) == gaussian(0, 2)

    @staticmethod
    def test_evaluate_wrong_dimension(x1) -> None:
        """Points must match the variable count."""
        with pytest.raises(VariableCountMismatchError):
            x1.evaluate([1, 2, 3])

    @staticmethod
    def test_leading_term_of_zero() -> None:
        """The zero polynomial has no leading term."""
        with pytest.raises(ValueError, match="no leading term"):
            MultiPoly.zero(2).leading_term()

    @staticmethod
    def test_leading_term_is_graded_lex(x1, x2) -> None:
        """Degree decides first, then the exponent of x1."""
        assert (x2**3 + x1**2).leading_term() == ((0, 3), coefficient(1))
        assert (x1 * x2 + x2**2).scale(5).leading_term() == ((1, 1), coefficient(5))

    @staticmethod
    def test_constant_term(x1) -> None:
        """The constant term is the value at the origin."""
        assert (x1 + 5).constant_term() == coefficient(5)
        assert x1.constant_term() == coefficient(0)

    @staticmethod
    def test_real_part(x1, x2) -> None:
        """Imaginary parts are dropped coefficient by coefficient."""
        poly = x1.scale(gaussian(2, 3)) + x2.scale(I_UNIT)
        assert not poly.is_real
        assert poly.real_part() == x1.scale(2)

    @staticmethod
    def test_negative_power_rejected(x1) -> None:
        """Negative powers leave the ring."""
        with pytest.raises(ValueError, match="Negative powers"):
            _ = x1**-1

    @staticmethod
    def test_variable_index_is_one_based() -> None:
        """x0 does not exist."""
        with pytest.raises(IndexError):
            MultiPoly.variable(2, 0)

    @staticmethod
    def test_pickles_through_text(x1, x2) -> None:
        """Worker processes receive polynomials in the text grammar."""
        poly = (x1 - x2.scale(gaussian(Fraction(1, 2), 1))) ** 3
        assert pickle.loads(pickle.dumps(poly)) == poly


# ===== Symmetric building blocks =====


def test_vandermonde_two_variables(x1, x2) -> None:
    """Delta = x1 - x2 for two particles."""
    assert vandermonde(2) == x1 - x2


def test_vandermonde_is_antisymmetric() -> None:
    """Swapping two variables flips the sign of Delta."""
    delta = vandermonde(3)
    assert apply_transposition(delta, 1, 3) == -delta


def test_power_sums_and_radius() -> None:
    """r^2 is the second power sum and X averages the coordinates."""
    assert squared_radius(3) == power_sum(3, 2)
    assert center_of_mass(2).scale(2) == power_sum(2, 1)


def test_is_symmetric(x1, x2) -> None:
    """Symmetry is checked orbit by orbit."""
    assert is_symmetric(x1**2 + x2**2 + x1 * x2)
    assert not is_symmetric(x1)
    assert not is_symmetric(x1**2 + (x2**2).scale(2))


def test_apply_transposition_needs_distinct_indices(x1) -> None:
    """s_ii is not a transposition."""
    with pytest.raises(IndexError):
        apply_transposition(x1, 1, 1)


def test_normalize_and_proportional(x1, x2) -> None:
    """Normalizing fixes the graded-lex leading coefficient to one."""
    poly = (x1**2).scale(3) - x2
    assert normalize_leading(poly).leading_term()[1] == coefficient(1)
    assert proportional(poly, poly.scale(gaussian(0, 2)))
    assert not proportional(poly, x1)
    assert proportional(MultiPoly.zero(2), MultiPoly.zero(2))


def test_substitute_and_restrict() -> None:
    """Every symmetric function of degree one vanishes on the hyperplane."""
    assert restrict_to_hyperplane(power_sum(3, 1)).is_zero
    s = MultiPoly.variable(1, 1)
    assert substitute(power_sum(2, 2), [s, -s]) == (s**2).scale(2)


def test_substitute_within_one_ring(x1, x2) -> None:
    """Images in the same ring are composed simultaneously."""
    assert substitute(x1**2 * x2, [x2, x1]) == x2**2 * x1
    assert substitute(x1 * x2, [x1 + x2, x1 - x2]) == x1**2 - x2**2


def test_substitute_rejects_mixed_images(x1) -> None:
    """All images must share one variable count."""
    with pytest.raises(VariableCountMismatchError):
        substitute(x1, [MultiPoly.variable(2, 1), MultiPoly.variable(3, 1)])


# ===== Division =====


class TestExactDivide:
    """Tests for exact multivariate division."""

    @staticmethod
    def test_difference_of_squares(x1, x2) -> None:
        """(x1^2 - x2^2) / (x1 - x2) = x1 + x2."""
        assert exact_divide(x1**2 - x2**2, x1 - x2) == x1 + x2

    @staticmethod
    def test_vandermonde_squared() -> None:
        """Delta^2 / Delta = Delta."""
        delta = vandermonde(3)
        assert exact_divide(delta**2, delta) == delta

    @staticmethod
    def test_inexact_division_raises(x1, x2) -> None:
        """A remainder means the division is not exact."""
        with pytest.raises(DivisionNotExactError):
            exact_divide(x1**2 + 1, x1 - x2)

    @staticmethod
    def test_division_by_zero(x1) -> None:
        """Dividing by zero raises ZeroDivisionError."""
        with pytest.raises(ZeroDivisionError):
            exact_divide(x1, MultiPoly.zero(2))

    @staticmethod
    def test_random_products_divide_back() -> None:
        """(f * d) / d = f on random inputs."""
        rng = random.Random(7)
        for _ in range(10):
            f = random_polynomial(3, 3, rng)
            d = random_polynomial(3, 2, rng, terms=3)
            if d.is_zero:
                continue
            assert exact_divide(f * d, d) == f


# ===== RadialPoly Tests =====


class TestRadialPoly:
    """Tests for polynomials times powers of r^2."""

    @staticmethod
    def test_base_is_normalized(x1) -> None:
        """The integer part of the base exponent moves into the offsets."""
        radial = RadialPoly(2, Fraction(3, 2), {0: x1})
        assert radial.base == Fraction(1, 2)
        assert set(radial.parts) == {1}

    @staticmethod
    def test_collect_cancels_negative_powers() -> None:
        """r^2 * rho^-1 collects to the constant 1."""
        radial = RadialPoly.from_poly(squared_radius(2), -1)
        assert radial_collect(radial) == 1

    @staticmethod
    def test_collect_rejects_fractional_exponent() -> None:
        """A leftover rho^(1/2) is not a polynomial."""
        radial = RadialPoly.from_poly(MultiPoly.constant(2, 1), Fraction(1, 2))
        with pytest.raises(NotPolynomialError):
            radial_collect(radial)

    @staticmethod
    def test_collect_rejects_uncancelled_power(x1) -> None:
        """x1 / r^2 is not a polynomial."""
        with pytest.raises(NotPolynomialError):
            radial_collect(RadialPoly.from_poly(x1, -1))

    @staticmethod
    def test_equality_folds_offsets() -> None:
        """r^2 * rho^0 equals 1 * rho^1."""
        one = MultiPoly.constant(2, 1)
        assert RadialPoly.from_poly(squared_radius(2)) == RadialPoly.from_poly(one, 1)

    @staticmethod
    def test_relative_and_full_do_not_mix() -> None:
        """Full and relative radii live in different spaces."""
        one = MultiPoly.constant(2, 1)
        with pytest.raises(IncompatibleRadialBaseError):
            _ = RadialPoly.from_poly(one) + RadialPoly.from_poly(one, relative=True)

    @staticmethod
    def test_relative_radius() -> None:
        """r~^2 = r^2 - n X^2 vanishes on the diagonal."""
        radial = RadialPoly.from_poly(MultiPoly.constant(3, 1), relative=True)
        assert radial.radial_square().evaluate([2, 2, 2]) == coefficient(0)

    @staticmethod
    def test_evaluate() -> None:
        """x1 * rho at (1, 2) is 5."""
        radial = RadialPoly.from_poly(MultiPoly.variable(2, 1), 1)
        assert radial.evaluate([1, 2]) == coefficient(5)

    @staticmethod
    @pytest.mark.parametrize("relative", [False, True], ids=["full", "relative"])
    def test_evaluate_matches_collected_form(relative) -> None:
        """Offsets -1, 0 and 2 evaluate like the expanded polynomial at random points."""
        rng = random.Random(11)
        shell = RadialPoly(3, 0, relative=relative)
        rho = shell.radial_square()
        parts = {
            -1: rho * random_polynomial(3, 3, rng),
            0: random_polynomial(3, 2, rng),
            2: random_polynomial(3, 1, rng),
        }
        radial = RadialPoly(3, 0, parts, relative=relative)
        expanded = radial_collect(radial)
        checked = 0
        for point in iter_points(3, 20, rng):
            if not rho.evaluate(point):
                continue
            assert radial.evaluate(point) == expanded.evaluate(point)
            checked += 1
        assert checked > 0


def test_arith_dispatch(x1, x2) -> None:
    """arith mirrors the operators."""
    assert arith(x1, x2, ArithOp.ADD) == x1 + x2
    assert arith(x1, x2, ArithOp.SUB) == x1 - x2
    assert arith(x1, x2, ArithOp.MUL) == x1 * x2
    assert arith(x1, 3, ArithOp.SCALE) == x1.scale(3)


def test_arith_scale_needs_scalar(x1, x2) -> None:
    """Scaling by a polynomial is a type error."""
    with pytest.raises(TypeError):
        arith(x1, x2, ArithOp.SCALE)


# ===== Text grammar =====


class TestTextGrammar:
    """Tests for format_poly and parse_poly."""

    @staticmethod
    def test_format() -> None:
        """Terms print in descending graded lex order."""
        poly = MultiPoly(3, {(2, 1, 0): Fraction(3, 2), (0, 0, 3): -1})
        assert format_poly(poly) == "3/2*x1^2*x2 - 1*x3^3"

    @staticmethod
    def test_format_zero_and_constant() -> None:
        """Zero prints as 0 and constants without a monomial."""
        assert format_poly(MultiPoly.zero(2)) == "0"
        assert format_poly(MultiPoly.constant(2, 1)) == "1"

    @staticmethod
    def test_parse_matches_format() -> None:
        """The printed form of h_(2,0) at n=2, g=1 parses back."""
        text = "-1*x1^2 - 4*x1*x2 - 1*x2^2"
        poly = parse_poly(text, 2)
        assert format_poly(poly) == text
        assert poly == -(squared_radius(2) + (MultiPoly.monomial((1, 1))).scale(4))

    @staticmethod
    def test_parse_complex_coefficients() -> None:
        """Gaussian coefficients use the a+bi form."""
        poly = parse_poly("0+2i*x1 + 1", 1)
        assert poly.terms[(1,)] == gaussian(0, 2)
        assert not poly.is_real

    @staticmethod
    def test_parse_rejects_out_of_range_variable() -> None:
        """x3 does not exist in two variables."""
        with pytest.raises(ValueError, match="outside"):
            parse_poly("1*x3", 2)

    @staticmethod
    def test_parse_rejects_malformed_factor() -> None:
        """Factors must look like x<i> or x<i>^<e>."""
        with pytest.raises(ValueError, match="Malformed factor"):
            parse_poly("1*y1", 2)


def test_random_polynomial_homogeneous() -> None:
    """Homogeneous draws have the requested degree."""
    poly = random_polynomial(3, 4, random.Random(1), homogeneous=True)
    assert poly.is_homogeneous
    assert poly.degree in {4, -1}
