"""Exact multivariate polynomial algebra over the Gaussian rationals.

Everything in the package is built on three value types:

* ``GaussianRational`` -- sympy's exact complex number with rational parts, an element of
  the ground domain ``QQ_I``.
* ``MultiPoly`` -- a polynomial in x1..xn over ``QQ_I``. It wraps a sparse sympy
  ``PolyElement`` of the ring ``QQ_I[x1..xn]``, a map from dense exponent tuples to
  nonzero coefficients.
* ``RadialPoly`` -- a finite sum ``P_j(x) * (r^2)^(a + j)`` over integer offsets ``j``
  with one exact rational base exponent ``a``. This is the space Dunkl operators act on
  when building deformed harmonics.

All values are immutable after construction and every operation returns a new value.
Monomials are ordered graded-lexicographically with x1 > x2 > ... > xn.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from enum import StrEnum
from fractions import Fraction
from functools import cache
from typing import TYPE_CHECKING, Any, TypeAlias, overload

from sympy import Symbol
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.domains.gaussiandomains import GaussianRational
from sympy.polys.orderings import grlex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyRing

from .errors import (
    DivisionNotExactError,
    IncompatibleRadialBaseError,
    NotPolynomialError,
    VariableCountMismatchError,
)

if TYPE_CHECKING:
    import random
    from collections.abc import Callable, Iterable, Iterator, Mapping, Sequence

    from sympy.polys.rings import PolyElement

__all__ = [
    "ArithOp",
    "CoefficientLike",
    "ExactRational",
    "Exponents",
    "GaussianRational",
    "I_UNIT",
    "MultiPoly",
    "RadialPoly",
    "accumulate_term",
    "apply_transposition",
    "arith",
    "center_of_mass",
    "coefficient",
    "exact_divide",
    "format_coefficient",
    "format_poly",
    "gaussian",
    "graded_lex_key",
    "is_symmetric",
    "iter_points",
    "normalize_leading",
    "parse_coefficient",
    "parse_poly",
    "parse_rational",
    "polynomial_ring",
    "power_sum",
    "proportional",
    "radial_collect",
    "random_polynomial",
    "restrict_to_hyperplane",
    "squared_radius",
    "substitute",
    "to_fraction",
    "total_of",
    "vandermonde",
]

ExactRational = Fraction
Exponents = tuple[int, ...]
CoefficientLike: TypeAlias = GaussianRational | Fraction | int


def parse_rational(value: str | int | Fraction) -> Fraction:
    """Parse an exact rational from ``"p/q"``, ``"p"`` or a number.

    Args:
        value: Text such as ``"3/2"`` or ``"-1"``, an int or a Fraction

    Returns:
        The value as a reduced Fraction

    Raises:
        ValueError: If the text is not a rational literal

    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"Not an exact rational: {value!r}") from e


def _rational(value: Fraction | int) -> Any:
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _fraction(value: Any) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def coefficient(value: CoefficientLike) -> GaussianRational:
    """Coerce an int, Fraction, ``QQ`` element or GaussianRational into ``QQ_I``."""
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, Fraction):
        return QQ_I(_rational(value))
    return QQ_I(value)


def gaussian(re: Fraction | int, im: Fraction | int = 0) -> GaussianRational:
    """The Gaussian rational ``re + im*i``."""
    return QQ_I(_rational(re), _rational(im))


def to_fraction(value: GaussianRational) -> Fraction:
    """Real coefficient as a Fraction.

    Raises:
        ValueError: If the imaginary part is nonzero

    """
    if value.y:
        raise ValueError(f"{format_coefficient(value)} is not real")
    return _fraction(value.x)


def format_coefficient(value: GaussianRational) -> str:
    """Render ``rational`` or ``rational+rationali``."""
    real, imag = _fraction(value.x), _fraction(value.y)
    return f"{real}+{imag}i" if imag else str(real)


def parse_coefficient(text: str) -> GaussianRational:
    """Parse the coefficient grammar ``rational`` or ``rational+rationali``.

    Raises:
        ValueError: If the text does not match the grammar

    """
    if not (match := _COEFF_RE.fullmatch(text.strip())):
        raise ValueError(f"Not a coefficient: {text!r}")
    real, imag = match.group(1), match.group(2)
    return gaussian(Fraction(real), Fraction(imag) if imag else 0)


_ZERO = QQ_I(0)
_ONE = QQ_I(1)
I_UNIT = QQ_I(0, 1)

_RATIONAL = r"-?\d+(?:/\d+)?"
_COEFF_RE = re.compile(rf"({_RATIONAL})(?:\+({_RATIONAL})i)?")
_FACTOR_RE = re.compile(r"x(\d+)(?:\^(\d+))?")
_TERM_SPLIT_RE = re.compile(r" ([+-]) ")


@cache
def polynomial_ring(n: int) -> PolyRing:
    """The ring ``QQ_I[x1..xn]`` in graded lex order."""
    return PolyRing([Symbol(f"x{k}") for k in range(1, n + 1)], QQ_I, grlex)


def graded_lex_key(exps: Exponents) -> tuple[int, Exponents]:
    """Sort key realizing graded lex order (use with ``reverse=True`` for descending)."""
    return grlex(exps)  # type: ignore[no-any-return]


def accumulate_term(
    acc: dict[Exponents, GaussianRational], exps: Exponents, coeff: GaussianRational
) -> None:
    """Add ``coeff`` at ``exps`` in a term map, dropping entries that cancel."""
    if (current := acc.get(exps)) is not None:
        total = current + coeff
        if total:
            acc[exps] = total
        else:
            del acc[exps]
    elif coeff:
        acc[exps] = coeff


class MultiPoly:
    """Polynomial in x1..xn with Gaussian-rational coefficients.

    ``element`` is the underlying sympy ring element; ``terms`` exposes it as an exponent
    tuple to coefficient map that must be treated as read-only.
    """

    __slots__ = ("element", "n")

    n: int
    element: PolyElement

    def __init__(self, n: int, terms: Mapping[Exponents, CoefficientLike] | None = None) -> None:
        """Initialize and canonicalize.

        Args:
            n: Number of variables
            terms: Exponent tuple to coefficient map; zero coefficients are dropped

        Raises:
            ValueError: If an exponent tuple has the wrong length or a negative entry

        """
        if n < 0:
            raise ValueError(f"Variable count must be nonnegative, got {n}")
        clean: dict[Exponents, GaussianRational] = {}
        for exps, value in (terms or {}).items():
            key = tuple(exps)
            if len(key) != n or any(e < 0 for e in key):
                raise ValueError(f"Invalid exponent vector {key} for {n} variables")
            accumulate_term(clean, key, coefficient(value))
        self.n = n
        self.element = polynomial_ring(n).from_dict(clean)

    @classmethod
    def wrap(cls, element: PolyElement) -> MultiPoly:
        """Adopt a ring element of ``polynomial_ring(n)`` without copying."""
        obj = object.__new__(cls)
        obj.n = element.ring.ngens
        obj.element = element
        return obj

    def __reduce__(self) -> tuple[Callable[[str, int], MultiPoly], tuple[str, int]]:
        return parse_poly, (format_poly(self), self.n)

    @classmethod
    def zero(cls, n: int) -> MultiPoly:
        """The zero polynomial."""
        return cls.wrap(polynomial_ring(n).zero)

    @classmethod
    def constant(cls, n: int, value: CoefficientLike) -> MultiPoly:
        """A constant polynomial."""
        ring = polynomial_ring(n)
        return cls.wrap(ring.from_dict({ring.zero_monom: coefficient(value)}))

    @classmethod
    def variable(cls, n: int, index: int) -> MultiPoly:
        """The coordinate x_index (1-based)."""
        _check_index(n, index)
        return cls.wrap(polynomial_ring(n).gens[index - 1])

    @classmethod
    def monomial(cls, exps: Exponents, value: CoefficientLike = 1) -> MultiPoly:
        """A single term ``value * x^exps``."""
        return cls(len(exps), {exps: value})

    @property
    def terms(self) -> Mapping[Exponents, GaussianRational]:
        """Exponent tuple to nonzero coefficient."""
        return self.element  # type: ignore[no-any-return]

    @property
    def is_zero(self) -> bool:
        """Whether the polynomial has no terms."""
        return not self.element

    @property
    def is_real(self) -> bool:
        """Whether every coefficient is real."""
        return all(not c.y for c in self.element.values())

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.element), default=-1)

    @property
    def is_homogeneous(self) -> bool:
        """Whether all terms share one total degree (zero counts as homogeneous)."""
        return len({sum(e) for e in self.element}) <= 1

    def sorted_terms(self) -> list[tuple[Exponents, GaussianRational]]:
        """Terms in descending graded lex order."""
        return self.element.terms()  # type: ignore[no-any-return]

    def leading_term(self) -> tuple[Exponents, GaussianRational]:
        """Largest term in graded lex order.

        Raises:
            ValueError: If the polynomial is zero

        """
        if not self.element:
            raise ValueError("The zero polynomial has no leading term")
        return self.element.LM, self.element.LC

    def constant_term(self) -> GaussianRational:
        """Coefficient of the empty monomial, i.e. the value at the origin."""
        return self.element.get(self.element.ring.zero_monom, _ZERO)

    def homogeneous_part(self, degree: int) -> MultiPoly:
        """Terms of a single total degree."""
        ring = self.element.ring
        return MultiPoly.wrap(
            ring.from_dict({e: c for e, c in self.element.items() if sum(e) == degree})
        )

    def real_part(self) -> MultiPoly:
        """Polynomial of real parts of the coefficients."""
        ring = self.element.ring
        return MultiPoly.wrap(ring.from_dict({e: QQ_I(c.x) for e, c in self.element.items()}))

    def _coerce(self, other: MultiPoly | CoefficientLike) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.n != self.n:
                raise VariableCountMismatchError(
                    f"Polynomials in {self.n} and {other.n} variables cannot be combined"
                )
            return other
        return MultiPoly.constant(self.n, other)

    def __add__(self, other: MultiPoly | CoefficientLike) -> MultiPoly:
        return MultiPoly.wrap(self.element + self._coerce(other).element)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly.wrap(-self.element)

    def __sub__(self, other: MultiPoly | CoefficientLike) -> MultiPoly:
        return MultiPoly.wrap(self.element - self._coerce(other).element)

    def __rsub__(self, other: CoefficientLike) -> MultiPoly:
        return -self + other

    def scale(self, value: CoefficientLike) -> MultiPoly:
        """Multiply every coefficient by a scalar."""
        return MultiPoly.wrap(self.element.mul_ground(coefficient(value)))

    def __mul__(self, other: MultiPoly | CoefficientLike) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        return MultiPoly.wrap(self.element * self._coerce(other).element)

    __rmul__ = __mul__

    def __truediv__(self, value: CoefficientLike) -> MultiPoly:
        return self.scale(_ONE / coefficient(value))

    def __pow__(self, exponent: int) -> MultiPoly:
        if exponent < 0:
            raise ValueError("Negative powers are not polynomials")
        return MultiPoly.wrap(self.element**exponent)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            return self.n == other.n and dict.__eq__(self.element, other.element)
        if isinstance(other, int | Fraction | GaussianRational):
            return self == MultiPoly.constant(self.n, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.element.items())))

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({self.n}, {format_poly(self)!r})"

    def derivative(self, index: int) -> MultiPoly:
        """Partial derivative with respect to x_index (1-based)."""
        _check_index(self.n, index)
        return MultiPoly.wrap(self.element.diff(self.element.ring.gens[index - 1]))

    def euler(self) -> MultiPoly:
        """Euler operator sum_i x_i d/dx_i, which multiplies each term by its degree."""
        ring = self.element.ring
        return MultiPoly.wrap(ring.from_dict({e: c * sum(e) for e, c in self.element.items()}))

    def laplacian(self) -> MultiPoly:
        """Flat Laplacian sum_i d^2/dx_i^2."""
        result = MultiPoly.zero(self.n)
        for index in range(1, self.n + 1):
            result += self.derivative(index).derivative(index)
        return result

    def permute(self, perm: Sequence[int]) -> MultiPoly:
        """Rename variables: the exponent of x_k moves to x_perm[k] (0-based)."""
        moved: dict[Exponents, GaussianRational] = {}
        for exps, coeff in self.element.items():
            target = [0] * self.n
            for k, e in enumerate(exps):
                target[perm[k]] = e
            moved[tuple(target)] = coeff
        return MultiPoly.wrap(self.element.ring.from_dict(moved))

    def evaluate(self, point: Sequence[CoefficientLike]) -> GaussianRational:
        """Evaluate at a point with exact coordinates.

        Raises:
            VariableCountMismatchError: If the point has the wrong dimension

        """
        if len(point) != self.n:
            raise VariableCountMismatchError(
                f"Point of dimension {len(point)} for {self.n} variables"
            )
        if not self.n:
            return self.constant_term()
        return self.element(*(coefficient(v) for v in point))


def _check_index(n: int, index: int) -> None:
    if not 1 <= index <= n:
        raise IndexError(f"Variable index {index} out of range 1..{n}")


def _check_same_n(f: MultiPoly, g: MultiPoly) -> None:
    if f.n != g.n:
        raise VariableCountMismatchError(f"Polynomials in {f.n} and {g.n} variables")


def squared_radius(n: int) -> MultiPoly:
    """r^2 = sum_i x_i^2."""
    return power_sum(n, 2)


def power_sum(n: int, ell: int) -> MultiPoly:
    """Newton power sum p_ell = sum_i x_i^ell."""
    ring = polynomial_ring(n)
    return MultiPoly.wrap(sum((gen**ell for gen in ring.gens), ring.zero))


def center_of_mass(n: int) -> MultiPoly:
    """X = (x1 + ... + xn) / n."""
    return power_sum(n, 1).scale(Fraction(1, n))


def vandermonde(n: int) -> MultiPoly:
    """Delta = prod_{i<j} (x_i - x_j)."""
    result = MultiPoly.constant(n, 1)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            result *= MultiPoly.variable(n, i) - MultiPoly.variable(n, j)
    return result


def is_symmetric(f: MultiPoly) -> bool:
    """Check permutation symmetry by comparing each exponent orbit against its coefficient."""
    orbits: dict[Exponents, list[GaussianRational]] = {}
    for exps, coeff in f.terms.items():
        orbits.setdefault(tuple(sorted(exps, reverse=True)), []).append(coeff)
    for key, coeffs in orbits.items():
        orbit_size = math.factorial(f.n)
        for multiplicity in Counter(key).values():
            orbit_size //= math.factorial(multiplicity)
        if len(coeffs) != orbit_size or any(c != coeffs[0] for c in coeffs):
            return False
    return True


def normalize_leading(f: MultiPoly) -> MultiPoly:
    """Scale so the graded-lex leading coefficient is 1 (zero stays zero)."""
    return MultiPoly.wrap(f.element.monic())


def proportional(f: MultiPoly, g: MultiPoly) -> bool:
    """Whether ``f = c * g`` for a nonzero scalar ``c`` (two zeros count as proportional)."""
    if f.is_zero or g.is_zero:
        return f.is_zero and g.is_zero
    return normalize_leading(f) == normalize_leading(g)


def substitute(f: MultiPoly, images: Sequence[MultiPoly]) -> MultiPoly:
    """Compose: replace x_k by ``images[k]``.

    Images in the ring of ``f`` go through sympy's ``compose``; images in another variable
    count are expanded term by term in the target ring.

    Args:
        f: Polynomial in ``len(images)`` variables
        images: Polynomials sharing one target variable count

    Returns:
        ``f(images[0], ..., images[n-1])``

    Raises:
        VariableCountMismatchError: If the image count differs from ``f.n`` or the
            images disagree on their variable count

    """
    if len(images) != f.n:
        raise VariableCountMismatchError(f"{len(images)} images for {f.n} variables")
    target = images[0].n if images else 0
    if any(image.n != target for image in images):
        raise VariableCountMismatchError("Substituted images live in different rings")
    if target == f.n:
        gens = f.element.ring.gens
        pairs = [(gen, image.element) for gen, image in zip(gens, images, strict=True)]
        return MultiPoly.wrap(f.element.compose(pairs))
    ring = polynomial_ring(target)
    powers: list[dict[int, PolyElement]] = [{} for _ in images]
    total = ring.zero
    for exps, coeff in f.terms.items():
        term = ring.one.mul_ground(coeff)
        for k, e in enumerate(exps):
            if e:
                if (p := powers[k].get(e)) is None:
                    p = powers[k][e] = images[k].element ** e
                term *= p
        total += term
    return MultiPoly.wrap(total)


def restrict_to_hyperplane(f: MultiPoly) -> MultiPoly:
    """Substitute x_n = -(x_1 + ... + x_(n-1)); the result has n-1 variables.

    Raises:
        ValueError: If ``f`` has fewer than two variables

    """
    if f.n < 2:
        raise ValueError("Hyperplane restriction needs at least two variables")
    m = f.n - 1
    images = [MultiPoly.variable(m, k) for k in range(1, m + 1)]
    images.append(-power_sum(m, 1))
    return substitute(f, images)


def exact_divide(f: MultiPoly, d: MultiPoly) -> MultiPoly:
    """Exact multivariate division ``f / d``.

    A single divisor is a Groebner basis of its ideal, so the graded-lex remainder is zero
    exactly when ``d`` divides ``f``.

    Raises:
        ZeroDivisionError: If ``d`` is zero
        DivisionNotExactError: If ``d`` does not divide ``f``

    """
    _check_same_n(f, d)
    if d.is_zero:
        raise ZeroDivisionError("Division by the zero polynomial")
    try:
        return MultiPoly.wrap(f.element.exquo(d.element))
    except ExactQuotientFailed as e:
        raise DivisionNotExactError(f"Nonzero remainder dividing by {format_poly(d)}") from e


class RadialPoly:
    """Finite sum ``sum_j P_j(x) * rho^(a + j)`` with rho = r^2 (or r~^2 when ``relative``).

    The base exponent is normalized into [0, 1) by moving its integer part into the
    offsets, so two values with the same function always share a base. The relative
    radius is ``r~^2 = r^2 - n X^2``, the squared distance from the center of mass.
    """

    __slots__ = ("base", "n", "parts", "relative")

    n: int
    base: Fraction
    parts: dict[int, MultiPoly]
    relative: bool

    def __init__(
        self,
        n: int,
        base: Fraction | int,
        parts: Mapping[int, MultiPoly] | None = None,
        *,
        relative: bool = False,
    ) -> None:
        """Initialize and normalize.

        Args:
            n: Number of variables
            base: Base exponent ``a``
            parts: Offset to polynomial map
            relative: Use the center-of-mass radius instead of r

        Raises:
            VariableCountMismatchError: If a part has the wrong variable count

        """
        base = Fraction(base)
        shift = math.floor(base)
        self.n = n
        self.base = base - shift
        self.relative = relative
        self.parts = {}
        for offset, poly in (parts or {}).items():
            if poly.n != n:
                raise VariableCountMismatchError(f"Part in {poly.n} variables, expected {n}")
            if not poly.is_zero:
                key = offset + shift
                self.parts[key] = self.parts[key] + poly if key in self.parts else poly
                if self.parts[key].is_zero:
                    del self.parts[key]

    @classmethod
    def from_poly(
        cls, poly: MultiPoly, base: Fraction | int = 0, *, relative: bool = False
    ) -> RadialPoly:
        """Wrap ``poly * rho^base``."""
        return cls(poly.n, base, {0: poly}, relative=relative)

    def radial_square(self) -> MultiPoly:
        """The polynomial rho (r^2 or r~^2)."""
        rho = squared_radius(self.n)
        if self.relative:
            rho -= power_sum(self.n, 1) ** 2 / self.n
        return rho

    def radial_gradient(self, index: int) -> MultiPoly:
        """Half the partial derivative of rho: x_i, or x_i - X for the relative radius."""
        grad = MultiPoly.variable(self.n, index)
        if self.relative:
            grad -= center_of_mass(self.n)
        return grad

    def _like(self, base: Fraction, parts: Mapping[int, MultiPoly]) -> RadialPoly:
        return RadialPoly(self.n, base, parts, relative=self.relative)

    def _aligned(self, other: RadialPoly) -> None:
        if other.n != self.n:
            raise VariableCountMismatchError(
                f"Radial polynomials in {self.n} and {other.n} variables"
            )
        if other.relative != self.relative:
            raise IncompatibleRadialBaseError("Cannot mix full and relative radial variables")
        if other.base != self.base:
            raise IncompatibleRadialBaseError(
                f"Base exponents {self.base} and {other.base} differ by a non-integer"
            )

    @property
    def is_zero(self) -> bool:
        """Whether the represented function vanishes (after folding all offsets together)."""
        return self.consolidated()[1].is_zero

    def consolidated(self) -> tuple[int, MultiPoly]:
        """Fold into ``P * rho^(a + j0)`` with j0 the smallest offset."""
        if not self.parts:
            return 0, MultiPoly.zero(self.n)
        low = min(self.parts)
        rho = self.radial_square()
        total = MultiPoly.zero(self.n)
        for offset, poly in self.parts.items():
            total += poly * rho ** (offset - low) if offset != low else poly
        return low, total

    def map_parts(self, fn: Callable[[MultiPoly], MultiPoly]) -> RadialPoly:
        """Apply a linear map to every part, leaving the radial factors alone."""
        return self._like(self.base, {j: fn(p) for j, p in self.parts.items()})

    def shift(self, power: Fraction | int) -> RadialPoly:
        """Multiply by ``rho^power``."""
        return RadialPoly(self.n, self.base + power, self.parts, relative=self.relative)

    def __add__(self, other: RadialPoly) -> RadialPoly:
        self._aligned(other)
        parts = dict(self.parts)
        for offset, poly in other.parts.items():
            parts[offset] = parts[offset] + poly if offset in parts else poly
        return self._like(self.base, parts)

    def __neg__(self) -> RadialPoly:
        return self.map_parts(lambda p: -p)

    def __sub__(self, other: RadialPoly) -> RadialPoly:
        return self + (-other)

    def scale(self, value: CoefficientLike) -> RadialPoly:
        """Multiply by a scalar."""
        return self.map_parts(lambda p: p.scale(value))

    def __mul__(self, other: RadialPoly | MultiPoly | CoefficientLike) -> RadialPoly:
        if isinstance(other, MultiPoly):
            return self.map_parts(lambda p: p * other)
        if not isinstance(other, RadialPoly):
            return self.scale(other)
        if other.n != self.n or other.relative != self.relative:
            raise IncompatibleRadialBaseError("Radial polynomials live in different spaces")
        parts: dict[int, MultiPoly] = {}
        for j1, p1 in self.parts.items():
            for j2, p2 in other.parts.items():
                product = p1 * p2
                parts[j1 + j2] = parts[j1 + j2] + product if j1 + j2 in parts else product
        return self._like(self.base + other.base, parts)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RadialPoly):
            return NotImplemented
        if (other.n, other.relative) != (self.n, self.relative):
            return False
        if self.base != other.base:
            return self.is_zero and other.is_zero
        return (self - other).is_zero

    __hash__ = None  # type: ignore[assignment]

    def evaluate(self, point: Sequence[CoefficientLike]) -> GaussianRational:
        """Evaluate at a point; needs an integral base exponent and a nonzero radius.

        Raises:
            NotPolynomialError: If the base exponent is fractional

        """
        if self.base:
            raise NotPolynomialError(f"Cannot evaluate rho^{self.base} exactly")
        rho = self.radial_square().evaluate(point)
        total = _ZERO
        for offset, poly in self.parts.items():
            value = poly.evaluate(point)
            if offset > 0:
                value *= rho**offset
            elif offset < 0:
                value /= rho ** (-offset)
            total += value
        return total

    def __repr__(self) -> str:
        parts = ", ".join(f"{j}: {format_poly(p)!r}" for j, p in sorted(self.parts.items()))
        return (
            f"RadialPoly(n={self.n}, base={self.base}, relative={self.relative}, "
            f"parts={{{parts}}})"
        )


class ArithOp(StrEnum):
    """Binary operations accepted by ``arith``."""

    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    SCALE = "scale"


@overload
def arith(f: MultiPoly, g: MultiPoly | CoefficientLike, op: ArithOp) -> MultiPoly: ...
@overload
def arith(f: RadialPoly, g: RadialPoly | CoefficientLike, op: ArithOp) -> RadialPoly: ...
def arith(
    f: MultiPoly | RadialPoly, g: MultiPoly | RadialPoly | CoefficientLike, op: ArithOp
) -> MultiPoly | RadialPoly:
    """Dispatch a ring operation on polynomials of one kind.

    Raises:
        TypeError: If the operands do not fit the operation

    """
    match op:
        case ArithOp.SCALE:
            if isinstance(g, MultiPoly | RadialPoly):
                raise TypeError("scale takes a scalar right operand")
            return f.scale(g)
        case ArithOp.ADD:
            return f + g  # type: ignore[operator]
        case ArithOp.SUB:
            return f - g  # type: ignore[operator]
        case ArithOp.MUL:
            return f * g  # type: ignore[operator]


@overload
def apply_transposition(f: MultiPoly, i: int, j: int) -> MultiPoly: ...
@overload
def apply_transposition(f: RadialPoly, i: int, j: int) -> RadialPoly: ...
def apply_transposition(f: MultiPoly | RadialPoly, i: int, j: int) -> MultiPoly | RadialPoly:
    """Swap x_i and x_j (1-based); radial factors are symmetric and stay put.

    Raises:
        IndexError: If an index is out of range or ``i == j``

    """
    _check_index(f.n, i)
    _check_index(f.n, j)
    if i == j:
        raise IndexError("A transposition needs two distinct indices")
    if isinstance(f, RadialPoly):
        return f.map_parts(lambda p: apply_transposition(p, i, j))
    a, b = i - 1, j - 1
    acc: dict[Exponents, GaussianRational] = {}
    for exps, coeff in f.terms.items():
        swapped = list(exps)
        swapped[a], swapped[b] = exps[b], exps[a]
        acc[tuple(swapped)] = coeff
    return MultiPoly.wrap(f.element.ring.from_dict(acc))


def radial_collect(f: RadialPoly) -> MultiPoly:
    """Expand a radial polynomial whose radial exponents are all nonnegative integers.

    Offsets below zero are accepted when the folded polynomial is divisible by the
    matching power of rho.

    Raises:
        NotPolynomialError: If an exponent stays fractional or negative

    """
    low, total = f.consolidated()
    if total.is_zero:
        return total
    if f.base:
        raise NotPolynomialError(f"Radial exponent {f.base + low} is not an integer")
    rho = f.radial_square()
    if low >= 0:
        return total * rho**low
    try:
        return exact_divide(total, rho ** (-low))
    except DivisionNotExactError as e:
        raise NotPolynomialError(f"Negative radial exponent {low} does not cancel") from e


def _format_monomial(exps: Exponents) -> str:
    factors = [f"x{k}" if e == 1 else f"x{k}^{e}" for k, e in enumerate(exps, start=1) if e]
    return "*".join(factors)


def _is_negative(coeff: GaussianRational) -> bool:
    real, imag = _fraction(coeff.x), _fraction(coeff.y)
    return real < 0 or (real == 0 and imag < 0)


def format_poly(f: MultiPoly) -> str:
    """Render in the text grammar, e.g. ``3/2*x1^2*x2 - 1*x3^3``; zero is ``0``."""
    if f.is_zero:
        return "0"
    pieces: list[str] = []
    for position, (exps, coeff) in enumerate(f.sorted_terms()):
        negative = _is_negative(coeff)
        shown = -coeff if negative else coeff
        body = format_coefficient(shown)
        if monomial := _format_monomial(exps):
            body = f"{body}*{monomial}"
        if position == 0:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)


def parse_poly(text: str, n: int) -> MultiPoly:
    """Parse the text grammar produced by ``format_poly``.

    Args:
        text: Polynomial text
        n: Number of variables of the result

    Returns:
        The parsed polynomial

    Raises:
        ValueError: If the text is malformed or references a variable beyond x_n

    """
    text = text.strip()
    if text == "0":
        return MultiPoly.zero(n)
    tokens = _TERM_SPLIT_RE.split(text)
    signs = ["+", *tokens[1::2]]
    acc: dict[Exponents, GaussianRational] = {}
    for sign, term in zip(signs, tokens[0::2], strict=True):
        negative = sign == "-"
        head, *factors = term.split("*")
        coeff = parse_coefficient(head)
        exps = [0] * n
        for factor in factors:
            if not (match := _FACTOR_RE.fullmatch(factor)):
                raise ValueError(f"Malformed factor {factor!r} in {term!r}")
            index = int(match.group(1))
            if not 1 <= index <= n:
                raise ValueError(f"Variable x{index} outside x1..x{n}")
            exps[index - 1] += int(match.group(2) or 1)
        accumulate_term(acc, tuple(exps), -coeff if negative else coeff)
    return MultiPoly.wrap(polynomial_ring(n).from_dict(acc))


def random_polynomial(
    n: int,
    max_degree: int,
    rng: random.Random,
    *,
    terms: int = 6,
    homogeneous: bool = False,
    max_numerator: int = 9,
) -> MultiPoly:
    """Random polynomial with small rational coefficients, for randomized identity checks.

    Args:
        n: Number of variables
        max_degree: Largest total degree (the exact degree when ``homogeneous``)
        rng: Seeded random source
        terms: Number of monomials drawn (duplicates merge)
        homogeneous: Draw every monomial at degree ``max_degree``
        max_numerator: Bound on numerator and denominator magnitudes

    Returns:
        The random polynomial (possibly with fewer than ``terms`` terms)

    """
    acc: dict[Exponents, GaussianRational] = {}
    for _ in range(terms):
        degree = max_degree if homogeneous else rng.randint(0, max_degree)
        exps = [0] * n
        for _ in range(degree):
            exps[rng.randrange(n)] += 1
        value = Fraction(rng.randint(-max_numerator, max_numerator), rng.randint(1, max_numerator))
        accumulate_term(acc, tuple(exps), coefficient(value))
    return MultiPoly.wrap(polynomial_ring(n).from_dict(acc))


def iter_points(n: int, count: int, rng: random.Random) -> Iterator[list[Fraction]]:
    """Yield random rational points for evaluation cross-checks."""
    for _ in range(count):
        yield [Fraction(rng.randint(-12, 12), rng.randint(1, 7)) for _ in range(n)]


def total_of(polys: Iterable[MultiPoly], n: int) -> MultiPoly:
    """Sum of polynomials in ``n`` variables."""
    total = MultiPoly.zero(n)
    for poly in polys:
        total += poly
    return total
