"""Coxeter root systems A, B, D and I2(p) with their Dunkl operators and harmonics.

Rational root systems act by the orthogonal reflections
``s_a x = x - 2 (a.x)/(a.a) a``. Dihedral systems are handled in complex coordinates
z = x + iy, w = x - iy: the positive roots are the normals of the mirrors at angles
pi j/p, the reflection about mirror j is ``f(z, w) -> f(zeta^j w, zeta^-j z)`` with
zeta = exp(2 pi i/p), and every orbit sum of powers of zeta that shows up is rational.

Type A_(n-1) is realized in R^n with invariants (r^2, p_1, p_3, ..., p_n), so its
Coxeter harmonics coincide with the type-A ones.
"""

from __future__ import annotations

import logging
import math
import random
import re
from collections.abc import Mapping
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from functools import cache
from typing import TypeAlias, overload

from .dunkl import apply_dunkl_polynomial, lift_radial, reduced_seed_derivative
from .errors import (
    NotPolynomialError,
    NotSymmetricError,
    UnsupportedRootSystemError,
    VariantConstraintError,
)
from .linalg import polynomial_rank
from .polycore import (
    I_UNIT,
    Exponents,
    GaussianRational,
    MultiPoly,
    RadialPoly,
    accumulate_term,
    coefficient,
    exact_divide,
    format_poly,
    parse_rational,
    power_sum,
    radial_collect,
    random_polynomial,
    squared_radius,
    substitute,
)
from .serialization import Rational, Record
from .spectra import MultiIndex

__all__ = [
    "CouplingLike",
    "CoxeterSpectrumEntry",
    "CoxeterSpectrumRow",
    "HamiltonianCheckReport",
    "Root",
    "RootSystem",
    "RootSystemFamily",
    "RootSystemRecord",
    "a2_plane_chart",
    "build_root_system",
    "coxeter_deformed_harmonic",
    "coxeter_dunkl_apply",
    "coxeter_intertwiner_apply",
    "coxeter_intertwining_residual",
    "coxeter_laplacian",
    "coxeter_spectrum",
    "coxeter_spectrum_table",
    "enumerate_coxeter_levels",
    "from_type_a_index",
    "gauged_hamiltonian_check",
    "harmonic_basis_rank",
    "harmonic_count",
    "i2_to_a2_chart",
    "is_invariant",
    "parse_root_system",
    "reflect",
    "reflection_sum",
    "root_system_record",
]

logger = logging.getLogger(__name__)

Vector: TypeAlias = tuple[Fraction, ...]
CouplingLike: TypeAlias = Mapping[str, Fraction | int | str] | Fraction | int | str

Weights: TypeAlias = Mapping[str, Fraction]

_SPEC_RE = re.compile(r"^\s*([A-Za-z])\s*(\d+)\s*(?:\(\s*(\d+)\s*\))?\s*$")


class RootSystemFamily(StrEnum):
    """Supported Coxeter families."""

    A = "A"
    B = "B"
    D = "D"
    I2 = "I2"


@dataclass(frozen=True)
class Root:
    """A positive root with the name of its W-orbit."""

    vector: Vector
    orbit: str


@dataclass(frozen=True)
class RootSystem:
    """Positive roots, multiplicity orbits and basic invariants of a Coxeter system.

    ``roots`` is empty for dihedral systems, whose roots are irrational and are handled
    through complex coordinates instead.
    """

    family: RootSystemFamily
    rank: int
    dimension: int
    roots: tuple[Root, ...]
    orbits: tuple[str, ...]
    degrees: tuple[int, ...]
    invariants: tuple[MultiPoly, ...]
    p: int | None = None

    @property
    def label(self) -> str:
        """Text tag such as ``B2`` or ``I2(5)``."""
        return f"I2({self.p})" if self.is_dihedral else f"{self.family}{self.rank}"

    @property
    def is_dihedral(self) -> bool:
        """Whether roots live in complex coordinates."""
        return self.family is RootSystemFamily.I2

    def orbit_sizes(self) -> dict[str, int]:
        """Number of positive roots in every orbit."""
        if self.is_dihedral and self.p is not None:
            if self.p % 2:
                return {"roots": self.p}
            return {"even": self.p // 2, "odd": self.p // 2}
        sizes = dict.fromkeys(self.orbits, 0)
        for root in self.roots:
            sizes[root.orbit] += 1
        return sizes

    def couplings(self, g: CouplingLike) -> dict[str, Fraction]:
        """Multiplicity per orbit from a scalar or an orbit map.

        Raises:
            ValueError: If an orbit is missing or unknown, or a coupling is negative

        """
        if isinstance(g, Mapping):
            unknown = set(g) - set(self.orbits)
            missing = set(self.orbits) - set(g)
            if unknown or missing:
                raise ValueError(
                    f"{self.label} has orbits {', '.join(self.orbits)}; got {', '.join(sorted(g))}"
                )
            weights = {orbit: parse_rational(g[orbit]) for orbit in self.orbits}
        else:
            value = parse_rational(g)
            weights = dict.fromkeys(self.orbits, value)
        if any(v < 0 for v in weights.values()):
            raise ValueError(f"Multiplicities must be nonnegative, got {weights}")
        return weights

    def coupling_total(self, g: CouplingLike) -> Fraction:
        """S = sum over positive roots of g_alpha."""
        weights = self.couplings(g)
        sizes = self.orbit_sizes()
        return sum((size * weights[orbit] for orbit, size in sizes.items()), Fraction(0))


class RootSystemRecord(Record):
    """Serialized root system together with its multiplicities."""

    tag: str
    family: RootSystemFamily
    rank: int
    p: int | None
    dimension: int
    roots: list[list[Rational]]
    root_orbits: list[str]
    root_angles: list[Rational] | None
    multiplicities: dict[str, Rational]
    coupling_total: Rational
    degrees: list[int]
    invariants: list[str]


class CoxeterSpectrumEntry(Record):
    """Energy (units of omega) and angular eigenvalue of one Coxeter label."""

    root_system: str
    k: list[int]
    level: int
    energy: Rational
    q: Rational
    epsilon: Rational


class CoxeterSpectrumRow(Record):
    """All angular states of one Coxeter level."""

    level: int
    q: Rational
    epsilon: Rational
    degeneracy: int
    states: list[list[int]]


class HamiltonianCheckReport(Record):
    """Outcome of the exchange-operator identities on concrete polynomials."""

    root_system: str
    omega: Rational
    identity: bool
    creators_commute: bool
    ladder: bool

    @property
    def passed(self) -> bool:
        """Whether every identity held."""
        return self.identity and self.creators_commute and self.ladder


def _unit(n: int, i: int, value: int = 1) -> list[Fraction]:
    vector = [Fraction(0)] * n
    vector[i] = Fraction(value)
    return vector


def _pair_roots(n: int, sign: int, orbit: str) -> list[Root]:
    roots = []
    for i in range(n):
        for j in range(i + 1, n):
            vector = _unit(n, i)
            vector[j] = Fraction(sign)
            roots.append(Root(tuple(vector), orbit))
    return roots


def _even_power_sums(n: int, count: int) -> list[MultiPoly]:
    return [power_sum(n, 2 * k) for k in range(1, count + 1)]


def build_root_system(
    family: RootSystemFamily | str, rank: int, p: int | None = None
) -> RootSystem:
    """Standard root data for A_rank, B_rank, D_rank or I2(p).

    Args:
        family: Family tag
        rank: Rank (must be 2 for I2)
        p: Dihedral order (I2 only)

    Returns:
        The root system

    Raises:
        UnsupportedRootSystemError: If the family is not A, B, D or I2
        ValueError: If rank or p is out of range

    """
    try:
        family = RootSystemFamily(family)
    except ValueError as e:
        raise UnsupportedRootSystemError(f"Unsupported root system family {family!r}") from e
    match family:
        case RootSystemFamily.A:
            if rank < 1:
                raise ValueError(f"A_n needs rank >= 1, got {rank}")
            n = rank + 1
            invariants = [squared_radius(n), power_sum(n, 1)]
            invariants += [power_sum(n, ell) for ell in range(3, n + 1)]
            return RootSystem(
                family=family,
                rank=rank,
                dimension=n,
                roots=tuple(_pair_roots(n, -1, "roots")),
                orbits=("roots",),
                degrees=(2, 1, *range(3, n + 1)),
                invariants=tuple(invariants),
            )
        case RootSystemFamily.B:
            if rank < 1:
                raise ValueError(f"B_n needs rank >= 1, got {rank}")
            short = [Root(tuple(_unit(rank, i)), "short") for i in range(rank)]
            long = _pair_roots(rank, -1, "long") + _pair_roots(rank, 1, "long")
            return RootSystem(
                family=family,
                rank=rank,
                dimension=rank,
                roots=tuple(short + long),
                orbits=("short", "long") if rank > 1 else ("short",),
                degrees=tuple(2 * k for k in range(1, rank + 1)),
                invariants=tuple(_even_power_sums(rank, rank)),
            )
        case RootSystemFamily.D:
            if rank < 2:
                raise ValueError(f"D_n needs rank >= 2, got {rank}")
            split = rank == 2
            minus = _pair_roots(rank, -1, "minus" if split else "roots")
            plus = _pair_roots(rank, 1, "plus" if split else "roots")
            product = MultiPoly.monomial((1,) * rank)
            return RootSystem(
                family=family,
                rank=rank,
                dimension=rank,
                roots=tuple(minus + plus),
                orbits=("minus", "plus") if split else ("roots",),
                degrees=(*(2 * k for k in range(1, rank)), rank),
                invariants=(*_even_power_sums(rank, rank - 1), product),
            )
        case RootSystemFamily.I2:
            if rank != 2:
                raise ValueError(f"Dihedral systems have rank 2, got {rank}")
            if p is None or p < 3:
                raise ValueError(f"I2(p) needs p >= 3, got {p}")
            return RootSystem(
                family=family,
                rank=2,
                dimension=2,
                roots=(),
                orbits=("roots",) if p % 2 else ("even", "odd"),
                degrees=(2, p),
                invariants=(squared_radius(2), _dihedral_invariant(p)),
                p=p,
            )


def parse_root_system(text: str) -> RootSystem:
    """Parse ``A3``, ``B2``, ``D4`` or ``I2(5)``.

    Raises:
        UnsupportedRootSystemError: For other families (E, F, G, H) or malformed tags

    """
    match = _SPEC_RE.match(text)
    if match is None:
        raise UnsupportedRootSystemError(f"Not a root-system tag: {text!r}")
    letter, number, order = match.group(1).upper(), int(match.group(2)), match.group(3)
    if letter == "I":
        if number != 2 or order is None:
            raise UnsupportedRootSystemError(f"Dihedral systems are written I2(p), got {text!r}")
        return build_root_system(RootSystemFamily.I2, 2, int(order))
    if order is not None:
        raise UnsupportedRootSystemError(f"Only I2 takes an order, got {text!r}")
    return build_root_system(letter, number)


def _dihedral_invariant(p: int) -> MultiPoly:
    """Re (x + iy)^p = sum_k C(p, 2k) (-1)^k x^(p-2k) y^(2k)."""
    terms = {(p - 2 * k, 2 * k): (-1) ** k * math.comb(p, 2 * k) for k in range(p // 2 + 1)}
    return MultiPoly(2, terms)


def _dot(a: Vector, b: Vector) -> Fraction:
    return sum((x * y for x, y in zip(a, b, strict=True)), Fraction(0))


@cache
def _linear_form(vector: Vector) -> MultiPoly:
    n = len(vector)
    terms = {tuple(1 if k == i else 0 for k in range(n)): c for i, c in enumerate(vector) if c}
    return MultiPoly(n, terms)


@cache
def _reflection_images(vector: Vector) -> tuple[MultiPoly, ...]:
    form = _linear_form(vector)
    norm = _dot(vector, vector)
    n = len(vector)
    return tuple(
        MultiPoly.variable(n, k + 1) - form.scale(2 * c / norm) for k, c in enumerate(vector)
    )


def reflect(root: Root, f: MultiPoly) -> MultiPoly:
    """s_alpha f for a rational root."""
    return substitute(f, _reflection_images(root.vector))


# Dihedral systems in complex coordinates (variable 1 is z, variable 2 is w = conj z).


def _to_complex(f: MultiPoly) -> MultiPoly:
    z, w = MultiPoly.variable(2, 1), MultiPoly.variable(2, 2)
    return substitute(f, [(z + w).scale(Fraction(1, 2)), (w - z).scale(I_UNIT / 2)])


def _from_complex(f: MultiPoly) -> MultiPoly:
    x, y = MultiPoly.variable(2, 1), MultiPoly.variable(2, 2)
    iy = y.scale(I_UNIT)
    return substitute(f, [x + iy, x - iy])


def _orbit_character(rs: RootSystem, weights: Weights, s: int) -> Fraction:
    """sum_j g_j zeta^(j s) over the p mirrors."""
    p = rs.p or 0
    if p % 2:
        return p * weights["roots"] if s % p == 0 else Fraction(0)
    half = p // 2
    if s % half:
        return Fraction(0)
    sign = 1 if (s // half) % 2 == 0 else -1
    return half * (weights["even"] + sign * weights["odd"])


def _exchange_z(rs: RootSystem, weights: Weights, f: MultiPoly) -> MultiPoly:
    """sum_j g_j (1 - s_j) f / (z - zeta^j w)."""
    acc: dict[Exponents, GaussianRational] = {}
    for (a, b), coeff in f.terms.items():
        if a > b:
            for t in range(a - b):
                if c := _orbit_character(rs, weights, t):
                    accumulate_term(acc, (a - 1 - t, b + t), coeff * coefficient(c))
        elif a < b:
            for t in range(b - a):
                if c := _orbit_character(rs, weights, a + t - b):
                    accumulate_term(acc, (b - 1 - t, a + t), -coeff * coefficient(c))
    return MultiPoly(2, acc)


def _exchange_w(rs: RootSystem, weights: Weights, f: MultiPoly) -> MultiPoly:
    """sum_j g_j (1 - s_j) f / (w - zeta^-j z)."""
    acc: dict[Exponents, GaussianRational] = {}
    for (a, b), coeff in f.terms.items():
        if b > a:
            for t in range(b - a):
                if c := _orbit_character(rs, weights, -t):
                    accumulate_term(acc, (a + t, b - 1 - t), coeff * coefficient(c))
        elif b < a:
            for t in range(a - b):
                if c := _orbit_character(rs, weights, a - b - t):
                    accumulate_term(acc, (b + t, a - 1 - t), -coeff * coefficient(c))
    return MultiPoly(2, acc)


def _dihedral_dunkl(rs: RootSystem, weights: Weights, i: int, f: MultiPoly) -> MultiPoly:
    complex_f = _to_complex(f)
    along_z = _exchange_z(rs, weights, complex_f)
    along_w = _exchange_w(rs, weights, complex_f)
    exchange = along_z + along_w if i == 1 else (along_z - along_w).scale(I_UNIT)
    return f.derivative(i) + _from_complex(exchange)


def _rational_dunkl(rs: RootSystem, weights: Weights, i: int, f: MultiPoly) -> MultiPoly:
    result = f.derivative(i)
    for root in rs.roots:
        component = root.vector[i - 1]
        if component and (g := weights[root.orbit]):
            difference = f - reflect(root, f)
            if not difference.is_zero:
                result += exact_divide(difference, _linear_form(root.vector)).scale(g * component)
    return result


def _dunkl_poly(rs: RootSystem, weights: Weights, i: int, f: MultiPoly) -> MultiPoly:
    if rs.is_dihedral:
        return _dihedral_dunkl(rs, weights, i, f)
    return _rational_dunkl(rs, weights, i, f)


@overload
def coxeter_dunkl_apply(rs: RootSystem, g: CouplingLike, i: int, f: MultiPoly) -> MultiPoly: ...
@overload
def coxeter_dunkl_apply(rs: RootSystem, g: CouplingLike, i: int, f: RadialPoly) -> RadialPoly: ...
def coxeter_dunkl_apply(
    rs: RootSystem, g: CouplingLike, i: int, f: MultiPoly | RadialPoly
) -> MultiPoly | RadialPoly:
    """D_i = d_i + sum_{a>0} g_a a_i/(a.x) (1 - s_a), on polynomials or radial polynomials.

    Args:
        rs: Root system
        g: Scalar multiplicity or one per orbit
        i: Coordinate index (1-based)
        f: Operand in ``rs.dimension`` variables

    Returns:
        D_i f

    Raises:
        IndexError: If i is outside 1..dimension
        DivisionNotExactError: If an exchange term fails to divide (internal error)

    """
    if not 1 <= i <= rs.dimension:
        raise IndexError(f"Dunkl index {i} out of range 1..{rs.dimension}")
    weights = rs.couplings(g)
    if isinstance(f, MultiPoly):
        return _dunkl_poly(rs, weights, i, f)
    return lift_radial(f, i, lambda p: _dunkl_poly(rs, weights, i, p))


def is_invariant(rs: RootSystem, f: MultiPoly) -> bool:
    """Whether every reflection of ``rs`` fixes ``f``."""
    if rs.is_dihedral:
        p = rs.p or 0
        complex_f = _to_complex(f)
        return all(
            (a - b) % p == 0 and complex_f.terms.get((b, a)) == coeff
            for (a, b), coeff in complex_f.terms.items()
        )
    return all(reflect(root, f) == f for root in rs.roots)


def reflection_sum(rs: RootSystem, g: CouplingLike, f: MultiPoly) -> MultiPoly:
    """sum_{a>0} g_a s_a f."""
    weights = rs.couplings(g)
    if rs.is_dihedral:
        acc: dict[Exponents, GaussianRational] = {}
        for (a, b), coeff in _to_complex(f).terms.items():
            if c := _orbit_character(rs, weights, a - b):
                accumulate_term(acc, (b, a), coeff * coefficient(c))
        return _from_complex(MultiPoly(2, acc))
    total = MultiPoly.zero(f.n)
    for root in rs.roots:
        if g_root := weights[root.orbit]:
            total += reflect(root, f).scale(g_root)
    return total


def _require_invariant(rs: RootSystem, f: MultiPoly) -> None:
    if not is_invariant(rs, f):
        raise NotSymmetricError(f"Expected a {rs.label}-invariant polynomial")


def coxeter_laplacian(rs: RootSystem, g: CouplingLike, f: MultiPoly) -> MultiPoly:
    """Gauged operator L(g) = sum d_i^2 + sum_{a>0} 2 g_a (a.d)/(a.x), without Dunkl operators.

    Raises:
        NotSymmetricError: If ``f`` is not W-invariant

    """
    _require_invariant(rs, f)
    weights = rs.couplings(g)
    if rs.is_dihedral:
        return _dihedral_laplacian(rs, weights, f)
    result = f.laplacian()
    gradients = [f.derivative(i) for i in range(1, f.n + 1)]
    for root in rs.roots:
        if not (g_root := weights[root.orbit]):
            continue
        directional = MultiPoly.zero(f.n)
        for component, gradient in zip(root.vector, gradients, strict=True):
            if component:
                directional += gradient.scale(component)
        if not directional.is_zero:
            result += exact_divide(directional, _linear_form(root.vector)).scale(2 * g_root)
    return result


def _dihedral_laplacian(rs: RootSystem, weights: Weights, f: MultiPoly) -> MultiPoly:
    """4 d_z d_w f + 4 sum_t z^(p-1-t) w^t [C(t) d_w f - C(t+1) d_z f] / (z^p - w^p)."""
    p = rs.p or 0
    complex_f = _to_complex(f)
    along_z, along_w = complex_f.derivative(1), complex_f.derivative(2)
    numerator = MultiPoly.zero(2)
    for t in range(p):
        monomial = MultiPoly.monomial((p - 1 - t, t))
        current, following = _orbit_character(rs, weights, t), _orbit_character(rs, weights, t + 1)
        numerator += monomial * (along_w.scale(current) - along_z.scale(following))
    result = along_z.derivative(2)
    if not numerator.is_zero:
        mirrors = MultiPoly.monomial((p, 0)) - MultiPoly.monomial((0, p))
        result += exact_divide(numerator, mirrors)
    return _from_complex(result.scale(4))


def _weighted_fill(degrees: tuple[int, ...], position: int, remaining: int) -> list[Exponents]:
    if position == len(degrees):
        return [()] if remaining == 0 else []
    found = []
    for count in range(remaining // degrees[position], -1, -1):
        for rest in _weighted_fill(degrees, position + 1, remaining - count * degrees[position]):
            found.append((count, *rest))
    return found


def enumerate_coxeter_levels(rs: RootSystem, m: int) -> list[MultiIndex]:
    """All k with k_1 = 0 and sum_{i>=2} d_i k_i = m, in descending lex order."""
    if m < 0:
        return []
    return [MultiIndex((0, *tail)) for tail in _weighted_fill(rs.degrees[1:], 0, m)]


def harmonic_count(rs: RootSystem, m: int) -> int:
    """Dimension of the W-invariant harmonics of degree m."""
    return len(enumerate_coxeter_levels(rs, m))


def _check_label(rs: RootSystem, k: MultiIndex) -> None:
    if k.n != len(rs.degrees):
        raise VariantConstraintError(f"{rs.label} labels have {len(rs.degrees)} entries, got {k.n}")


def coxeter_spectrum(
    rs: RootSystem, g: CouplingLike, omega: Fraction | None, k: MultiIndex
) -> CoxeterSpectrumEntry:
    """E = omega (S + n/2 + sum d_i k_i) and eps = q(q+n-2)/2 with q = S + sum_{i>=2} d_i k_i.

    The energy is returned in units of omega; ``omega`` is validated only.

    Raises:
        VariantConstraintError: If k has the wrong length
        ValueError: If omega <= 0

    """
    _check_label(rs, k)
    if omega is not None and omega <= 0:
        raise ValueError(f"Frequency must be positive, got {omega}")
    total = rs.coupling_total(g)
    level = k.weighted_level(rs.degrees) - rs.degrees[0] * k[1]
    q = total + level
    return CoxeterSpectrumEntry(
        root_system=rs.label,
        k=list(k.k),
        level=level,
        energy=total + Fraction(rs.dimension, 2) + k.weighted_level(rs.degrees),
        q=q,
        epsilon=q * (q + rs.dimension - 2) / 2,
    )


def coxeter_spectrum_table(
    rs: RootSystem, g: CouplingLike, max_level: int
) -> list[CoxeterSpectrumRow]:
    """Angular levels 0..max_level with their eigenvalues and harmonic counts."""
    total = rs.coupling_total(g)
    rows = []
    for m in range(max_level + 1):
        q = total + m
        states = enumerate_coxeter_levels(rs, m)
        rows.append(
            CoxeterSpectrumRow(
                level=m,
                q=q,
                epsilon=q * (q + rs.dimension - 2) / 2,
                degeneracy=len(states),
                states=[list(k.k) for k in states],
            )
        )
    return rows


def coxeter_deformed_harmonic(rs: RootSystem, g: CouplingLike, k: MultiIndex) -> MultiPoly:
    """h_k = r^(2(q-1)+n) sigma_2(D)^k2 ... sigma_n(D)^kn r^(2(m-q+1)-n).

    The first step on the seed drops its factor 2a, as for type A.

    Raises:
        VariantConstraintError: If k_1 is nonzero or k has the wrong length
        NotPolynomialError: If the radial powers fail to resolve (internal inconsistency)

    """
    _check_label(rs, k)
    if k[1]:
        raise VariantConstraintError(f"Coxeter harmonics have k_1 = 0, got k = ({k})")
    weights = rs.couplings(g)
    n = rs.dimension
    seed_exponent = Fraction(2 - n, 2) - rs.coupling_total(weights)
    seed = RadialPoly.from_poly(MultiPoly.constant(n, 1), seed_exponent)
    state = seed

    def dunkl(i: int, f: RadialPoly) -> RadialPoly:
        if f is seed:
            return reduced_seed_derivative(seed, i)
        return lift_radial(f, i, lambda p: _dunkl_poly(rs, weights, i, p))

    for index in range(2, k.n + 1):
        for _ in range(k[index]):
            state = apply_dunkl_polynomial(rs.invariants[index - 1], state, dunkl)
    m = k.weighted_level(rs.degrees)
    try:
        poly = radial_collect(state.shift(-seed_exponent + m))
    except NotPolynomialError:
        logger.critical("radial powers did not resolve for %s k=(%s)", rs.label, k)
        raise
    logger.debug("%s harmonic k=(%s) has %d terms", rs.label, k, len(poly.terms))
    return poly


def harmonic_basis_rank(rs: RootSystem, g: CouplingLike, m: int) -> int:
    """Exact rank of all Coxeter harmonics of level m."""
    harmonics = [coxeter_deformed_harmonic(rs, g, k) for k in enumerate_coxeter_levels(rs, m)]
    return polynomial_rank(harmonics)


def from_type_a_index(k: MultiIndex) -> MultiIndex:
    """Type-A label (k_1, 0, k_3, ..., k_n) as a label of A_(n-1) with degrees (2, 1, 3, ..., n)."""
    if k[2]:
        raise VariantConstraintError(f"Angular labels have k_2 = 0, got k = ({k})")
    return MultiIndex((0, k[1], *k.k[2:]))


def _creator(rs: RootSystem, weights: Weights, omega: Fraction, i: int, f: MultiPoly) -> MultiPoly:
    """a_i^+ f = -i D_i f + i omega x_i f."""
    x_i = MultiPoly.variable(f.n, i)
    return (_dunkl_poly(rs, weights, i, f) - (x_i * f).scale(omega)).scale(-I_UNIT)


def _annihilator(
    rs: RootSystem, weights: Weights, omega: Fraction, i: int, f: MultiPoly
) -> MultiPoly:
    """a_i f = -i D_i f - i omega x_i f."""
    x_i = MultiPoly.variable(f.n, i)
    return (_dunkl_poly(rs, weights, i, f) + (x_i * f).scale(omega)).scale(-I_UNIT)


def _exchange_hamiltonian(
    rs: RootSystem, weights: Weights, omega: Fraction, f: MultiPoly
) -> MultiPoly:
    """sum_i a_i^+ a_i f + 2 omega sum g_a s_a f."""
    total = reflection_sum(rs, weights, f).scale(2 * omega)
    for i in range(1, rs.dimension + 1):
        total += _creator(rs, weights, omega, i, _annihilator(rs, weights, omega, i, f))
    return total


def gauged_hamiltonian_check(
    rs: RootSystem,
    g: CouplingLike,
    omega: Fraction,
    f: MultiPoly,
    *,
    probes: list[MultiPoly] | None = None,
    seed: int = 0,
) -> HamiltonianCheckReport:
    """Check the exchange-operator identities on concrete polynomials.

    On the W-invariant ``f``:
    sum a_i^+ a_i f + 2 omega sum g_a s_a f = -L f + omega^2 r^2 f - omega n f.
    On every probe h: [a_i^+, a_j^+] h = 0 and [H, a_j^+] h = 2 omega a_j^+ h.

    Args:
        rs: Root system
        g: Multiplicities
        omega: Frequency
        f: W-invariant polynomial
        probes: Arbitrary polynomials for the commutators (a random one when omitted)
        seed: Seed of the random probe

    Returns:
        Which identities held

    Raises:
        NotSymmetricError: If ``f`` is not W-invariant

    """
    weights = rs.couplings(g)
    n = rs.dimension
    left = _exchange_hamiltonian(rs, weights, omega, f)
    right = (squared_radius(n) * f).scale(omega * omega) - f.scale(omega * n)
    right -= coxeter_laplacian(rs, weights, f)
    identity = left == right
    if probes is None:
        probes = [random_polynomial(n, 3, random.Random(seed), terms=4)]
    commute = ladder = True
    for probe in probes:
        raised = [_creator(rs, weights, omega, i, probe) for i in range(1, n + 1)]
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                ij = _creator(rs, weights, omega, i, raised[j - 1])
                ji = _creator(rs, weights, omega, j, raised[i - 1])
                commute = commute and ij == ji
        after = _exchange_hamiltonian(rs, weights, omega, probe)
        for j in range(1, n + 1):
            commutator = _exchange_hamiltonian(rs, weights, omega, raised[j - 1])
            commutator -= _creator(rs, weights, omega, j, after)
            ladder = ladder and commutator == raised[j - 1].scale(2 * omega)
    if not (identity and commute and ladder):
        logger.warning(
            "exchange identities failed on %s: %s %s %s", rs.label, identity, commute, ladder
        )
    return HamiltonianCheckReport(
        root_system=rs.label,
        omega=omega,
        identity=identity,
        creators_commute=commute,
        ladder=ladder,
    )


def _orbit_roots(rs: RootSystem, orbit: str) -> list[Root]:
    if rs.is_dihedral:
        raise UnsupportedRootSystemError("The orbit intertwiner needs rational roots")
    if orbit not in rs.orbits:
        raise ValueError(f"{rs.label} has no orbit {orbit!r}")
    return [root for root in rs.roots if root.orbit == orbit]


def coxeter_intertwiner_apply(
    rs: RootSystem, g: CouplingLike, orbit: str, f: MultiPoly
) -> MultiPoly:
    """K = prod_{a in S} (a.D) prod_{a in S} (a.x) for S one full orbit, on W-invariant f.

    Raises:
        UnsupportedRootSystemError: For dihedral systems
        NotSymmetricError: If ``f`` is not W-invariant

    """
    roots = _orbit_roots(rs, orbit)
    _require_invariant(rs, f)
    weights = rs.couplings(g)
    result = f
    for root in roots:
        result *= _linear_form(root.vector)
    for root in roots:
        directional = MultiPoly.zero(rs.dimension)
        for i, component in enumerate(root.vector, start=1):
            if component:
                directional += _dunkl_poly(rs, weights, i, result).scale(component)
        result = directional
    return result


def coxeter_intertwining_residual(
    rs: RootSystem, g: CouplingLike, orbit: str, f: MultiPoly
) -> MultiPoly:
    """L(g) K f - K L(g + 1_S) f; identically zero."""
    weights = rs.couplings(g)
    shifted = {name: value + (1 if name == orbit else 0) for name, value in weights.items()}
    forward = coxeter_laplacian(rs, weights, coxeter_intertwiner_apply(rs, weights, orbit, f))
    backward = coxeter_intertwiner_apply(rs, weights, orbit, coxeter_laplacian(rs, shifted, f))
    return forward - backward


def root_system_record(rs: RootSystem, g: CouplingLike) -> RootSystemRecord:
    """JSON-ready description of a root system with its multiplicities."""
    weights = rs.couplings(g)
    angles = None
    if rs.is_dihedral and rs.p is not None:
        angles = [Fraction(1, 2) + Fraction(j, rs.p) for j in range(rs.p)]
    return RootSystemRecord(
        tag=rs.label,
        family=rs.family,
        rank=rs.rank,
        p=rs.p,
        dimension=rs.dimension,
        roots=[list(root.vector) for root in rs.roots],
        root_orbits=[root.orbit for root in rs.roots],
        root_angles=angles,
        multiplicities=weights,
        coupling_total=rs.coupling_total(weights),
        degrees=list(rs.degrees),
        invariants=[format_poly(sigma) for sigma in rs.invariants],
    )


def i2_to_a2_chart(f: MultiPoly) -> MultiPoly:
    """Rewrite an I2(3)-invariant polynomial in the A2 plane coordinates (s, t).

    The isometry is x = sqrt(6) t, y = sqrt(2) s; the irrational factor sqrt(6)^(deg mod 2)
    is common to all terms of a homogeneous invariant and is dropped.

    Raises:
        ValueError: If ``f`` has an odd power of y
        VariableCountMismatchError: If ``f`` is not in two variables

    """
    acc: dict[Exponents, GaussianRational] = {}
    for (a, b), coeff in f.terms.items():
        if b % 2:
            raise ValueError("Odd powers of y do not survive the mirror y -> -y")
        accumulate_term(acc, (b, a), coeff * 6 ** (a // 2) * 2 ** (b // 2))
    return MultiPoly(2, acc)


def a2_plane_chart(f: MultiPoly) -> MultiPoly:
    """Restrict a polynomial in x1, x2, x3 to the plane x = (s + t, t - s, -2t)."""
    s, t = MultiPoly.variable(2, 1), MultiPoly.variable(2, 2)
    return substitute(f, [s + t, t - s, t.scale(-2)])
