"""Deformed harmonic polynomials, angular eigenfunctions and oscillator eigenstates.

The deformed harmonic of quantum numbers k (k_2 = 0) is

    h_k = r^(gn(n-1)+n-2+2m) * (sum D_i)^k1 (sum D_i^3)^k3 ... (sum D_i^n)^kn * r^(-gn(n-1)-n+2)

It is a homogeneous symmetric polynomial of degree m annihilated by L(g). The first Dunkl
step on the seed r^2a is taken without its factor 2a, which keeps h_k nonzero where
a = 0 (two particles at g = 0) and changes it only by a constant elsewhere. The angular
eigenfunction is r^-m h_k times the angular part of Delta^g; it is kept algebraically
as (h_k, q, Delta-hat power) and never written in spherical coordinates.

Relative harmonics use the same formula in the hyperplane orthogonal to the center of
mass: the radius is r~ (r~^2 = r^2 - nX^2) and the dimension is n - 1. On
translation-invariant functions sum_i D_i vanishes, so the projected Newton sums agree
with the plain ones.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import TYPE_CHECKING

from .dunkl import (
    DunklContext,
    calogero_L_apply,
    dunkl_apply,
    newton_dunkl,
    reduced_seed_derivative,
)
from .errors import (
    HarmonicityLostError,
    NotPolynomialError,
    RankMismatchError,
    UnsupportedCouplingError,
    VariantConstraintError,
)
from .linalg import polynomial_rank
from .polycore import (
    GaussianRational,
    MultiPoly,
    RadialPoly,
    accumulate_term,
    coefficient,
    exact_divide,
    gaussian,
    power_sum,
    radial_collect,
    restrict_to_hyperplane,
    substitute,
    vandermonde,
)
from .spectra import (
    ModelVariant,
    MultiIndex,
    check_variant,
    degeneracy,
    enumerate_levels,
    level_energy,
)

if TYPE_CHECKING:
    from concurrent.futures import Executor

__all__ = [
    "AngularEigenfunction",
    "DeformedHarmonic",
    "HarmonicBasis",
    "OscillatorState",
    "RelativeHarmonic",
    "RelativeOscillatorState",
    "angular_eigenfunction",
    "creation_newton",
    "deformed_harmonic",
    "harmonic_basis",
    "harmonic_seed",
    "is_harmonic",
    "lax_creation_state",
    "newton_exclusion_residual",
    "oscillator_residual",
    "oscillator_state",
    "relative_harmonic",
    "relative_harmonic_basis",
    "relative_oscillator_state",
    "require_harmonic",
]

logger = logging.getLogger(__name__)

_MINUS_I = gaussian(0, -1)


@dataclass(frozen=True)
class DeformedHarmonic:
    """A deformed harmonic h_k, unnormalized as produced by the Dunkl construction.

    ``relative`` harmonics are translation invariant; ``poly`` is still written in
    x1..xn and ``restricted`` gives the form on the hyperplane sum x_i = 0.
    """

    ctx: DunklContext
    k: MultiIndex
    m: int
    q: Fraction
    poly: MultiPoly
    relative: bool = False

    @property
    def restricted(self) -> MultiPoly:
        """Polynomial in n - 1 variables after substituting x_n = -(x_1 + ... + x_(n-1))."""
        return restrict_to_hyperplane(self.poly)


@dataclass(frozen=True)
class HarmonicBasis:
    """All harmonics of one level with their exact rank."""

    harmonics: tuple[DeformedHarmonic, ...]
    rank: int
    expected: int


@dataclass(frozen=True)
class AngularEigenfunction:
    """v_k = r^radial_power * h_k * (Delta-hat)^delta_power with eigenvalue epsilon."""

    harmonic: DeformedHarmonic
    epsilon: Fraction
    q: Fraction
    delta_power: Fraction
    radial_power: int


@dataclass(frozen=True)
class RelativeHarmonic:
    """Relative harmonic on the hyperplane with its relative-angular eigenvalue."""

    harmonic: DeformedHarmonic
    poly: MultiPoly
    epsilon: Fraction


@dataclass(frozen=True)
class OscillatorState:
    """Psi_k = prefactor * exp(-omega r^2 / 2), prefactor = Delta^g * symmetric_part."""

    ctx: DunklContext
    omega: Fraction
    k: MultiIndex
    symmetric_part: MultiPoly
    prefactor: MultiPoly
    energy: Fraction


@dataclass(frozen=True)
class RelativeOscillatorState:
    """Center-of-mass ground component of Psi_k, written on the hyperplane (n - 1 variables).

    The full relative state is ``symmetric_part * Delta^g * exp(-omega r~^2 / 2)``.
    """

    ctx: DunklContext
    omega: Fraction
    k: MultiIndex
    symmetric_part: MultiPoly
    energy: Fraction


def _seed_exponent(ctx: DunklContext, *, relative: bool) -> Fraction:
    dimension = ctx.n - 1 if relative else ctx.n
    return (-ctx.g * ctx.n * (ctx.n - 1) - dimension + 2) / 2


def harmonic_seed(ctx: DunklContext, *, relative: bool = False) -> RadialPoly:
    """The radial power r^(-gn(n-1)-n+2) (or its relative analogue) all harmonics start from."""
    return RadialPoly.from_poly(
        MultiPoly.constant(ctx.n, 1), _seed_exponent(ctx, relative=relative), relative=relative
    )


def newton_exclusion_residual(ctx: DunklContext, *, relative: bool = False) -> RadialPoly:
    """sum_i D_i^2 applied to the seed; vanishes identically."""
    return newton_dunkl(ctx, 2, harmonic_seed(ctx, relative=relative))


def _seed_newton(ctx: DunklContext, ell: int, seed: RadialPoly) -> RadialPoly:
    """sum_i D_i^ell on the seed, divided by the 2a of the first step."""
    total = seed.scale(0)
    for i in range(1, ctx.n + 1):
        term = reduced_seed_derivative(seed, i)
        for _ in range(ell - 1):
            term = dunkl_apply(ctx, i, term)
        total += term
    return total


def is_harmonic(ctx: DunklContext, poly: MultiPoly) -> bool:
    """Whether L(g) annihilates a symmetric polynomial."""
    return calogero_L_apply(ctx, poly).is_zero


def deformed_harmonic(
    ctx: DunklContext, k: MultiIndex, *, relative: bool = False
) -> DeformedHarmonic:
    """Build h_k by Newton-Dunkl sums acting on the seed radial power.

    Args:
        ctx: Particle number and coupling
        k: Quantum numbers, k_2 = 0 (and k_1 = 0 when ``relative``)
        relative: Build the translation-invariant relative harmonic

    Returns:
        The harmonic, homogeneous of degree m = sum i k_i

    Raises:
        VariantConstraintError: If k violates the constraints
        NotPolynomialError: If the radial powers fail to resolve (internal inconsistency)

    """
    variant = ModelVariant.RELATIVE_ANGULAR if relative else ModelVariant.ANGULAR
    if k.n != ctx.n:
        raise VariantConstraintError(f"Multi-index has {k.n} entries, expected {ctx.n}")
    check_variant(variant, k)
    seed_exponent = _seed_exponent(ctx, relative=relative)
    seed = harmonic_seed(ctx, relative=relative)
    state = seed
    for ell in range(1, ctx.n + 1):
        for _ in range(k[ell]):
            if state is seed:
                state = _seed_newton(ctx, ell, seed)
            else:
                state = newton_dunkl(ctx, ell, state)
    m = k.level
    try:
        poly = radial_collect(state.shift(-seed_exponent + m))
    except NotPolynomialError:
        logger.critical("radial powers did not resolve for k=(%s), n=%d, g=%s", k, ctx.n, ctx.g)
        raise
    if not poly.is_homogeneous or (not poly.is_zero and poly.degree != m):
        raise HarmonicityLostError(f"h_({k}) is not homogeneous of degree {m}")
    q = ctx.g * ctx.n * (ctx.n - 1) / 2 + m
    logger.debug("h_(%s) at n=%d g=%s has %d terms", k, ctx.n, ctx.g, len(poly.terms))
    return DeformedHarmonic(ctx=ctx, k=k, m=m, q=q, poly=poly, relative=relative)


def _basis(
    ctx: DunklContext, m: int, *, relative: bool, executor: Executor | None
) -> HarmonicBasis:
    variant = ModelVariant.RELATIVE_ANGULAR if relative else ModelVariant.ANGULAR
    labels = enumerate_levels(variant, ctx.n, m)
    build = partial(deformed_harmonic, ctx, relative=relative)
    harmonics = tuple(executor.map(build, labels) if executor else map(build, labels))
    rank = polynomial_rank([h.poly for h in harmonics])
    expected = degeneracy(variant, ctx.n, m)
    if rank != expected:
        raise RankMismatchError(f"{variant} harmonics n={ctx.n} g={ctx.g} m={m}", rank, expected)
    return HarmonicBasis(harmonics=harmonics, rank=rank, expected=expected)


def harmonic_basis(ctx: DunklContext, m: int, executor: Executor | None = None) -> HarmonicBasis:
    """All h_k of level m with exact rank p_n(m) - p_n(m-2).

    Args:
        ctx: Particle number and coupling
        m: Level
        executor: Optional pool; results keep the enumeration order

    Returns:
        The basis and its rank

    Raises:
        RankMismatchError: If the rank differs from the predicted degeneracy

    """
    return _basis(ctx, m, relative=False, executor=executor)


def relative_harmonic_basis(
    ctx: DunklContext, m: int, executor: Executor | None = None
) -> HarmonicBasis:
    """Relative harmonics of level m; rank p_n(m) - p_n(m-1) - p_n(m-2) + p_n(m-3).

    Raises:
        RankMismatchError: If the rank differs from the predicted degeneracy

    """
    return _basis(ctx, m, relative=True, executor=executor)


def angular_eigenfunction(ctx: DunklContext, k: MultiIndex) -> AngularEigenfunction:
    """h_k with its angular eigenvalue eps = q(q+n-2)/2."""
    harmonic = deformed_harmonic(ctx, k)
    epsilon = level_energy(ModelVariant.ANGULAR, ctx.n, ctx.g, harmonic.m)
    return AngularEigenfunction(
        harmonic=harmonic,
        epsilon=epsilon,
        q=harmonic.q,
        delta_power=ctx.g,
        radial_power=-harmonic.m,
    )


def relative_harmonic(ctx: DunklContext, k: MultiIndex) -> RelativeHarmonic:
    """Relative harmonic restricted to the hyperplane, with eps~ = q~(q~+n-3)/2.

    Raises:
        VariantConstraintError: If k_1 or k_2 is nonzero

    """
    harmonic = deformed_harmonic(ctx, k, relative=True)
    epsilon = level_energy(ModelVariant.RELATIVE_ANGULAR, ctx.n, ctx.g, harmonic.m)
    return RelativeHarmonic(harmonic=harmonic, poly=harmonic.restricted, epsilon=epsilon)


def _require_integer_coupling(ctx: DunklContext) -> int:
    if ctx.g.denominator != 1:
        raise UnsupportedCouplingError(f"Delta^g is a polynomial only for integer g, got g={ctx.g}")
    return int(ctx.g)


def _check_omega(omega: Fraction) -> None:
    if omega <= 0:
        raise ValueError(f"Frequency must be positive, got {omega}")


def creation_newton(ctx: DunklContext, omega: Fraction, ell: int, f: MultiPoly) -> MultiPoly:
    """B_ell acting through the Gaussian: sum_i (-i (D_i - 2 omega x_i))^ell f."""
    total = MultiPoly.zero(ctx.n)
    for i in range(1, ctx.n + 1):
        x_i = MultiPoly.variable(ctx.n, i)
        term = f
        for _ in range(ell):
            term = (dunkl_apply(ctx, i, term) - (x_i * term).scale(2 * omega)).scale(_MINUS_I)
        total += term
    return total


def oscillator_state(ctx: DunklContext, omega: Fraction, k: MultiIndex) -> OscillatorState:
    """Psi_k = Delta^g * B_1^k1 ... B_n^kn exp(-omega r^2 / 2).

    The exchange-creation sums act on the Gaussian and the result is multiplied by
    Delta^g, which gives the eigenstates of the full Hamiltonian.

    Raises:
        UnsupportedCouplingError: If g is not an integer
        ValueError: If omega <= 0 or k has the wrong length

    """
    g = _require_integer_coupling(ctx)
    _check_omega(omega)
    if k.n != ctx.n:
        raise ValueError(f"Multi-index has {k.n} entries, expected {ctx.n}")
    symmetric = MultiPoly.constant(ctx.n, 1)
    for ell in range(1, ctx.n + 1):
        for _ in range(k[ell]):
            symmetric = creation_newton(ctx, omega, ell, symmetric)
    prefactor = vandermonde(ctx.n) ** g * symmetric
    value = omega * level_energy(ModelVariant.FULL, ctx.n, ctx.g, k.level)
    return OscillatorState(
        ctx=ctx, omega=omega, k=k, symmetric_part=symmetric, prefactor=prefactor, energy=value
    )


def _pair_potential(ctx: DunklContext, f: MultiPoly) -> MultiPoly:
    """sum_{i<j} f / (x_i - x_j)^2 (exact when f carries Delta^2)."""
    total = MultiPoly.zero(ctx.n)
    for i in range(1, ctx.n + 1):
        for j in range(i + 1, ctx.n + 1):
            square = (MultiPoly.variable(ctx.n, i) - MultiPoly.variable(ctx.n, j)) ** 2
            total += exact_divide(f, square)
    return total


def oscillator_residual(state: OscillatorState) -> MultiPoly:
    """(H - E) Psi divided by the Gaussian, as a polynomial; zero for an eigenstate.

    With Psi = F exp(-omega r^2/2),
    H Psi / Gaussian = -Laplacian(F)/2 + omega Euler(F) + n omega F/2 + g(g-1) sum F/x_ij^2.
    """
    ctx, omega, f = state.ctx, state.omega, state.prefactor
    result = f.laplacian().scale(Fraction(-1, 2)) + f.euler().scale(omega)
    result += f.scale(omega * ctx.n / 2) - f.scale(state.energy)
    if coupling := ctx.g * (ctx.g - 1):
        result += _pair_potential(ctx, f).scale(coupling)
    return result


def _shifted_momentum(ctx: DunklContext, omega: Fraction, i: int, f: MultiPoly) -> MultiPoly:
    """(p_i + i omega x_i) acting on f * Gaussian, divided by the Gaussian."""
    x_i = MultiPoly.variable(ctx.n, i)
    return (f.derivative(i) - (x_i * f).scale(2 * omega)).scale(_MINUS_I)


def lax_creation_state(ctx: DunklContext, omega: Fraction, ell: int) -> MultiPoly:
    """Prefactor of A_ell^+ Psi_0 with A_ell^+ = I_ell(p + i omega x, x), for ell <= 3.

    The Lax charges are
    I_1 = sum p_i, I_2 = sum p_i^2 + 2g(g-1) sum_{i<j} x_ij^-2 and
    I_3 = sum p_i^3 + 3g(g-1) sum_{i<j} x_ij^-2 (p_i + p_j).

    Raises:
        ValueError: If ell is not 1, 2 or 3
        UnsupportedCouplingError: If g is not an integer

    """
    if ell not in {1, 2, 3}:
        raise ValueError(f"Lax charges are implemented for ell <= 3, got {ell}")
    g = _require_integer_coupling(ctx)
    _check_omega(omega)
    ground = vandermonde(ctx.n) ** g
    coupling = ctx.g * (ctx.g - 1)
    total = MultiPoly.zero(ctx.n)
    for i in range(1, ctx.n + 1):
        term = ground
        for _ in range(ell):
            term = _shifted_momentum(ctx, omega, i, term)
        total += term
    if coupling and ell == 2:
        total += _pair_potential(ctx, ground).scale(2 * coupling)
    if coupling and ell == 3:
        for i in range(1, ctx.n + 1):
            for j in range(i + 1, ctx.n + 1):
                square = (MultiPoly.variable(ctx.n, i) - MultiPoly.variable(ctx.n, j)) ** 2
                moved = _shifted_momentum(ctx, omega, i, ground)
                moved += _shifted_momentum(ctx, omega, j, ground)
                total += exact_divide(moved, square).scale(3 * coupling)
    return total


def _gaussian_moment(order: int, n: int, omega: Fraction) -> Fraction:
    """<X^order> in the center-of-mass ground state (weight exp(-n omega X^2))."""
    if order % 2:
        return Fraction(0)
    value = Fraction(1)
    variance = 1 / (2 * n * omega)
    for odd in range(1, order, 2):
        value *= odd * variance
    return value


def relative_oscillator_state(
    ctx: DunklContext, omega: Fraction, k: MultiIndex
) -> RelativeOscillatorState:
    """Project Psi_k (k_1 = 0) onto the center-of-mass ground state chi_0.

    Coordinates are split as x_i = y_i + X (i < n), x_n = X - (y_1 + ... + y_(n-1)); the
    powers of X are replaced by their chi_0 moments.

    Raises:
        VariantConstraintError: If k_1 is nonzero

    """
    check_variant(ModelVariant.RELATIVE, k)
    state = oscillator_state(ctx, omega, k)
    n = ctx.n
    relative = [MultiPoly.variable(n, i) + MultiPoly.variable(n, n) for i in range(1, n)]
    relative.append(MultiPoly.variable(n, n).scale(2) - power_sum(n, 1))
    split = substitute(state.symmetric_part, relative)
    projected: dict[tuple[int, ...], GaussianRational] = {}
    for exps, coeff in split.terms.items():
        if moment := _gaussian_moment(exps[-1], n, omega):
            accumulate_term(projected, exps[:-1], coeff * coefficient(moment))
    value = omega * level_energy(ModelVariant.RELATIVE, n, ctx.g, k.level)
    return RelativeOscillatorState(
        ctx=ctx, omega=omega, k=k, symmetric_part=MultiPoly(n - 1, projected), energy=value
    )


def require_harmonic(ctx: DunklContext, harmonic: DeformedHarmonic) -> None:
    """Raise unless L(g) annihilates the harmonic.

    Raises:
        HarmonicityLostError: If L(g) h is nonzero

    """
    if not is_harmonic(ctx, harmonic.poly):
        raise HarmonicityLostError(f"L({ctx.g}) does not annihilate h_({harmonic.k}) at n={ctx.n}")
