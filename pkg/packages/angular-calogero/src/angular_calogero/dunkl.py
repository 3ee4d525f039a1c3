"""Type-A Dunkl operators and the gauge-fixed Calogero-Moser operator L(g).

The Dunkl operator acting on polynomials is

    D_i = d/dx_i + g * sum_{j != i} (1 - s_ij) / (x_i - x_j)

and on radial polynomials ``P * rho^a`` the derivative also hits the radial factor,
``d/dx_i rho^a = 2a * (d rho / 2dx_i) * rho^(a-1)``, while the reflection part leaves
the symmetric radial factor alone.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, TypeVar, overload

from .errors import NotSymmetricError
from .polycore import (
    Exponents,
    GaussianRational,
    MultiPoly,
    RadialPoly,
    accumulate_term,
    exact_divide,
    is_symmetric,
    parse_rational,
)

if TYPE_CHECKING:
    from collections.abc import Callable

__all__ = [
    "DunklContext",
    "apply_dunkl_polynomial",
    "calogero_L_apply",
    "divided_difference",
    "dunkl_apply",
    "lift_radial",
    "newton_dunkl",
    "reduced_seed_derivative",
]

logger = logging.getLogger(__name__)

F = TypeVar("F", MultiPoly, RadialPoly)


@dataclass(frozen=True)
class DunklContext:
    """Particle number and coupling of a type-A Dunkl family."""

    n: int
    g: Fraction

    def __post_init__(self) -> None:
        """Validate and coerce the coupling.

        Raises:
            ValueError: If n < 2 or g < 0

        """
        object.__setattr__(self, "g", parse_rational(self.g))
        if self.n < 2:
            raise ValueError(f"Need at least two particles, got n={self.n}")
        if self.g < 0:
            raise ValueError(f"Coupling must be nonnegative, got g={self.g}")

    def shifted(self, by: int = 1) -> DunklContext:
        """Same n with coupling g + by."""
        return DunklContext(self.n, self.g + by)


def divided_difference(f: MultiPoly, i: int, j: int) -> MultiPoly:
    """``(f - s_ij f) / (x_i - x_j)`` term by term (1-based indices).

    On a monomial with x_i^a x_j^b and a > b the quotient is
    ``(x_i x_j)^b * sum_t x_i^(a-b-1-t) x_j^t``; a < b gives the negative of the swapped
    case and a == b gives zero.
    """
    a_idx, b_idx = i - 1, j - 1
    acc: dict[Exponents, GaussianRational] = {}
    for exps, coeff in f.terms.items():
        alpha, beta = exps[a_idx], exps[b_idx]
        if alpha == beta:
            continue
        high, low, sign = (alpha, beta, coeff) if alpha > beta else (beta, alpha, -coeff)
        base = list(exps)
        for t in range(high - low):
            base[a_idx] = high - 1 - t
            base[b_idx] = low + t
            accumulate_term(acc, tuple(base), sign)
    return MultiPoly(f.n, acc)


def _dunkl_poly(ctx: DunklContext, i: int, f: MultiPoly) -> MultiPoly:
    result = f.derivative(i)
    if ctx.g:
        exchange = MultiPoly.zero(f.n)
        for j in range(1, f.n + 1):
            if j != i:
                exchange += divided_difference(f, i, j)
        result += exchange.scale(ctx.g)
    return result


@overload
def dunkl_apply(ctx: DunklContext, i: int, f: MultiPoly) -> MultiPoly: ...
@overload
def dunkl_apply(ctx: DunklContext, i: int, f: RadialPoly) -> RadialPoly: ...
def dunkl_apply(ctx: DunklContext, i: int, f: MultiPoly | RadialPoly) -> MultiPoly | RadialPoly:
    """Apply D_i (1-based) to a polynomial or radial polynomial.

    Raises:
        IndexError: If i is outside 1..n

    """
    if not 1 <= i <= ctx.n:
        raise IndexError(f"Dunkl index {i} out of range 1..{ctx.n}")
    if isinstance(f, MultiPoly):
        return _dunkl_poly(ctx, i, f)
    return lift_radial(f, i, lambda p: _dunkl_poly(ctx, i, p))


def lift_radial(
    f: RadialPoly, i: int, polynomial_op: Callable[[MultiPoly], MultiPoly]
) -> RadialPoly:
    """Extend a Dunkl operator from polynomials to ``sum_j P_j rho^(a+j)``.

    The reflections fix rho, so only the derivative sees the radial factor:
    ``d_i rho^e = 2e * (d rho / 2dx_i) * rho^(e-1)``.
    """
    result = f.map_parts(polynomial_op)
    gradient = f.radial_gradient(i)
    radial: dict[int, MultiPoly] = {}
    for offset, poly in f.parts.items():
        exponent = f.base + offset
        if exponent:
            radial[offset - 1] = (poly * gradient).scale(2 * exponent)
    return result + RadialPoly(f.n, f.base, radial, relative=f.relative)


def reduced_seed_derivative(seed: RadialPoly, i: int) -> RadialPoly:
    """First Dunkl step on a radial seed rho^a with the factor 2a removed: x_i rho^(a-1).

    Every reflection fixes the seed, so D_i rho^a = 2a x_i rho^(a-1). Without the factor
    the construction stays nonzero at a = 0 and gives the limit there.
    """
    gradient = seed.radial_gradient(i)
    return seed.map_parts(lambda p: p * gradient).shift(-1)


def newton_dunkl(ctx: DunklContext, ell: int, f: F) -> F:
    """Newton sum ``sum_i D_i^ell f``.

    Raises:
        ValueError: If ell < 1

    """
    if ell < 1:
        raise ValueError(f"Newton sum order must be positive, got {ell}")
    total = f.scale(0)
    for i in range(1, ctx.n + 1):
        term = f
        for _ in range(ell):
            term = dunkl_apply(ctx, i, term)
        total += term
    return total


def apply_dunkl_polynomial(op: MultiPoly, f: F, dunkl: Callable[[int, F], F]) -> F:
    """Evaluate ``op(D_1, ..., D_n) f`` for a commuting family ``dunkl(i, .)``.

    Monomials are applied one variable at a time; results for shared exponent prefixes
    are reused. The family must commute, so the order inside a monomial is irrelevant.

    Args:
        op: Polynomial whose variables are replaced by the operators
        f: Operand
        dunkl: Callable applying the i-th (1-based) operator

    Returns:
        The operand acted on by ``op``

    """
    cache: dict[Exponents, F] = {(0,) * op.n: f}

    def reach(exps: Exponents) -> F:
        if (hit := cache.get(exps)) is not None:
            return hit
        k = next(idx for idx, e in enumerate(exps) if e)
        lower = exps[:k] + (exps[k] - 1,) + exps[k + 1 :]
        value = dunkl(k + 1, reach(lower))
        cache[exps] = value
        return value

    total = f.scale(0)
    for exps, coeff in op.sorted_terms():
        total += reach(exps).scale(coeff)
    return total


def calogero_L_apply(ctx: DunklContext, f: MultiPoly) -> MultiPoly:
    """Gauge-fixed operator ``L(g) = sum d_i^2 + sum_{i<j} 2g/(x_i - x_j) (d_i - d_j)``.

    Computed directly from derivatives and exact division, independently of the Dunkl
    operators, so it can serve as a harmonicity oracle.

    Raises:
        NotSymmetricError: If ``f`` is not permutation symmetric

    """
    if not is_symmetric(f):
        raise NotSymmetricError("L(g) is only applied to permutation-symmetric polynomials")
    result = f.laplacian()
    if ctx.g and not f.is_zero:
        gradients = [f.derivative(i) for i in range(1, f.n + 1)]
        for i in range(1, f.n + 1):
            for j in range(i + 1, f.n + 1):
                difference = MultiPoly.variable(f.n, i) - MultiPoly.variable(f.n, j)
                quotient = exact_divide(gradients[i - 1] - gradients[j - 1], difference)
                result += quotient.scale(2 * ctx.g)
    return result
