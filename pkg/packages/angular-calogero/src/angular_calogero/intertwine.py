"""The intertwining operator K(g), the Dunkl pairing and the isospectrality checks.

On permutation-symmetric polynomials

    K(g) f = prod_{i<j} (D_i - D_j) (Delta * f)

satisfies K(g) L(g+1) = L(g) K(g), so it carries harmonics at coupling g+1 to harmonics
at coupling g without changing their degree.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import permutations

from .dunkl import DunklContext, apply_dunkl_polynomial, calogero_L_apply, dunkl_apply
from .errors import (
    HarmonicityLostError,
    NotSymmetricError,
    RankMismatchError,
    UnsupportedCouplingError,
)
from .harmonics import harmonic_basis, is_harmonic
from .linalg import polynomial_rank
from .polycore import GaussianRational, MultiPoly, is_symmetric, vandermonde
from .serialization import Rational, Record
from .spectra import ModelVariant, degeneracy

__all__ = [
    "IntertwinerContext",
    "KernelProbeReport",
    "TransportReport",
    "dunkl_pairing",
    "harmonic_transport",
    "intertwiner_apply",
    "intertwining_residual",
    "kernel_probe",
    "symmetric_monomial_basis",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntertwinerContext:
    """K(g) maps the coupling-(g+1) problem onto the coupling-g one."""

    ctx: DunklContext

    @property
    def target(self) -> DunklContext:
        """The shifted context at coupling g + 1."""
        return self.ctx.shifted()


class KernelProbeReport(Record):
    """Image rank of K(g) on the symmetric polynomials of one degree."""

    n: int
    g: Rational
    m: int
    dimension: int
    rank: int


class TransportReport(Record):
    """Harmonics at g+1 carried to coupling g."""

    n: int
    g: Rational
    m: int
    transported: int
    rank: int
    harmonic: bool


def intertwiner_apply(ictx: IntertwinerContext, f: MultiPoly) -> MultiPoly:
    """Apply K(g) to a symmetric polynomial.

    Args:
        ictx: Intertwiner context (Dunkl operators at coupling g)
        f: Permutation-symmetric polynomial

    Returns:
        K(g) f, symmetric and of the same degree

    Raises:
        NotSymmetricError: If ``f`` is not symmetric

    """
    if not is_symmetric(f):
        raise NotSymmetricError("K(g) is only defined on permutation-symmetric polynomials")
    ctx = ictx.ctx
    result = vandermonde(ctx.n) * f
    for i in range(1, ctx.n + 1):
        for j in range(i + 1, ctx.n + 1):
            result = dunkl_apply(ctx, i, result) - dunkl_apply(ctx, j, result)
    return result


def intertwining_residual(ictx: IntertwinerContext, f: MultiPoly) -> MultiPoly:
    """K(g) L(g+1) f - L(g) K(g) f; identically zero."""
    lifted = intertwiner_apply(ictx, calogero_L_apply(ictx.target, f))
    return lifted - calogero_L_apply(ictx.ctx, intertwiner_apply(ictx, f))


def dunkl_pairing(ctx: DunklContext, left: MultiPoly, right: MultiPoly) -> GaussianRational:
    """(h', h) = h'(D_1, ..., D_n) h evaluated at x = 0."""
    applied = apply_dunkl_polynomial(left, right, lambda i, f: dunkl_apply(ctx, i, f))
    return applied.constant_term()


def _partitions(m: int, parts: int, largest: int) -> list[tuple[int, ...]]:
    if m == 0:
        return [()]
    if parts == 0:
        return []
    found = []
    for first in range(min(m, largest), 0, -1):
        found.extend((first, *rest) for rest in _partitions(m - first, parts - 1, first))
    return found


def symmetric_monomial_basis(n: int, m: int) -> list[MultiPoly]:
    """Monomial symmetric functions m_lambda for lambda |- m with at most n parts."""
    basis = []
    for shape in _partitions(m, n, m):
        padded = shape + (0,) * (n - len(shape))
        basis.append(MultiPoly(n, dict.fromkeys(set(permutations(padded)), 1)))
    return basis


def _require_integer(ictx: IntertwinerContext) -> None:
    if ictx.ctx.g.denominator != 1:
        raise UnsupportedCouplingError(f"The kernel argument needs integer g, got g={ictx.ctx.g}")


def kernel_probe(ictx: IntertwinerContext, m: int) -> KernelProbeReport:
    """Apply K(g) to the symmetric monomials of degree m and check nothing is lost.

    Raises:
        UnsupportedCouplingError: If g is not an integer
        RankMismatchError: If the image has smaller dimension than the input span

    """
    _require_integer(ictx)
    basis = symmetric_monomial_basis(ictx.ctx.n, m)
    rank = polynomial_rank([intertwiner_apply(ictx, f) for f in basis])
    if rank != len(basis):
        raise RankMismatchError(f"K({ictx.ctx.g}) image at n={ictx.ctx.n} m={m}", rank, len(basis))
    logger.debug("K(%s) injective on degree %d at n=%d", ictx.ctx.g, m, ictx.ctx.n)
    return KernelProbeReport(n=ictx.ctx.n, g=ictx.ctx.g, m=m, dimension=len(basis), rank=rank)


def harmonic_transport(ictx: IntertwinerContext, m: int) -> TransportReport:
    """Carry the level-m harmonics at g+1 through K(g).

    Raises:
        UnsupportedCouplingError: If g is not an integer
        HarmonicityLostError: If an image is not annihilated by L(g)
        RankMismatchError: If the images become linearly dependent

    """
    _require_integer(ictx)
    ctx = ictx.ctx
    source = harmonic_basis(ictx.target, m)
    images = [intertwiner_apply(ictx, h.poly) for h in source.harmonics]
    for harmonic, image in zip(source.harmonics, images, strict=True):
        if not is_harmonic(ctx, image):
            raise HarmonicityLostError(
                f"K({ctx.g}) h_({harmonic.k}) is not harmonic at coupling {ctx.g}"
            )
    rank = polynomial_rank(images)
    expected = degeneracy(ModelVariant.ANGULAR, ctx.n, m)
    if rank != expected:
        raise RankMismatchError(f"transported harmonics n={ctx.n} g={ctx.g} m={m}", rank, expected)
    return TransportReport(n=ctx.n, g=ctx.g, m=m, transported=len(images), rank=rank, harmonic=True)
