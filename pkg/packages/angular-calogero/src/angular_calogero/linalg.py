"""Exact rank of polynomial coefficient matrices by fraction-free elimination over ``QQ_I``."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from .polycore import graded_lex_key

if TYPE_CHECKING:
    from collections.abc import Sequence

    from .polycore import Exponents, MultiPoly

__all__ = ["coefficient_matrix", "matrix_rank", "polynomial_rank"]

logger = logging.getLogger(__name__)


def coefficient_matrix(polys: Sequence[MultiPoly]) -> DomainMatrix:
    """One row per polynomial, one column per monomial of the union support (graded lex)."""
    support: set[Exponents] = set()
    for poly in polys:
        support.update(poly.terms)
    columns = sorted(support, key=graded_lex_key, reverse=True)
    zero = QQ_I(0)
    rows = [[poly.terms.get(c, zero) for c in columns] for poly in polys]
    return DomainMatrix(rows, (len(rows), len(columns)), QQ_I)


def matrix_rank(matrix: DomainMatrix) -> int:
    """Exact rank by fraction-free (Bareiss) row reduction over the Gaussian rationals.

    Args:
        matrix: Matrix over ``QQ_I``

    Returns:
        The rank; empty matrices have rank 0

    """
    rows, cols = matrix.shape
    if not rows or not cols:
        return 0
    _, _, pivots = matrix.rref_den(method="FF")
    return len(pivots)


def polynomial_rank(polys: Sequence[MultiPoly]) -> int:
    """Exact dimension of the span of a family of polynomials."""
    rank = matrix_rank(coefficient_matrix(polys))
    logger.debug("rank %d from %d polynomials", rank, len(polys))
    return rank
