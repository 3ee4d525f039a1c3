"""angular-calogero - Exact spectra and eigenfunctions of the angular Calogero-Moser model."""

from . import (
    cache,
    cli,
    config,
    coxeter,
    dunkl,
    errors,
    harmonics,
    intertwine,
    linalg,
    polycore,
    spectra,
    spinrep,
    verify,
)
from ._meta import __version__

__all__ = [
    "__version__",
    "cache",
    "cli",
    "config",
    "coxeter",
    "dunkl",
    "errors",
    "harmonics",
    "intertwine",
    "linalg",
    "polycore",
    "spectra",
    "spinrep",
    "verify",
]
