"""Exact verification suites.

Every check expands into independent cells (check, n, g, m); cells run serially or on a
process pool and the report lists them in the order they were generated.
"""

from __future__ import annotations

import logging
import random
import time
from collections.abc import Callable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction

from pydantic import Field

from .coxeter import (
    RootSystem,
    build_root_system,
    coxeter_deformed_harmonic,
    coxeter_intertwining_residual,
    coxeter_laplacian,
    coxeter_spectrum_table,
    enumerate_coxeter_levels,
    from_type_a_index,
    gauged_hamiltonian_check,
    harmonic_count,
    parse_root_system,
)
from .dunkl import DunklContext
from .errors import CalogeroError
from .harmonics import (
    OscillatorState,
    deformed_harmonic,
    harmonic_basis,
    is_harmonic,
    lax_creation_state,
    newton_exclusion_residual,
    oscillator_residual,
    oscillator_state,
    relative_harmonic_basis,
)
from .intertwine import (
    IntertwinerContext,
    harmonic_transport,
    intertwining_residual,
    kernel_probe,
    symmetric_monomial_basis,
)
from .linalg import polynomial_rank
from .polycore import MultiPoly, exact_divide, squared_radius, vandermonde
from .serialization import Rational, Record
from .spectra import ModelVariant, MultiIndex, energy, enumerate_levels, spectrum_table
from .spinrep import VirtualCharacter, YoungDiagram, irrep_dimension, pieri_product, spin_content

__all__ = [
    "Cell",
    "CheckCount",
    "CheckName",
    "CheckResult",
    "VerificationReport",
    "VerifyBounds",
    "expand_cells",
    "run_cell",
    "run_verification",
]

logger = logging.getLogger(__name__)

OSCILLATOR_MAX_LEVEL = 4
PIERI_SAMPLES = 200


class CheckName(StrEnum):
    """Names accepted by ``verify --checks``."""

    HARMONICITY = "harmonicity"
    DEGENERACY = "degeneracy"
    RELATIVE = "relative"
    EXCLUSION = "exclusion"
    INTERTWINING = "intertwining"
    KERNEL = "kernel"
    TRANSPORT = "transport"
    ISOSPECTRAL = "isospectral"
    SPECIAL_CASES = "special-cases"
    OSCILLATOR = "oscillator"
    LAX = "lax"
    COXETER = "coxeter"
    COXETER_A2 = "coxeter-a2"
    TYPE_A_PATH = "type-a-path"
    EXCHANGE = "exchange"
    COXETER_INTERTWINING = "coxeter-intertwining"
    SPIN = "spin"
    PIERI = "pieri"


class VerifyBounds(Record):
    """Parameter ranges swept by the suites."""

    ns: list[int] = Field(default_factory=lambda: [2, 3, 4])
    gs: list[Rational] = Field(
        default_factory=lambda: [Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2)]
    )
    max_level: int = Field(default=6, ge=0)
    omega: Rational = Fraction(1)
    root_systems: list[str] = Field(default_factory=lambda: ["B2", "I2(3)", "I2(4)", "I2(5)"])
    max_s: int = Field(default=4, ge=1)
    seed: int = 0

    @property
    def integer_gs(self) -> list[Fraction]:
        """The couplings at which Delta^g and K(g) arguments apply."""
        return [g for g in self.gs if g.denominator == 1]


@dataclass(frozen=True)
class Cell:
    """One independent unit of verification work."""

    check: CheckName
    bounds: VerifyBounds
    n: int | None = None
    g: Fraction | None = None
    m: int | None = None
    root_system: str | None = None


class CheckResult(Record):
    """Outcome of one cell."""

    check: CheckName
    n: int | None
    g: Rational | None
    m: int | None
    root_system: str | None
    passed: bool
    detail: str
    seconds: float


class CheckCount(Record):
    """Pass/fail tally of one check."""

    passed: int
    failed: int


class VerificationReport(Record):
    """All cell results in deterministic order."""

    passed: bool
    total: int
    failed: int
    counts: dict[str, CheckCount]
    results: list[CheckResult]
    seconds: float


Outcome = tuple[bool, str]


def _ctx(cell: Cell) -> DunklContext:
    assert cell.n is not None and cell.g is not None
    return DunklContext(cell.n, cell.g)


def _level(cell: Cell) -> int:
    assert cell.m is not None
    return cell.m


def _root_system(cell: Cell) -> RootSystem:
    assert cell.root_system is not None
    return parse_root_system(cell.root_system)


def _grid(check: CheckName, bounds: VerifyBounds, gs: list[Fraction], top: int) -> Iterator[Cell]:
    for n in bounds.ns:
        for g in gs:
            for m in range(top + 1):
                yield Cell(check, bounds, n=n, g=g, m=m)


def _per_coupling(check: CheckName, bounds: VerifyBounds, gs: list[Fraction]) -> Iterator[Cell]:
    for n in bounds.ns:
        for g in gs:
            yield Cell(check, bounds, n=n, g=g)


def _per_root_system(check: CheckName, bounds: VerifyBounds, *, levels: bool) -> Iterator[Cell]:
    for tag in bounds.root_systems:
        for g in bounds.gs:
            if not levels:
                yield Cell(check, bounds, g=g, root_system=tag)
                continue
            for m in range(bounds.max_level + 1):
                yield Cell(check, bounds, g=g, m=m, root_system=tag)


def _check_harmonicity(cell: Cell) -> Outcome:
    ctx, m = _ctx(cell), _level(cell)
    labels = enumerate_levels(ModelVariant.ANGULAR, ctx.n, m)
    failed = [k for k in labels if not is_harmonic(ctx, deformed_harmonic(ctx, k).poly)]
    if failed:
        return False, f"L(g) h_k != 0 for k in {[str(k) for k in failed]}"
    return True, f"{len(labels)} harmonics annihilated by L(g)"


def _check_degeneracy(cell: Cell) -> Outcome:
    basis = harmonic_basis(_ctx(cell), _level(cell))
    return True, f"rank {basis.rank} = p_n(m) - p_n(m-2)"


def _check_relative(cell: Cell) -> Outcome:
    ctx = _ctx(cell)
    basis = relative_harmonic_basis(ctx, _level(cell))
    failed = [h.k for h in basis.harmonics if not is_harmonic(ctx, h.poly)]
    if failed:
        return False, f"relative harmonics not annihilated for k in {[str(k) for k in failed]}"
    return True, f"rank {basis.rank} relative harmonics"


def _check_exclusion(cell: Cell) -> Outcome:
    ctx = _ctx(cell)
    full = newton_exclusion_residual(ctx).is_zero
    relative = newton_exclusion_residual(ctx, relative=True).is_zero
    return full and relative, f"sum D_i^2 seed = 0: full {full}, relative {relative}"


def _check_intertwining(cell: Cell) -> Outcome:
    ictx = IntertwinerContext(_ctx(cell))
    basis = symmetric_monomial_basis(ictx.ctx.n, _level(cell))
    nonzero = sum(not intertwining_residual(ictx, f).is_zero for f in basis)
    return nonzero == 0, f"{len(basis) - nonzero}/{len(basis)} residuals vanish"


def _check_kernel(cell: Cell) -> Outcome:
    report = kernel_probe(IntertwinerContext(_ctx(cell)), _level(cell))
    return True, f"K(g) rank {report.rank} on {report.dimension} symmetric monomials"


def _check_transport(cell: Cell) -> Outcome:
    report = harmonic_transport(IntertwinerContext(_ctx(cell)), _level(cell))
    return True, f"{report.transported} harmonics carried with rank {report.rank}"


def _levels_by_energy(n: int, g: Fraction, levels: range) -> dict[Fraction, set[int]]:
    grouped: dict[Fraction, set[int]] = {}
    for m in levels:
        for k in enumerate_levels(ModelVariant.ANGULAR, n, m):
            value = energy(ModelVariant.ANGULAR, n, g, None, k).energy
            grouped.setdefault(value, set()).add(m)
    return grouped


def _check_isospectral(cell: Cell) -> Outcome:
    ctx, top = _ctx(cell), cell.bounds.max_level
    shift = ctx.n * (ctx.n - 1) // 2
    upper = _levels_by_energy(ctx.n, ctx.g + 1, range(top + 1))
    lower = _levels_by_energy(ctx.n, ctx.g, range(top + shift + 1))
    kept = {e: {m - shift for m in ms} for e, ms in lower.items() if min(ms) >= shift}
    dropped = len(lower) - len(kept)
    passed = upper == kept and dropped == shift
    return passed, f"{len(upper)} levels at g+1 match g above its lowest {dropped} (want {shift})"


def _check_special_cases(cell: Cell) -> Outcome:
    ctx, top = _ctx(cell), cell.bounds.max_level
    mismatches = 0
    total = 0
    for m in range(top + 1):
        if ctx.n == 2:
            for k in enumerate_levels(ModelVariant.ANGULAR, 2, m):
                q = ctx.g + k[1]
                entry = energy(ModelVariant.ANGULAR, 2, ctx.g, None, k)
                mismatches += entry.q != q or entry.energy != q * q / 2
                total += 1
        if ctx.n == 3:
            for k in enumerate_levels(ModelVariant.RELATIVE_ANGULAR, 3, m):
                entry = energy(ModelVariant.RELATIVE_ANGULAR, 3, ctx.g, None, k)
                mismatches += entry.energy != Fraction(9, 2) * (ctx.g + k[3]) ** 2
                total += 1
    return mismatches == 0, f"{total - mismatches}/{total} closed forms reproduced"


def _check_oscillator(cell: Cell) -> Outcome:
    ctx, m = _ctx(cell), _level(cell)
    labels = enumerate_levels(ModelVariant.FULL, ctx.n, m)
    omega = cell.bounds.omega
    failed = [k for k in labels if not oscillator_residual(oscillator_state(ctx, omega, k)).is_zero]
    if failed:
        return False, f"(H - E) Psi_k != 0 for k in {[str(k) for k in failed]}"
    return True, f"{len(labels)} eigenstates with E = omega (q + n/2 + m)"


def _check_lax(cell: Cell) -> Outcome:
    ctx, omega = _ctx(cell), cell.bounds.omega
    ground = vandermonde(ctx.n) ** int(ctx.g)
    good = []
    for ell in range(1, min(3, ctx.n) + 1):
        prefactor = lax_creation_state(ctx, omega, ell)
        k = MultiIndex(tuple(1 if i == ell else 0 for i in range(1, ctx.n + 1)))
        reference = oscillator_state(ctx, omega, k)
        state = OscillatorState(
            ctx=ctx,
            omega=omega,
            k=k,
            symmetric_part=exact_divide(prefactor, ground),
            prefactor=prefactor,
            energy=reference.energy,
        )
        good.append(oscillator_residual(state).is_zero)
    return all(good), f"A_l^+ Psi_0 eigenstates for l <= {len(good)}: {good}"


def _check_coxeter(cell: Cell) -> Outcome:
    rs, g, m = _root_system(cell), cell.g, _level(cell)
    assert g is not None
    harmonics = [coxeter_deformed_harmonic(rs, g, k) for k in enumerate_coxeter_levels(rs, m)]
    harmonic = all(coxeter_laplacian(rs, g, h).is_zero for h in harmonics)
    rank = polynomial_rank(harmonics)
    expected = harmonic_count(rs, m)
    return harmonic and rank == expected, f"harmonic {harmonic}, rank {rank}/{expected}"


def _check_coxeter_a2(cell: Cell) -> Outcome:
    assert cell.g is not None
    top = cell.bounds.max_level
    dihedral = coxeter_spectrum_table(build_root_system("I2", 2, 3), cell.g, top)
    relative = spectrum_table(ModelVariant.RELATIVE_ANGULAR, 3, cell.g, None, top)
    same = [(r.epsilon, r.degeneracy) for r in dihedral] == [
        (r.energy, r.degeneracy) for r in relative
    ]
    return same, f"I2(3) and A2 relative-angular tables agree up to m = {top}"


def _check_type_a_path(cell: Cell) -> Outcome:
    ctx, m = _ctx(cell), _level(cell)
    rs = build_root_system("A", ctx.n - 1)
    row = coxeter_spectrum_table(rs, ctx.g, m)[-1]
    reference = spectrum_table(ModelVariant.ANGULAR, ctx.n, ctx.g, None, m)[-1]
    table = row.epsilon == reference.energy and row.degeneracy == reference.degeneracy
    labels = enumerate_levels(ModelVariant.ANGULAR, ctx.n, m)
    equal = all(
        coxeter_deformed_harmonic(rs, ctx.g, from_type_a_index(k))
        == deformed_harmonic(ctx, k).poly
        for k in labels
    )
    return table and equal, f"spectrum {table}, {len(labels)} harmonics equal {equal}"


def _check_exchange(cell: Cell) -> Outcome:
    rs = _root_system(cell)
    assert cell.g is not None
    report = gauged_hamiltonian_check(
        rs, cell.g, cell.bounds.omega, squared_radius(rs.dimension), seed=cell.bounds.seed
    )
    return report.passed, (
        f"identity {report.identity}, creators commute {report.creators_commute}, "
        f"ladder {report.ladder}"
    )


def _check_coxeter_intertwining(cell: Cell) -> Outcome:
    rs = _root_system(cell)
    assert cell.g is not None
    if rs.is_dihedral:
        return True, "skipped: orbit intertwiner needs rational roots"
    radius = squared_radius(rs.dimension)
    inputs = [MultiPoly.constant(rs.dimension, 1), *rs.invariants, radius**2]
    residuals = [
        coxeter_intertwining_residual(rs, cell.g, orbit, f).is_zero
        for orbit in rs.orbits
        for f in inputs
    ]
    return all(residuals), f"{sum(residuals)}/{len(residuals)} orbit residuals vanish"


def _check_spin(cell: Cell) -> Outcome:
    assert cell.n is not None and cell.m is not None
    counted = 0
    for s in range(1, cell.bounds.max_s + 1):
        for variant in ModelVariant:
            spin_content(variant, cell.n, cell.m, s)
            counted += 1
    return True, f"{counted} spin contents with nonnegative multiplicities"


def _random_diagram(rng: random.Random, s: int) -> YoungDiagram:
    rows = sorted((rng.randint(0, 4) for _ in range(rng.randint(0, s))), reverse=True)
    return YoungDiagram(tuple(rows))


def _check_pieri(cell: Cell) -> Outcome:
    rng = random.Random(cell.bounds.seed)
    failures = 0
    for _ in range(PIERI_SAMPLES):
        s = rng.randint(1, cell.bounds.max_s)
        diagram = _random_diagram(rng, s)
        ell = rng.randint(0, 4)
        product = pieri_product(VirtualCharacter.irrep(s, diagram), ell)
        expected = irrep_dimension(s, diagram) * irrep_dimension(s, YoungDiagram.row(ell))
        failures += product.dimension() != expected
    return failures == 0, f"{PIERI_SAMPLES - failures}/{PIERI_SAMPLES} products conserve dimension"


@dataclass(frozen=True)
class _Suite:
    cells: Callable[[VerifyBounds], Iterator[Cell]]
    run: Callable[[Cell], Outcome]


def _suites() -> dict[CheckName, _Suite]:
    c = CheckName
    return {
        c.HARMONICITY: _Suite(
            lambda b: _grid(c.HARMONICITY, b, b.gs, b.max_level), _check_harmonicity
        ),
        c.DEGENERACY: _Suite(
            lambda b: _grid(c.DEGENERACY, b, b.gs, b.max_level), _check_degeneracy
        ),
        c.RELATIVE: _Suite(lambda b: _grid(c.RELATIVE, b, b.gs, b.max_level), _check_relative),
        c.EXCLUSION: _Suite(lambda b: _per_coupling(c.EXCLUSION, b, b.gs), _check_exclusion),
        c.INTERTWINING: _Suite(
            lambda b: _grid(c.INTERTWINING, b, b.gs, b.max_level), _check_intertwining
        ),
        c.KERNEL: _Suite(lambda b: _grid(c.KERNEL, b, b.integer_gs, b.max_level), _check_kernel),
        c.TRANSPORT: _Suite(
            lambda b: _grid(c.TRANSPORT, b, b.integer_gs, b.max_level), _check_transport
        ),
        c.ISOSPECTRAL: _Suite(
            lambda b: _per_coupling(c.ISOSPECTRAL, b, b.gs), _check_isospectral
        ),
        c.SPECIAL_CASES: _Suite(
            lambda b: _per_coupling(c.SPECIAL_CASES, b, b.gs), _check_special_cases
        ),
        c.OSCILLATOR: _Suite(
            lambda b: _grid(
                c.OSCILLATOR, b, b.integer_gs, min(b.max_level, OSCILLATOR_MAX_LEVEL)
            ),
            _check_oscillator,
        ),
        c.LAX: _Suite(lambda b: _per_coupling(c.LAX, b, b.integer_gs), _check_lax),
        c.COXETER: _Suite(lambda b: _per_root_system(c.COXETER, b, levels=True), _check_coxeter),
        c.COXETER_A2: _Suite(
            lambda b: (Cell(c.COXETER_A2, b, g=g) for g in b.gs), _check_coxeter_a2
        ),
        c.TYPE_A_PATH: _Suite(
            lambda b: _grid(c.TYPE_A_PATH, b, b.gs, b.max_level), _check_type_a_path
        ),
        c.EXCHANGE: _Suite(
            lambda b: _per_root_system(c.EXCHANGE, b, levels=False), _check_exchange
        ),
        c.COXETER_INTERTWINING: _Suite(
            lambda b: _per_root_system(c.COXETER_INTERTWINING, b, levels=False),
            _check_coxeter_intertwining,
        ),
        c.SPIN: _Suite(
            lambda b: (
                Cell(c.SPIN, b, n=n, m=m) for n in b.ns for m in range(b.max_level + 1)
            ),
            _check_spin,
        ),
        c.PIERI: _Suite(lambda b: iter([Cell(c.PIERI, b)]), _check_pieri),
    }


SUITES = _suites()


def expand_cells(bounds: VerifyBounds, checks: list[CheckName]) -> list[Cell]:
    """All cells of the requested checks, grouped by check in the given order."""
    return [cell for check in checks for cell in SUITES[check].cells(bounds)]


def run_cell(cell: Cell) -> CheckResult:
    """Run one cell; library verification errors become failed results."""
    start = time.perf_counter()
    try:
        passed, detail = SUITES[cell.check].run(cell)
    except CalogeroError as e:
        passed, detail = False, f"{type(e).__name__}: {e}"
    seconds = time.perf_counter() - start
    if not passed:
        logger.warning("%s failed (n=%s g=%s m=%s): %s", cell.check, cell.n, cell.g, cell.m, detail)
    return CheckResult(
        check=cell.check,
        n=cell.n,
        g=cell.g,
        m=cell.m,
        root_system=cell.root_system,
        passed=passed,
        detail=detail,
        seconds=round(seconds, 6),
    )


def run_verification(
    bounds: VerifyBounds, checks: list[CheckName], jobs: int = 1
) -> VerificationReport:
    """Run every cell of the checks and assemble the report.

    Args:
        bounds: Parameter ranges
        checks: Checks to run, in report order
        jobs: Worker processes; 1 runs in this process

    Returns:
        The report; ``passed`` is True iff every cell passed

    """
    start = time.perf_counter()
    cells = expand_cells(bounds, checks)
    logger.info("running %d cells of %d checks with %d job(s)", len(cells), len(checks), jobs)
    if jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_cell, cells))
    else:
        results = [run_cell(cell) for cell in cells]
    counts: dict[str, CheckCount] = {}
    for check in checks:
        mine = [r for r in results if r.check == check]
        good = sum(r.passed for r in mine)
        counts[str(check)] = CheckCount(passed=good, failed=len(mine) - good)
        logger.info("%s: %d passed, %d failed", check, good, len(mine) - good)
    failed = sum(not r.passed for r in results)
    return VerificationReport(
        passed=failed == 0,
        total=len(results),
        failed=failed,
        counts=counts,
        results=results,
        seconds=round(time.perf_counter() - start, 6),
    )
