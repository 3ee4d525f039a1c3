"""CLI module for command-line operations."""

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Annotated, Any

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from .cache import HarmonicCache, HarmonicRecord
from .config import CACHE_ENV_VAR, OutputFormat, RunConfig, parse_couplings
from .coxeter import (
    CoxeterSpectrumRow,
    RootSystemRecord,
    coxeter_spectrum_table,
    parse_root_system,
    root_system_record,
)
from .dunkl import DunklContext
from .errors import CalogeroError, IdentityViolationError, VerificationError
from .harmonics import (
    DeformedHarmonic,
    deformed_harmonic,
    oscillator_residual,
    oscillator_state,
    relative_oscillator_state,
    require_harmonic,
)
from .polycore import format_poly, normalize_leading, restrict_to_hyperplane
from .serialization import Rational, Record
from .spectra import (
    ModelVariant,
    MultiIndex,
    SpectrumEntry,
    SpectrumRow,
    check_variant,
    level_energy,
    spectrum_table,
)
from .spinrep import CharacterRecord, character_record, fermionic_vacuum, spin_content
from .verify import CheckName, VerificationReport, VerifyBounds, run_verification

app = typer.Typer(
    name="angular-calogero",
    help="Exact spectra, eigenfunctions and identity checks for the angular Calogero-Moser model",
    add_completion=False,
)

logger = logging.getLogger(__name__)

EXIT_VERIFICATION_FAILED = 3


class SpectrumReport(Record):
    """Spectrum table of one model variant."""

    variant: ModelVariant
    n: int
    g: Rational
    omega: Rational | None
    units: str
    rows: list[SpectrumRow]


class EigenfunctionRecord(Record):
    """A deformed harmonic as emitted by ``eigenfunction``: normalized, with its eigenvalue."""

    variant: ModelVariant
    n: int
    g: Rational
    k: list[int]
    m: int
    q: Rational
    epsilon: Rational
    poly: str
    restricted: str | None
    verified: bool


class OscillatorRecord(Record):
    """Psi_k = prefactor * exp(-omega r^2 / 2) with its energy."""

    variant: ModelVariant
    n: int
    g: Rational
    omega: Rational
    k: list[int]
    energy: Rational
    symmetric_part: str
    prefactor: str | None
    verified: bool


class RootsReport(Record):
    """Root-system data with its angular spectrum."""

    root_system: RootSystemRecord
    rows: list[CoxeterSpectrumRow]


class ConfigLoader:
    """Turn raw option values into a validated RunConfig."""

    @staticmethod
    def build(**values: Any) -> RunConfig:
        """Validate options.

        Raises:
            typer.BadParameter: If any value is out of range or malformed

        """
        try:
            return RunConfig(**{k: v for k, v in values.items() if v is not None})
        except ValidationError as e:
            problems = "; ".join(
                f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()
            )
            raise typer.BadParameter(problems) from e

    @staticmethod
    def multi_index(text: str, n: int) -> MultiIndex:
        """Parse k for n particles; a bare ``0`` is the ground state.

        Raises:
            typer.BadParameter: If k is malformed or has the wrong length

        """
        try:
            k = MultiIndex.parse(text)
        except ValueError as e:
            raise typer.BadParameter(str(e), param_hint="--k") from e
        if k.k == (0,):
            return MultiIndex.zero(n)
        if k.n != n:
            raise typer.BadParameter(f"k has {k.n} entries, expected {n}", param_hint="--k")
        return k


class Emitter:
    """Write records to stdout."""

    @staticmethod
    def emit_json(payload: Record) -> None:
        """Key-sorted JSON of a record."""
        typer.echo(payload.to_json())

    @staticmethod
    def console() -> Console:
        """Console bound to the current stdout."""
        return Console(highlight=False, soft_wrap=True)


class SpectrumPrinter:
    """Render spectrum tables."""

    @staticmethod
    def report(config: RunConfig) -> SpectrumReport:
        """Tabulate levels 0..max_level of the configured variant."""
        omega = None if config.variant.is_angular else config.omega
        rows = spectrum_table(config.variant, config.n, config.g, omega, config.max_level)
        return SpectrumReport(
            variant=config.variant,
            n=config.n,
            g=config.g,
            omega=omega,
            units="dimensionless" if config.variant.is_angular else "omega",
            rows=rows,
        )

    @staticmethod
    def output(report: SpectrumReport, output: OutputFormat) -> None:
        """Output the table in the requested format."""
        match output:
            case OutputFormat.JSON:
                Emitter.emit_json(report)
            case OutputFormat.TEXT:
                heading = "eps" if report.variant.is_angular else "E/omega"
                table = Table(title=f"{report.variant} n={report.n} g={report.g}")
                for column in ("m", heading, "q", "degeneracy", "states"):
                    table.add_column(column)
                for row in report.rows:
                    states = " ".join("(" + ",".join(map(str, k)) + ")" for k in row.states)
                    q = "" if row.q is None else str(row.q)
                    table.add_row(str(row.level), str(row.energy), q, str(row.degeneracy), states)
                Emitter.console().print(table)


class EigenfunctionEmitter:
    """Build, verify and emit deformed harmonics."""

    @staticmethod
    def harmonic(config: RunConfig, k: MultiIndex) -> tuple[DeformedHarmonic, bool]:
        """Return the harmonic and whether L(g) was checked in this run.

        Raises:
            HarmonicityLostError: If L(g) h is nonzero

        """
        ctx = DunklContext(config.n, config.g)
        relative = config.variant is ModelVariant.RELATIVE_ANGULAR
        if config.cache_dir is None:
            harmonic = deformed_harmonic(ctx, k, relative=relative)
            require_harmonic(ctx, harmonic)
            return harmonic, True
        cache = HarmonicCache(config.cache_dir, trust=config.trust_cache)
        harmonic, cached = cache.get_or_build(ctx, k, relative=relative)
        logger.info("h_(%s) %s", k, "loaded from cache" if cached else "computed and cached")
        return harmonic, not (cached and config.trust_cache)

    @staticmethod
    def record(config: RunConfig, k: MultiIndex) -> EigenfunctionRecord:
        """Normalized h_k with q and eps."""
        harmonic, verified = EigenfunctionEmitter.harmonic(config, k)
        normalized = normalize_leading(harmonic.poly)
        restricted = None
        if harmonic.relative:
            restricted = format_poly(normalize_leading(restrict_to_hyperplane(harmonic.poly)))
        return EigenfunctionRecord(
            variant=config.variant,
            n=config.n,
            g=config.g,
            k=list(k.k),
            m=harmonic.m,
            q=harmonic.q,
            epsilon=level_energy(config.variant, config.n, config.g, harmonic.m),
            poly=format_poly(normalized),
            restricted=restricted,
            verified=verified,
        )


class OscillatorEmitter:
    """Build full and relative oscillator eigenstates."""

    @staticmethod
    def record(config: RunConfig, k: MultiIndex) -> OscillatorRecord:
        """Psi_k for the Full variant, its chi_0 component for Relative.

        Raises:
            IdentityViolationError: If the full eigen-equation residual is nonzero

        """
        ctx = DunklContext(config.n, config.g)
        if config.variant is ModelVariant.RELATIVE:
            relative = relative_oscillator_state(ctx, config.omega, k)
            return OscillatorRecord(
                variant=config.variant,
                n=config.n,
                g=config.g,
                omega=config.omega,
                k=list(k.k),
                energy=relative.energy,
                symmetric_part=format_poly(relative.symmetric_part),
                prefactor=None,
                verified=False,
            )
        state = oscillator_state(ctx, config.omega, k)
        verified = oscillator_residual(state).is_zero
        if not verified:
            raise IdentityViolationError(f"(H - E) Psi_({k}) is nonzero at g={config.g}")
        return OscillatorRecord(
            variant=config.variant,
            n=config.n,
            g=config.g,
            omega=config.omega,
            k=list(k.k),
            energy=state.energy,
            symmetric_part=format_poly(state.symmetric_part),
            prefactor=format_poly(state.prefactor),
            verified=verified,
        )


class Verifier:
    """Run the verification suites and report."""

    @staticmethod
    def output(report: VerificationReport, output: OutputFormat) -> None:
        """Output the report in the requested format."""
        match output:
            case OutputFormat.JSON:
                Emitter.emit_json(report)
            case OutputFormat.TEXT:
                for name, count in report.counts.items():
                    status = "PASS" if count.failed == 0 else "FAIL"
                    typer.echo(f"{status} {name}: {count.passed} passed, {count.failed} failed")
                for result in report.results:
                    if not result.passed:
                        where = ", ".join(
                            f"{label}={value}"
                            for label, value in (
                                ("n", result.n),
                                ("g", result.g),
                                ("m", result.m),
                                ("root system", result.root_system),
                            )
                            if value is not None
                        )
                        typer.echo(f"  {result.check} [{where}]: {result.detail}")
                typer.echo(f"{report.total - report.failed}/{report.total} cells passed")


def _fail(error: CalogeroError) -> typer.Exit:
    typer.echo(f"Error: {error}", err=True)
    if isinstance(error, VerificationError):
        return typer.Exit(EXIT_VERIFICATION_FAILED)
    return typer.Exit(2)


@app.callback()
def main(
    verbose: Annotated[
        int, typer.Option("--verbose", "-v", count=True, help="Log INFO (-v) or DEBUG (-vv)")
    ] = 0,
) -> None:
    """Exact spectra, eigenfunctions and identity checks for the angular Calogero-Moser model."""
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


@app.command()
def spectrum(
    n: Annotated[int, typer.Option(help="Number of particles")] = 3,
    g: Annotated[str, typer.Option(help="Coupling g as p/q")] = "1",
    variant: Annotated[ModelVariant, typer.Option(help="Model variant")] = ModelVariant.ANGULAR,
    omega: Annotated[str, typer.Option(help="Frequency (Full/Relative only)")] = "1",
    max_level: Annotated[int, typer.Option(help="Highest level m")] = 6,
    output: Annotated[OutputFormat, typer.Option(help="Output format")] = OutputFormat.TEXT,
) -> None:
    """Tabulate energies, q and degeneracies level by level."""
    config = ConfigLoader.build(
        n=n, g=g, variant=variant, omega=omega, max_level=max_level, output=output
    )
    try:
        report = SpectrumPrinter.report(config)
    except CalogeroError as e:
        raise _fail(e) from e
    SpectrumPrinter.output(report, config.output)


@app.command()
def eigenfunction(
    k: Annotated[str, typer.Option(help="Quantum numbers k_1,...,k_n (or 0)")],
    n: Annotated[int, typer.Option(help="Number of particles")] = 3,
    g: Annotated[str, typer.Option(help="Coupling g as p/q")] = "1",
    variant: Annotated[
        ModelVariant, typer.Option(help="angular or relative-angular")
    ] = ModelVariant.ANGULAR,
    cache_dir: Annotated[
        Path | None, typer.Option(envvar=CACHE_ENV_VAR, help="Directory of cached harmonics")
    ] = None,
    trust_cache: Annotated[
        bool, typer.Option("--trust-cache", help="Skip the L(g) re-check of cached harmonics")
    ] = False,
    output: Annotated[OutputFormat, typer.Option(help="Output format")] = OutputFormat.TEXT,
) -> None:
    """Emit the normalized deformed harmonic h_k with q and eps."""
    config = ConfigLoader.build(
        n=n,
        g=g,
        variant=variant,
        cache_dir=cache_dir,
        trust_cache=trust_cache,
        output=output,
    )
    if not config.variant.is_angular:
        raise typer.BadParameter("harmonics exist for angular variants", param_hint="--variant")
    index = ConfigLoader.multi_index(k, config.n)
    try:
        check_variant(config.variant, index)
        record = EigenfunctionEmitter.record(config, index)
    except CalogeroError as e:
        if not isinstance(e, VerificationError):
            raise typer.BadParameter(str(e), param_hint="--k") from e
        raise _fail(e) from e
    match config.output:
        case OutputFormat.JSON:
            Emitter.emit_json(record)
        case OutputFormat.TEXT:
            typer.echo(f"h_({index}) = {record.poly}")
            if record.restricted is not None:
                typer.echo(f"on sum x_i = 0: {record.restricted}")
            typer.echo(f"m = {record.m}, q = {record.q}, eps = {record.epsilon}")
            typer.echo(f"verified: {record.verified}")


@app.command()
def oscillator(
    k: Annotated[str, typer.Option(help="Quantum numbers k_1,...,k_n (or 0)")],
    n: Annotated[int, typer.Option(help="Number of particles")] = 3,
    g: Annotated[str, typer.Option(help="Integer coupling g")] = "1",
    omega: Annotated[str, typer.Option(help="Frequency")] = "1",
    variant: Annotated[ModelVariant, typer.Option(help="full or relative")] = ModelVariant.FULL,
    output: Annotated[OutputFormat, typer.Option(help="Output format")] = OutputFormat.TEXT,
) -> None:
    """Emit the oscillator eigenstate Psi_k and its energy in units of omega."""
    config = ConfigLoader.build(n=n, g=g, omega=omega, variant=variant, output=output)
    if config.variant.is_angular:
        raise typer.BadParameter("oscillator states need full or relative", param_hint="--variant")
    index = ConfigLoader.multi_index(k, config.n)
    try:
        check_variant(config.variant, index)
        record = OscillatorEmitter.record(config, index)
    except CalogeroError as e:
        if not isinstance(e, VerificationError):
            raise typer.BadParameter(str(e)) from e
        raise _fail(e) from e
    match config.output:
        case OutputFormat.JSON:
            Emitter.emit_json(record)
        case OutputFormat.TEXT:
            typer.echo(f"E = {record.energy}")
            typer.echo(f"symmetric part: {record.symmetric_part}")
            if record.prefactor is not None:
                typer.echo(f"prefactor: {record.prefactor}")


@app.command()
def verify(
    checks: Annotated[
        list[CheckName] | None, typer.Option("--checks", help="Checks to run (repeatable)")
    ] = None,
    n: Annotated[list[int] | None, typer.Option("--n", help="Particle numbers")] = None,
    g: Annotated[list[str] | None, typer.Option("--g", help="Couplings as p/q")] = None,
    m: Annotated[int, typer.Option("--m", help="Highest level")] = 6,
    omega: Annotated[str, typer.Option(help="Frequency of oscillator checks")] = "1",
    root_system: Annotated[
        list[str] | None, typer.Option("--root-system", help="Coxeter systems to check")
    ] = None,
    max_s: Annotated[int, typer.Option(help="Largest SU(s) of the spin checks")] = 4,
    seed: Annotated[int, typer.Option(help="Seed of randomized probes")] = 0,
    jobs: Annotated[int, typer.Option(help="Worker processes")] = 1,
    output: Annotated[OutputFormat, typer.Option(help="Output format")] = OutputFormat.TEXT,
) -> None:
    """Run the exact identity suites; exit 3 on any failure."""
    config = ConfigLoader.build(omega=omega, seed=seed, jobs=jobs, output=output, max_level=m)
    if any(value < 2 for value in n or []):
        raise typer.BadParameter("n must be at least 2", param_hint="--n")
    bound_values: dict[str, Any] = {
        "ns": n,
        "gs": g,
        "max_level": config.max_level,
        "omega": config.omega,
        "root_systems": root_system,
        "max_s": max_s,
        "seed": config.seed,
    }
    try:
        bounds = VerifyBounds(**{k: v for k, v in bound_values.items() if v is not None})
    except ValidationError as e:
        raise typer.BadParameter(str(e)) from e
    if any(value < 0 for value in bounds.gs):
        raise typer.BadParameter("couplings must be nonnegative", param_hint="--g")
    for tag in bounds.root_systems:
        try:
            parse_root_system(tag)
        except (CalogeroError, ValueError) as e:
            raise typer.BadParameter(str(e), param_hint="--root-system") from e
    report = run_verification(bounds, list(checks or CheckName), config.jobs)
    Verifier.output(report, config.output)
    if not report.passed:
        raise typer.Exit(EXIT_VERIFICATION_FAILED)


@app.command()
def spin(
    m: Annotated[int, typer.Option("--m", help="Level")],
    n: Annotated[int, typer.Option(help="Number of particles")] = 3,
    s: Annotated[int, typer.Option(help="Number of spin flavors")] = 2,
    variant: Annotated[ModelVariant, typer.Option(help="Model variant")] = ModelVariant.ANGULAR,
    output: Annotated[OutputFormat, typer.Option(help="Output format")] = OutputFormat.TEXT,
) -> None:
    """Decompose the SU(s) content of level m."""
    config = ConfigLoader.build(n=n, s=s, variant=variant, max_level=m, output=output)
    try:
        character = spin_content(config.variant, config.n, config.max_level, config.s)
    except CalogeroError as e:
        raise _fail(e) from e
    record = character_record(config.variant, config.n, config.max_level, character)
    match config.output:
        case OutputFormat.JSON:
            Emitter.emit_json(record)
        case OutputFormat.TEXT:
            typer.echo(f"{record.variant} n={record.n} m={record.m} SU({record.s}):")
            typer.echo(f"  {record.character}")
            for term in record.terms:
                typer.echo(f"  {term.multiplicity} x {term.diagram} (dim {term.dimension})")
            typer.echo(f"  total dimension {record.dimension}")
            typer.echo(f"  fermionic vacuum {fermionic_vacuum(record.n, record.s)}")


@app.command()
def roots(
    root_system: Annotated[str, typer.Argument(help="A3, B2, D4 or I2(p)")],
    g: Annotated[str, typer.Option(help="Multiplicity, or orbit=value pairs")] = "1",
    max_level: Annotated[int, typer.Option(help="Highest level m")] = 6,
    output: Annotated[OutputFormat, typer.Option(help="Output format")] = OutputFormat.TEXT,
) -> None:
    """Describe a root system and its angular spectrum."""
    try:
        rs = parse_root_system(root_system)
        couplings = parse_couplings(g)
    except (CalogeroError, ValueError) as e:
        raise typer.BadParameter(str(e)) from e
    scalar = couplings if isinstance(couplings, Fraction) else Fraction(0)
    config = ConfigLoader.build(
        g=scalar,
        couplings=couplings if isinstance(couplings, dict) else None,
        root_system=root_system,
        max_level=max_level,
        output=output,
    )
    try:
        weights = rs.couplings(config.coupling_for_roots())
    except ValueError as e:
        raise typer.BadParameter(str(e), param_hint="--g") from e
    report = RootsReport(
        root_system=root_system_record(rs, weights),
        rows=coxeter_spectrum_table(rs, weights, config.max_level),
    )
    match config.output:
        case OutputFormat.JSON:
            Emitter.emit_json(report)
        case OutputFormat.TEXT:
            record = report.root_system
            count = len(rs.roots) or rs.p
            typer.echo(f"{record.tag}: {count} positive roots, degrees {record.degrees}")
            for orbit, value in record.multiplicities.items():
                typer.echo(f"  g_{orbit} = {value}")
            typer.echo(f"  S = {record.coupling_total}")
            for row in report.rows:
                typer.echo(
                    f"  m={row.level} q={row.q} eps={row.epsilon} degeneracy={row.degeneracy}"
                )


@app.command()
def schema() -> None:
    """Print the JSON schemas of the emitted records."""
    models: dict[str, type[Record]] = {
        "CharacterRecord": CharacterRecord,
        "EigenfunctionRecord": EigenfunctionRecord,
        "HarmonicRecord": HarmonicRecord,
        "OscillatorRecord": OscillatorRecord,
        "RootsReport": RootsReport,
        "SpectrumEntry": SpectrumEntry,
        "SpectrumReport": SpectrumReport,
        "VerificationReport": VerificationReport,
    }
    schemas = {name: model.model_json_schema() for name, model in models.items()}
    typer.echo(json.dumps(schemas, indent=2, sort_keys=True))


if __name__ == "__main__":
    app()
