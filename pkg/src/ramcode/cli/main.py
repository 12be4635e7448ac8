"""
Command-line interface for ramcode.

Reports go to stdout (or --out files) as JSON; failures print
{"error": <code>, "message": <text>} on stderr and exit nonzero.
"""

import functools
import json
from pathlib import Path
from typing import Any, Callable, Optional

import typer
from rich.console import Console
from rich.table import Table

from ..core.config import settings
from ..core.exceptions import RamcodeError
from ..core.logging import get_module_logger, setup_logging
from ..models.base import BaseModel
from ..models.reports import InspectReport
from ..services.build_service import BuildService, parse_poly
from ..services.decode_service import DecodeService, ErrorType
from ..services.params_service import ParamsService, parse_budget
from ..services.simulation_service import SimulationService
from ..services.storage import StorageService

app = typer.Typer(
    name="ramcode",
    help="ramcode - quantum CSS/LDPC codes from chain complexes",
    add_completion=False,
    no_args_is_help=True,
)
build_app = typer.Typer(help="Build complexes and classical codes.", no_args_is_help=True)
app.add_typer(build_app, name="build")

console = Console()
logger = get_module_logger("cli.main")


def _fail(code: str, message: str, status: int = 1) -> None:
    typer.echo(json.dumps({"error": code, "message": message}, sort_keys=True), err=True)
    raise typer.Exit(status)


def handle_errors(fn: Callable) -> Callable:
    """Turn ramcode and I/O errors into the machine-readable failure line."""

    @functools.wraps(fn)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return fn(*args, **kwargs)
        except RamcodeError as exc:
            logger.debug(f"{fn.__name__} failed: {exc.code}")
            _fail(exc.code, exc.message)
        except OSError as exc:
            _fail("io_error", str(exc))

    return wrapper


def _emit(model: BaseModel, out: Optional[Path]) -> None:
    if out is None:
        typer.echo(model.to_json(), nl=False)
        return
    StorageService().write_model(out, model)
    console.print(f"[bold green]✓[/bold green] wrote {out}")


@app.callback()
def main_callback(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log at DEBUG level"),
):
    """Quantum CSS/LDPC codes from chain complexes."""
    if verbose:
        setup_logging(level="DEBUG")


@app.command()
def version():
    """Show ramcode version."""
    console.print(f"[bold blue]ramcode[/bold blue] version [bold]{settings.version}[/bold]")


@app.command()
def config():
    """Print the resolved settings as JSON."""
    typer.echo(json.dumps(settings.model_dump(mode="json"), sort_keys=True, indent=2))


# -- build -----------------------------------------------------------------


@build_app.command("torus")
@handle_errors
def build_torus(
    r: int = typer.Option(3, "--r", help="Rows of the grid"),
    c: int = typer.Option(3, "--c", help="Columns of the grid"),
    out: Path = typer.Option(..., "--out", "-o", help="Complex JSON file"),
):
    """Triangulated r x c torus."""
    X = BuildService().torus(r, c)
    StorageService().save_complex(out, X)
    console.print(f"[bold green]✓[/bold green] torus T({r},{c}) with face counts {X.face_counts} -> {out}")


@build_app.command("lsv")
@handle_errors
def build_lsv(
    q: int = typer.Option(2, "--q", help="Field size, a prime power"),
    d: int = typer.Option(3, "--d", help="Degree of the cyclic algebra"),
    e: int = typer.Option(2, "--e", help="Degree of p_y"),
    poly: str = typer.Option(..., "--poly", help="p_y coefficients, constant term first, e.g. 1,1,1"),
    max_size: Optional[int] = typer.Option(None, "--max-size", help="Largest group to enumerate"),
    links: bool = typer.Option(True, "--links/--no-links", help="Summarize vertex links"),
    out: Path = typer.Option(..., "--out", "-o", help="Complex JSON file"),
    report: Optional[Path] = typer.Option(None, "--report", help="Build report JSON file"),
):
    """Quotient complex of the Cartwright–Steger lattice."""
    X, build_report = BuildService().lsv(q, d, e, parse_poly(poly), max_size, with_links=links)
    storage = StorageService()
    storage.save_complex(out, X)
    if report is not None:
        build_report.config.outputs = {"complex": str(out), "report": str(report)}
        storage.write_model(report, build_report)

    table = Table(title=f"LSV quotient (q={q}, d={d}, e={e})")
    table.add_column("Metric", style="bold")
    table.add_column("Value", style="green")
    table.add_row("Group size", str(build_report.group_size))
    table.add_row("Face counts", str(build_report.face_counts))
    table.add_row("Vertex degree", str(build_report.vertex_degree.max_degree))
    table.add_row("Triangles per edge", str(build_report.edge_triangle_degree.max_degree))
    if build_report.link is not None:
        table.add_row("Link girth", str(build_report.link.girth))
    console.print(table)


@build_app.command("code")
@handle_errors
def build_code(
    kind: str = typer.Option(..., "--kind", "-k", help="path or ldpc"),
    m: Optional[int] = typer.Option(None, "--m", help="Path length"),
    n: Optional[int] = typer.Option(None, "--n", help="LDPC length"),
    dv: Optional[int] = typer.Option(None, "--dv", help="LDPC bit degree"),
    dc: Optional[int] = typer.Option(None, "--dc", help="LDPC check degree"),
    seed: Optional[int] = typer.Option(None, "--seed", help="LDPC graph seed"),
    radius_trials: Optional[int] = typer.Option(
        None, "--radius-trials", help="Trials per weight for the LDPC decoder radius estimate"
    ),
    out: Path = typer.Option(..., "--out", "-o", help="Matrix file (.json keeps the code kind)"),
):
    """Classical component code."""
    code = BuildService().code(kind.lower(), m=m, n=n, dv=dv, dc=dc, seed=seed, radius_trials=radius_trials)
    StorageService().save_code(out, code)
    console.print(
        f"[bold green]✓[/bold green] {code.kind.value} code [{code.n_bits}, {code.k}], radius {code.decoder_radius} -> {out}"
    )


# -- product and parameters ------------------------------------------------


@app.command()
@handle_errors
def product(
    complex_file: Path = typer.Option(..., "--complex", help="2-complex JSON file"),
    code_file: Path = typer.Option(..., "--code", help="Classical code file"),
    out: Path = typer.Option(..., "--out", "-o", help="Product JSON file"),
):
    """Build the product of a 2-complex and a classical code."""
    storage = StorageService()
    P = BuildService().product(storage.load_complex(complex_file), storage.load_code(code_file))
    storage.save_product(out, P)
    console.print(f"[bold green]✓[/bold green] product code with N={P.n} -> {out}")


@app.command()
@handle_errors
def params(
    code_file: Path = typer.Argument(..., help="Product JSON file"),
    budget: str = typer.Option("2^22", "--budget", help="Enumeration budget, e.g. 2^22"),
    cap: Optional[int] = typer.Option(None, "--cap", help="Weight cap for the fallback search"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Report JSON file"),
):
    """Compute [[N, K, D_X, D_Z]] with provenance."""
    P = StorageService().load_product(code_file)
    outputs = {"report": str(out)} if out else {}
    report = ParamsService().params(
        P, budget=parse_budget(budget), cap=cap, inputs={"code": str(code_file)}, outputs=outputs
    )
    _emit(report, out)


# -- decoding --------------------------------------------------------------


@app.command()
@handle_errors
def decode(
    code_file: Path = typer.Option(..., "--code", help="Product or complex JSON file"),
    error_type: ErrorType = typer.Option(..., "--type", "-t", help="x, x-path, z, local or single-edge"),
    syndrome_file: Path = typer.Option(..., "--syndrome", "-s", help="Syndrome vector file"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Outcome JSON file"),
):
    """Decode one syndrome."""
    storage = StorageService()
    outcome = DecodeService().decode(
        storage.load_any(code_file), error_type, storage.read_vector(syndrome_file)
    )
    _emit(outcome, out)


@app.command()
@handle_errors
def simulate(
    code_file: Path = typer.Option(..., "--code", help="Product or complex JSON file"),
    error_type: ErrorType = typer.Option(..., "--type", "-t", help="x, x-path, z, local or single-edge"),
    weight: int = typer.Option(..., "--weight", "-w", help="Error weight"),
    up_to: bool = typer.Option(False, "--up-to", help="Draw weights uniformly from 1..weight"),
    trials: int = typer.Option(settings.simulation.trials, "--trials", "-n", help="Number of trials"),
    seed: int = typer.Option(settings.simulation.seed, "--seed", help="Master seed"),
    report: Optional[Path] = typer.Option(None, "--report", "-r", help="Report JSON file"),
):
    """Seeded bounded-weight Monte Carlo."""
    obj = StorageService().load_any(code_file)
    outputs = {"report": str(report)} if report else {}
    result = SimulationService().run(
        obj,
        error_type,
        weight,
        trials=trials,
        seed=seed,
        up_to=up_to,
        inputs={"code": str(code_file)},
        outputs=outputs,
    )
    _emit(result, report)


@app.command()
@handle_errors
def inspect(
    path: Path = typer.Argument(..., help="Complex or product JSON file"),
    homology: bool = typer.Option(False, "--homology", help="Also compute (co)homology dimensions"),
    table: bool = typer.Option(False, "--table", help="Render a table instead of JSON"),
):
    """Face counts, degree statistics and validation of a stored object."""
    obj = StorageService().load_any(path)
    report = ParamsService().inspect(obj, homology=homology)
    if not table:
        typer.echo(report.to_json(), nl=False)
        return
    _print_inspect(report, path)


def _print_inspect(report: InspectReport, path: Path) -> None:
    table = Table(title=f"{path.name} ({report.kind})")
    table.add_column("Grade", style="cyan")
    table.add_column("Faces", style="bold")
    table.add_column("Up-degree", style="green")
    table.add_column("H_p", style="yellow")
    for p, count in enumerate(report.face_counts):
        degree = next((g for g in report.degree_stats.grades if g.grade == p), None)
        table.add_row(
            str(p),
            str(count),
            f"{degree.min_degree}..{degree.max_degree}" if degree else "-",
            str(report.homology.get(str(p), "-")) if report.homology else "-",
        )
    console.print(table)
    status = "[green]valid[/green]" if report.validation.ok else f"[red]{report.validation.message}[/red]"
    console.print(f"∂∂ = 0: {status}")
