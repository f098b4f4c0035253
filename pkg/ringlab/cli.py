# ringlab/cli.py
"""
Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 resource budget exceeded, 4 unresolved semidirect merges.
"""
import functools
import json
import logging
import sys
from typing import Any, Optional

import click

from ringlab.config import load_settings, use_settings, get_settings
from ringlab.errors import BudgetExceededError, RingLabError
from ringlab.finite_ring import realize_complete_graph, validate_ring
from ringlab.graph_kit import emit
from ringlab.integral import monic_annihilator
from ringlab.localized import class_representative, parse_localized
from ringlab.models import Mode, OutputFormat, Suite, WitnessBounds
from ringlab.polynomials import IntPolynomial
from ringlab.ring_spec import parse_ring_spec
from ringlab.semidirect import lambda1_semidirect, load_semidirect_data, localized_semidirect
from ringlab.subring_compress import compressed_commuting_graph, unital_subring_lattice
from ringlab.verification import run_suite

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_BUDGET, EXIT_UNRESOLVED = 0, 1, 2, 3, 4

FORMAT_OPTION = click.option(
    "--format", "fmt", type=click.Choice([f.value for f in OutputFormat]), default=None,
    help="Output format (default from settings)",
)
BOUND_OPTIONS = [
    click.option("--deg", type=click.IntRange(min=0), default=None, help="Witness degree bound"),
    click.option("--coef", type=click.IntRange(min=0), default=None, help="Witness coefficient bound"),
]


def _bounds(func):
    for option in reversed(BOUND_OPTIONS):
        func = option(func)
    return func


def _dump(payload: Any):
    click.echo(json.dumps(payload, sort_keys=True, separators=(",", ":")))


def _format(fmt: Optional[str]) -> OutputFormat:
    return OutputFormat(fmt or get_settings().output_format)


def _apply_bounds(deg: Optional[int], coef: Optional[int]):
    settings = get_settings()
    updates = {k: v for k, v in (("merge_degree", deg), ("merge_coefficient", coef)) if v is not None}
    if updates:
        use_settings(settings.model_copy(update=updates))


def _exit_codes(func):
    """Map library errors onto the exit-code contract"""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except BudgetExceededError as e:
            click.echo(f"budget exceeded: {e}", err=True)
            sys.exit(EXIT_BUDGET)
        except (RingLabError, FileNotFoundError) as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_USAGE)
    return wrapper


# ===================== GROUP =====================
@click.group()
@click.option("--config", "config_path", type=click.Path(), default=None,
              help="Key-value settings file (RINGLAB_CONFIG)")
@click.option("--log-level", default=None, help="Logging level for stderr")
@click.option("--seed", type=int, default=None, help="Random seed for sampling")
def cli(config_path: Optional[str], log_level: Optional[str], seed: Optional[int]):
    """Finite rings and their compressed commuting graphs"""
    try:
        settings = use_settings(load_settings(config_path, log_level=log_level, seed=seed))
    except (FileNotFoundError, ValueError) as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_USAGE)
    logging.basicConfig(
        level=settings.log_level.upper(),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


# ===================== COMMANDS =====================
@cli.command()
@click.argument("spec")
@click.option("--unital/--nonunital", default=False, help="Lambda^1 instead of Lambda")
@FORMAT_OPTION
@_exit_codes
def graph(spec: str, unital: bool, fmt: Optional[str]):
    """Emit the compressed commuting graph of SPEC"""
    ring = parse_ring_spec(spec)
    result = compressed_commuting_graph(ring, Mode.UNITAL if unital else Mode.NONUNITAL)
    click.echo(emit(result, _format(fmt)).rstrip("\n"))


@cli.command()
@click.option("--suite", type=click.Choice([s.value for s in Suite]), default=Suite.PAPER.value)
@click.option("--timings/--no-timings", default=False, help="Include elapsed seconds per item")
@click.option("--seed", type=int, default=None, help="Random seed for this run (overrides the group seed)")
@_bounds
@_exit_codes
def verify(suite: str, timings: bool, seed: Optional[int], deg: Optional[int], coef: Optional[int]):
    """Run a verification suite and print its JSON report"""
    _apply_bounds(deg, coef)
    if seed is not None:
        use_settings(get_settings().model_copy(update={"seed": seed}))
    report = run_suite(Suite(suite), get_settings().seed)
    exclude = None if timings else {"items": {"__all__": {"elapsed_seconds"}}}
    _dump(report.model_dump(mode="json", exclude=exclude))
    for item in report.items:
        for left, right in item.unresolved:
            click.echo(f"unresolved: {item.name}: {left} ~ {right}", err=True)
    sys.exit(report.exit_code())


@cli.command()
@click.option("--data", "data_path", type=click.Path(), required=True, help="SemidirectData JSON")
@click.option("--graph", "with_graph", is_flag=True, help="Emit Lambda^1 of the product")
@FORMAT_OPTION
@_bounds
@_exit_codes
def semidirect(data_path: str, with_graph: bool, fmt: Optional[str], deg: Optional[int], coef: Optional[int]):
    """Validate Z[1/m] ⋉ I data and optionally emit its unital graph"""
    _apply_bounds(deg, coef)
    handle = localized_semidirect(load_semidirect_data(data_path))
    if not with_graph:
        _dump({"valid": True, "m": handle.m, "ideal": handle.ideal.descriptor,
               "identity": handle.identity.label()})
        return
    settings = get_settings()
    report = lambda1_semidirect(
        handle, WitnessBounds(degree=settings.merge_degree, coefficient=settings.merge_coefficient)
    )
    click.echo(emit(report.graph, _format(fmt)).rstrip("\n"))
    for left, right in report.unresolved:
        click.echo(f"unresolved: {left} ~ {right}", err=True)
    if report.unresolved:
        sys.exit(EXIT_UNRESOLVED)


@cli.command()
@click.option("--ring", "spec", required=True, help="Ring spec")
@click.option("--element", type=int, required=True, help="Element id")
@click.option("--poly", required=True, help='Content-1 annihilator "c0,c1,..."')
@_exit_codes
def integral(spec: str, element: int, poly: str):
    """Print a monic annihilator of ELEMENT as "c0,c1,..." """
    ring = parse_ring_spec(spec)
    click.echo(monic_annihilator(ring, ring.element(element), IntPolynomial.parse(poly)).to_text())


@cli.command()
@click.argument("spec")
@_exit_codes
def lattice(spec: str):
    """List the unital subrings of SPEC"""
    result = unital_subring_lattice(parse_ring_spec(spec))
    _dump({
        "complete": result.complete,
        "count": len(result.subrings),
        "subrings": [list(s.members) for s in result.subrings],
    })
    if not result.complete:
        sys.exit(EXIT_BUDGET)


@cli.command()
@click.argument("spec")
@_exit_codes
def validate(spec: str):
    """Check the ring axioms for SPEC"""
    report = validate_ring(parse_ring_spec(spec))
    _dump(report.model_dump(mode="json"))
    if not report.is_ring:
        sys.exit(EXIT_FAILED)


@cli.command()
@click.argument("alpha", type=click.IntRange(min=1))
@click.option("--unital/--nonunital", default=True)
@FORMAT_OPTION
@_exit_codes
def realize(alpha: int, unital: bool, fmt: Optional[str]):
    """Build a ring whose graph is K°_ALPHA and emit that graph"""
    mode = Mode.UNITAL if unital else Mode.NONUNITAL
    ring = realize_complete_graph(alpha, mode)
    click.echo(f"# {ring.descriptor}", err=True)
    click.echo(emit(compressed_commuting_graph(ring, mode), _format(fmt)).rstrip("\n"))


@cli.command()
@click.argument("value")
@_exit_codes
def classrep(value: str):
    """Class representative of num/den@m in Lambda^1(Z[1/m])"""
    click.echo(class_representative(parse_localized(value)).to_text())


def main():
    cli(prog_name="ringlab")


if __name__ == "__main__":
    main()
