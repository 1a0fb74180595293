"""Command-line front door: `ffframes <subcommand> --input file.json`.

Exit codes: 0 the checked property holds, 1 it fails, 2 invalid input,
3 search budget exceeded. Reports go to standard output or --output; logs
and error messages go to standard error.
"""

import json
import logging
from typing import Optional

import click
import typer

from config import get_config

from .commands import CommandOptions, run_command
from .errors import BudgetExceeded, FFFramesError, InvalidInputError
from .logging_config import setup_logging
from .serialization import dump_json, load_json

logger = logging.getLogger(__name__)

EXIT_HOLDS, EXIT_FAILS, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3

app = typer.Typer(add_completion=False, help="Frames and equiangular lines over finite fields")

INPUT = typer.Option('-', '--input', '-i', help="JSON input file, '-' for standard input")
OUTPUT = typer.Option(None, '--output', '-o', help="Write the JSON report here instead of standard output")


@app.callback()
def main(verbose: bool = typer.Option(False, '--verbose', '-v', help="Log DEBUG traces to standard error")):
    cfg = get_config()
    setup_logging(log_dir=cfg.cli_log_dir(), console_level=logging.DEBUG if verbose else logging.WARNING)


def _integers(text):
    """'1,2,4' -> [1, 2, 4]."""
    if text is None:
        return None
    try:
        return [int(part) for part in text.split(',') if part.strip()]
    except ValueError as e:
        raise InvalidInputError(f"expected comma-separated integers, got {text!r}") from e


def _element(text):
    """A bare integer or a JSON coefficient list such as [1,2]."""
    if text is None:
        return None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"cannot read field element {text!r}") from e


def _same(value):
    return value


def _budget(value):
    return value if value is not None else get_config().search_budget()


def _workers(value):
    return value if value is not None else get_config().workers()


def _execute(name, input_path, output, other_path=None, **options):
    converters = {'s': _integers, 'gamma': _integers, 'beta': _element, 'budget': _budget, 'workers': _workers}
    try:
        options = {key: converters.get(key, _same)(value) for key, value in options.items()}
        payload = {'input': load_json(input_path)}
        if other_path is not None:
            payload['other'] = load_json(other_path)
        result = run_command(name, payload, CommandOptions(**options))
    except BudgetExceeded as e:
        logger.warning("%s: %s", name, e)
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(code=EXIT_BUDGET)
    except InvalidInputError as e:
        logger.warning("%s rejected input: %s", name, e)
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(code=EXIT_INVALID)
    except FFFramesError as e:
        logger.exception("%s failed an internal check", name)
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(code=EXIT_FAILS)
    except (ValueError, TypeError, KeyError, IndexError) as e:
        # numpy and galois reject malformed arrays with plain exceptions
        logger.warning("%s rejected malformed input: %r", name, e)
        typer.echo(f"error: malformed input: {e}", err=True)
        raise typer.Exit(code=EXIT_INVALID)

    dump_json(result.report, output)
    raise typer.Exit(code=EXIT_HOLDS if result.holds else EXIT_FAILS)


@app.command()
def field(input_path: str = INPUT, output: Optional[str] = OUTPUT):
    """Describe a finite field with its involution."""
    _execute('field', input_path, output)


@app.command()
def verify(input_path: str = INPUT, output: Optional[str] = OUTPUT):
    """Frame status, equiangularity and Gerzon bound of a system."""
    _execute('verify', input_path, output)


@app.command()
def tight(input_path: str = INPUT, output: Optional[str] = OUTPUT):
    """Tightness with each equivalent condition reported."""
    _execute('tight', input_path, output)


@app.command()
def etf(input_path: str = INPUT, output: Optional[str] = OUTPUT):
    """Equiangular tight frame verification."""
    _execute('etf', input_path, output)


@app.command()
def realize(input_path: str = INPUT, output: Optional[str] = OUTPUT):
    """Vectors realizing a Hermitian Gram matrix."""
    _execute('realize', input_path, output)


@app.command()
def naimark(input_path: str = INPUT, output: Optional[str] = OUTPUT,
            scale: int = typer.Option(1, help="Scale of the complement Gram matrix")):
    """Naimark complement of a tight frame."""
    _execute('naimark', input_path, output, scale=scale)


@app.command()
def equiv(input_path: str = INPUT, output: Optional[str] = OUTPUT,
          other: str = typer.Option(..., '--other', help="JSON file of the second system"),
          strategy: str = typer.Option('auto', help="auto, triples or general")):
    """Switching and unitary equivalence of two systems."""
    _execute('equiv', input_path, output, other_path=other, strategy=strategy)


@app.command()
def twograph(input_path: str = INPUT, output: Optional[str] = OUTPUT,
             beta: Optional[str] = typer.Option(None, help="Square root of b; default is the canonical one"),
             modular_p: Optional[int] = typer.Option(None, help="Check strong regularity modulo p")):
    """Two-graph of a frame, a coherent-triple list or a graph."""
    _execute('twograph', input_path, output, beta=beta, modular_p=modular_p)


@app.command()
def simplex(input_path: str = INPUT, output: Optional[str] = OUTPUT,
            s: Optional[str] = typer.Option(None, help="Simplex sizes, e.g. '3' or '2,3'")):
    """Regular simplices inside an equiangular system."""
    _execute('simplex', input_path, output, s=s)


@app.command()
def incoherence(input_path: str = INPUT, output: Optional[str] = OUTPUT,
                beta: Optional[str] = typer.Option(None, help="Square root of b; default is the canonical one")):
    """Largest beta-incoherent sets."""
    _execute('incoherence', input_path, output, beta=beta)


@app.command()
def design(input_path: str = typer.Option('-', '--input', '--blocks', '-i', help="JSON design file"),
           output: Optional[str] = OUTPUT,
           t: Optional[int] = typer.Option(None, help="Strength to verify (default 2)")):
    """Verify a t-(n, k, lambda) block design."""
    _execute('design', input_path, output, t=t)


@app.command()
def gamma(input_path: str = INPUT, output: Optional[str] = OUTPUT,
          gamma_set: Optional[str] = typer.Option(None, '--gamma', help="Incoherent set, e.g. '1,2,4'"),
          outside: Optional[int] = typer.Option(None, help="Vector used for the split analysis"),
          beta: Optional[str] = typer.Option(None, help="Square root of b; default is the canonical one")):
    """Block designs carried by a maximal independent incoherent set."""
    _execute('gamma', input_path, output, gamma=gamma_set, outside=outside, beta=beta)


@app.command()
def search(input_path: str = INPUT, output: Optional[str] = OUTPUT,
           budget: Optional[int] = typer.Option(None, help="Candidate-vector budget (overrides FFF_BUDGET)"),
           workers: Optional[int] = typer.Option(None, help="Worker threads (overrides FFF_WORKERS)"),
           dedup: Optional[str] = typer.Option(None, help="none, projective or switching_class")):
    """Exhaustive search for equiangular systems."""
    _execute('search', input_path, output, budget=budget, workers=workers, dedup=dedup)


def run_cli(argv=None):
    """Run one invocation and return its exit code."""
    try:
        code = app(args=argv, standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return EXIT_INVALID
    except click.Abort:
        return EXIT_INVALID
    return code if isinstance(code, int) else EXIT_HOLDS
