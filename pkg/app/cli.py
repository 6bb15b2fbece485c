"""
Alliance Lab command-line front end.

    python -m app.cli gen family-h 3 0 -o h.txt
    python -m app.cli product a.txt b.txt -o c.txt
    python -m app.cli solve --quantity psi-gd --k -1 graph.txt
    python -m app.cli bounds --k 0 --r 3 graph.txt
    python -m app.cli bisect --k 1 graph.txt
    python -m app.cli verify [graph.txt ...]

Answers, including "none exists", exit 0; usage and input errors exit 2;
verify exits 3 when any verdict is violated.
"""

import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Tuple, Union

import click
from pydantic import BaseModel, ValidationError

from app.config import settings
from app.models.graph import Graph
from app.schemas.bounds import BoundReport
from app.schemas.command import Command
from app.schemas.graph import GraphPayload
from app.schemas.results import IsoResult, SolveResult, SpectralResult
from app.schemas.verification import CorpusReport
from app.services import queries
from app.services.graph_builder import cartesian_product, generate
from app.services.verifier import CorpusEntry, verify_corpus
from app.utils.exact import format_rational
from app.utils.exceptions import AllianceLabError, InputError
from app.utils.graph_io import format_graph, parse_graph_file
from app.utils.log_config import configure_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VIOLATION = 3

_NONE_MESSAGES = {
    "a": "no alliance exists",
    "gamma": "no alliance exists",
    "psi": "no partition exists",
    "psi-gd": "no partition exists",
    "cut": "no partition exists",
}


# ========== Rendering ==========

def _witness_text(result: BaseModel) -> str:
    return json.dumps(result.model_dump(mode="json")["witness"])


def _render_solve(result: Union[SolveResult, IsoResult, SpectralResult]) -> str:
    if isinstance(result, SpectralResult):
        spectrum = " ".join(f"{x:.{settings.MU_DECIMALS}f}" for x in result.eigenvalues)
        return "\n".join([
            f"{result.mu:.{settings.MU_DECIMALS}f}",
            f"spectrum: {spectrum}",
            f"connected: {str(result.connected).lower()}",
        ])
    if result.value is None and not result.exact:
        lines = ["none (search budget exhausted before any candidate)"]
    elif isinstance(result, IsoResult):
        lines = [format_rational(result.value), f"witness: {_witness_text(result)}"]
    elif result.value is None:
        lines = [f"none ({_NONE_MESSAGES.get(result.quantity, 'no solution exists')})"]
    else:
        lines = [str(result.value), f"witness: {_witness_text(result)}"]
    lines.append(f"exact: {str(result.exact).lower()} (nodes explored: {result.nodes_explored})")
    return "\n".join(lines)


def _render_report(report: BoundReport) -> List[str]:
    lines = [f"[{report.family}]"]
    for entry in report.entries:
        if not entry.applicable:
            lines.append(f"  {entry.name}: n/a  ({entry.source})")
            continue
        value = entry.model_dump(mode="json")["value"]
        line = f"  {entry.name} = {str(value).lower() if isinstance(value, bool) else value}  ({entry.source})"
        if entry.hypothesis:
            line += f"  if {entry.hypothesis}"
        if entry.marginal:
            line += "  [marginal]"
        lines.append(line)
    return lines


def _render_bisect(result: SolveResult, message: Optional[str], k: int) -> str:
    if result.value is None:
        reason = message or f"no bisection into global defensive {k}-alliances exists"
        head = [f"none ({reason})"]
    else:
        head = [str(result.value), f"witness: {_witness_text(result)}"]
    return "\n".join(head + [f"exact: {str(result.exact).lower()} (nodes explored: {result.nodes_explored})"])


def _render_verify(report: CorpusReport) -> str:
    lines = []
    for verification in report.graphs:
        held = sum(v.verdict == "holds" for v in verification.verdicts)
        skipped = sum(v.verdict == "skipped" for v in verification.verdicts)
        lines.append(
            f"{verification.graph}: {held} held, {skipped} skipped, {len(verification.violations)} violated"
        )
        for claim in verification.claims:
            lines.append(f"  claim {claim.quantity}_{claim.k} = {claim.claimed}: {claim.status}"
                         + (f" ({claim.certified})" if claim.certified else ""))
    for verdict in report.violated:
        lines.append(f"VIOLATED {verdict.graph} {verdict.theorem}: {verdict.anchor} "
                     f"(k={verdict.k}, lhs={verdict.model_dump(mode='json')['lhs']}, "
                     f"rhs={verdict.model_dump(mode='json')['rhs']})")
    lines.append(
        f"total: {report.total_verdicts} verdicts, {report.held} held, "
        f"{report.skipped} skipped, {len(report.violated)} violated"
    )
    return "\n".join(lines)


# ========== Execution ==========

def _generator_params(tokens: List[str], seed: Optional[int]) -> Tuple[str, List[float]]:
    kind, raw = tokens[0], tokens[1:]
    params = []
    for token in raw:
        try:
            params.append(int(token))
        except ValueError:
            try:
                params.append(float(token))
            except ValueError:
                raise InputError(f"generator parameter '{token}' is not a number") from None
    if kind.replace("-", "_").lower() == "random" and len(params) == 2:
        params.append(settings.SEED if seed is None else seed)
    return kind, params


def _emit_graph(graph: Graph, command: Command) -> Tuple[int, str]:
    if command.format == "json":
        text = GraphPayload.from_graph(graph).model_dump_json(indent=2)
    else:
        text = format_graph(graph)
    if command.output:
        Path(command.output).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
        return EXIT_OK, f"wrote {command.output} (n={graph.n}, m={graph.m})"
    return EXIT_OK, text.rstrip("\n")


def run(command: Command) -> Tuple[int, str]:
    """
    Execute a validated command.

    Args:
        command: Parsed command

    Returns:
        (exit status, report text). The report is also written to
        command.output for the reporting subcommands.

    Raises:
        InputError: Unreadable graph files or invalid parameters
        NumericError: Eigensolver failure
    """
    graphs = [parse_graph_file(path) for path in command.graphs]

    if command.subcommand == "gen":
        kind, params = _generator_params(command.generator, command.seed)
        return _emit_graph(generate(kind, *params), command)
    if command.subcommand == "product":
        return _emit_graph(cartesian_product(graphs[0], graphs[1]), command)

    status = EXIT_OK
    if command.subcommand == "solve":
        model = queries.solve_quantity(
            graphs[0], command.quantity, k=command.k, r=command.r, is_global=command.is_global,
            budget=command.budget, threads=command.threads,
        )
        text = _render_solve(model)
    elif command.subcommand == "bounds":
        model = queries.bounds_bundle(graphs[0], command.k, r=command.r, budget=command.budget)
        reports = [model.defensive, model.global_defensive, model.cut, model.spectral]
        text = "\n".join(line for report in reports if report is not None for line in _render_report(report))
    elif command.subcommand == "bisect":
        result, message = queries.bisect(graphs[0], command.k, budget=command.budget, threads=command.threads)
        model = result
        text = _render_bisect(result, message, command.k)
    else:
        corpus = None
        if command.graphs:
            k_range = (command.k, command.k) if command.k is not None else None
            corpus = [CorpusEntry(Path(path).stem, graph, k_range=k_range)
                      for path, graph in zip(command.graphs, graphs)]
        model = verify_corpus(corpus, budget=command.budget, threads=command.threads)
        text = _render_verify(model)
        status = EXIT_OK if model.ok else EXIT_VIOLATION

    if command.format == "json":
        text = model.model_dump_json(indent=2)
    if command.output:
        Path(command.output).write_text(text + "\n", encoding="utf-8")
    return status, text


def _execute(**fields) -> None:
    try:
        command = Command(**fields)
        status, text = run(command)
    except ValidationError as exc:
        messages = "; ".join(error["msg"] for error in exc.errors())
        click.echo(f"error: {messages}", err=True)
        sys.exit(EXIT_USAGE)
    except InputError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    except AllianceLabError as exc:
        logger.error("%s failed: %s", fields.get("subcommand"), exc)
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)

    click.echo(text)
    sys.exit(status)


# ========== Commands ==========

_graph_file = click.argument("graph", type=click.Path(dir_okay=False))


def _search_options(fn):
    fn = click.option("--threads", type=int, default=None, help="Worker threads")(fn)
    fn = click.option("--budget", type=int, default=None, help="Search node budget per solve")(fn)
    return fn


def _output_options(fn):
    fn = click.option("--format", "output_format", type=click.Choice(["text", "json"]), default="text")(fn)
    fn = click.option("--output", "-o", type=click.Path(dir_okay=False), default=None)(fn)
    return fn


@click.group()
@click.option("--log-level", default=None, help="Override LOG_LEVEL")
def cli(log_level: Optional[str]):
    """Exact solver and bound verifier for defensive k-alliances."""
    configure_logging(log_level)


@cli.command(context_settings={"ignore_unknown_options": True})
@click.argument("kind")
@click.argument("params", nargs=-1)
@click.option("--seed", type=int, default=None, help="Seed for the random generator")
@_output_options
def gen(kind, params, seed, output, output_format):
    """Write a named graph (complete, cycle, path, star, hypercube, petersen, family-h, random)."""
    _execute(subcommand="gen", generator=[kind, *params], seed=seed, output=output, format=output_format)


@cli.command()
@_graph_file
@click.option("--quantity", required=True,
              type=click.Choice(["a", "gamma", "dom", "psi", "psi-gd", "cut", "iso", "bw", "mu"]))
@click.option("--k", type=int, default=None, help="Protection level")
@click.option("--r", type=int, default=None, help="Block count (cut)")
@click.option("--global", "is_global", is_flag=True, help="Global (dominating) variant")
@_search_options
@_output_options
def solve(graph, quantity, k, r, is_global, budget, threads, output, output_format):
    """Compute one exact quantity of a graph."""
    _execute(subcommand="solve", graphs=[graph], quantity=quantity, k=k, r=r, is_global=is_global,
             budget=budget, threads=threads, output=output, format=output_format)


@cli.command()
@_graph_file
@click.option("--k", type=int, required=True)
@click.option("--r", type=int, default=None, help="Block count for the cut bounds")
@click.option("--budget", type=int, default=None)
@_output_options
def bounds(graph, k, r, budget, output, output_format):
    """Evaluate every closed-form bound at protection level k."""
    _execute(subcommand="bounds", graphs=[graph], k=k, r=r, budget=budget, output=output,
             format=output_format)


@cli.command()
@click.argument("first", type=click.Path(dir_okay=False))
@click.argument("second", type=click.Path(dir_okay=False))
@_output_options
def product(first, second, output, output_format):
    """Write the Cartesian product of two graph files."""
    _execute(subcommand="product", graphs=[first, second], output=output, format=output_format)


@cli.command()
@_graph_file
@click.option("--k", type=int, required=True)
@_search_options
@_output_options
def bisect(graph, k, budget, threads, output, output_format):
    """Bisect a graph into two global defensive k-alliances."""
    _execute(subcommand="bisect", graphs=[graph], k=k, budget=budget, threads=threads, output=output,
             format=output_format)


@cli.command()
@click.argument("graphs", nargs=-1, type=click.Path(dir_okay=False))
@click.option("--k", type=int, default=None, help="Single protection level (default: -Delta..delta)")
@_search_options
@_output_options
def verify(graphs, k, budget, threads, output, output_format):
    """Run the theorem harness on graph files, or on the built-in corpus."""
    _execute(subcommand="verify", graphs=list(graphs), k=k, budget=budget, threads=threads, output=output,
             format=output_format)


@cli.command()
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
def serve(host, port):
    """Serve the HTTP API with uvicorn."""
    import uvicorn

    uvicorn.run("app.main:app", host=host or settings.HOST, port=port or settings.PORT)


def main():
    cli()


if __name__ == "__main__":
    main()
