"""Command-line surface.

Exit codes: 0 success or complete, 1 a well-formed negative answer,
2 usage, parse or domain errors (``error_code: detail`` on standard error).
"""
import functools
import json
import sys
from pathlib import Path
from typing import Optional

import click

from app import bounds as bounds_mod
from app.config import settings
from app.constructions import construct as build_construction
from app.constructions import kinds
from app.core import enumerate_cycles, parse_chord_list, parse_diagram, simple_cycle_spectrum, validate
from app.exceptions import PancyclicError
from app.models import ChordDiagram, SearchStatus
from app.pancyclicity import realizable_lengths, required_lengths, verify
from app.relativity import find_relativity_witness, parse_graph, relativity_report
from app.search import search_c
from app.table import (
    TSV_HEADER,
    build_table,
    compare,
    documented,
    load_discrepancies,
    load_reference,
    monotonicity_notes,
)


def domain_errors(func):
    """Turn domain errors into exit code 2."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except PancyclicError as exc:
            click.echo(f"{exc.error_code}: {exc.detail}", err=True)
            sys.exit(2)

    return wrapper


def emit(payload) -> None:
    click.echo(json.dumps(payload, indent=2))


@click.group()
@click.version_option(settings.VERSION, prog_name="kchord")
def cli():
    """Exact solver, verifier and bounds engine for k-chord pancyclicity."""


@cli.command("verify")
@click.option("--n", "n", type=int, required=True, help="Vertices of the base cycle.")
@click.option("--k", "k", type=int, required=True, help="Chords per cycle.")
@click.option("--chords", default="", help="Chord list, e.g. 1-3,1-4.")
@domain_errors
def verify_cmd(n: int, k: int, chords: str):
    """Check a chord set for k-chord pancyclicity."""
    report = verify(ChordDiagram(n=n, chords=parse_chord_list(chords)), k)
    emit(report.model_dump(mode="json"))
    sys.exit(0 if report.complete else 1)


@cli.command("spectrum")
@click.argument("diagram")
@click.option("--check", is_flag=True, help="Cross-check against networkx simple cycles.")
@click.option("--json", "as_json", is_flag=True)
@domain_errors
def spectrum_cmd(diagram: str, check: bool, as_json: bool):
    """Cycle lengths of DIAGRAM ('n: u-v,...') by number of chords used."""
    parsed = validate(parse_diagram(diagram))
    spectrum = enumerate_cycles(parsed)
    agrees = None
    if check:
        agrees = simple_cycle_spectrum(parsed)[0] == spectrum
    if as_json:
        payload = spectrum.model_dump(mode="json")
        if agrees is not None:
            payload["oracle_agrees"] = agrees
        emit(payload)
    else:
        for k, lengths in spectrum.by_chord_count.items():
            count = spectrum.counts_by_chord_count[k]
            click.echo(f"{k} chords: {count} cycles, lengths {', '.join(map(str, lengths))}")
        click.echo(f"total: {spectrum.total_cycles}")
        if agrees is not None:
            click.echo(f"oracle: {'agrees' if agrees else 'DISAGREES'}")
    sys.exit(1 if agrees is False else 0)


@cli.command("search")
@click.option("--n", "n", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--max-p", type=int, default=None, help="Highest chord count to try.")
@click.option("--time-limit", type=float, default=None, help="Seconds before giving up.")
@click.option("--threads", type=int, default=None, help="Worker processes per level.")
@click.option("--any-witness", is_flag=True, help="Accept the first witness found by any worker.")
@click.option("--resume", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Checkpoint file of exhausted branches.")
@domain_errors
def search_cmd(n, k, max_p, time_limit, threads, any_witness, resume):
    """Compute c(n,k) with a least canonical witness."""
    outcome = search_c(
        n,
        k,
        max_p=max_p,
        time_limit=time_limit,
        workers=threads,
        any_witness=any_witness,
        checkpoint_path=resume,
    )
    emit(outcome.record())
    sys.exit(0 if outcome.status == SearchStatus.EXACT else 1)


@cli.command("table")
@click.option("--n-min", type=int, default=6)
@click.option("--n-max", type=int, default=None)
@click.option("--k-max", type=int, default=None)
@click.option("--time-limit", type=float, default=None, help="Seconds per searched cell.")
@click.option("--threads", type=int, default=None)
@click.option("--check", is_flag=True, help="Compare with the published table.")
@click.option("--notes", is_flag=True, help="Append monotonicity observations.")
@click.option("--json", "as_json", is_flag=True)
@domain_errors
def table_cmd(n_min, n_max, k_max, time_limit, threads, check, notes, as_json):
    """Reproduce the table of c(n,k) as TSV rows."""
    cells = []
    if not as_json:
        click.echo(TSV_HEADER)
    for cell in build_table(n_min, n_max, k_max, time_limit, threads):
        cells.append(cell)
        if not as_json:
            click.echo(cell.tsv())
    if as_json:
        emit([cell.model_dump(mode="json", exclude={"witness"}) for cell in cells])
    if notes:
        for note in monotonicity_notes(cells):
            click.echo(f"# {note}", err=as_json)
    if check:
        discrepancies = load_discrepancies()
        for line in documented(cells, discrepancies):
            click.echo(f"documented {line}", err=True)
        mismatches = compare(cells, load_reference(), discrepancies)
        for line in mismatches:
            click.echo(f"mismatch {line}", err=True)
        sys.exit(1 if mismatches else 0)


@cli.command("bounds")
@click.option("--n", "n", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--json", "as_json", is_flag=True)
@domain_errors
def bounds_cmd(n: int, k: int, as_json: bool):
    """Lower bounds on c(n,k)."""
    report = bounds_mod.bound_report(n, k)
    if as_json:
        emit(report.model_dump(mode="json"))
        return
    click.echo(f"c({n},{k}) >= {report.p_threshold}")
    click.echo(f"sound threshold: {report.sound_threshold}")
    if report.largest_real_root is not None:
        click.echo(f"largest real root: {report.largest_real_root:.6f}")
    click.echo(f"pancyclic chord bound: {report.pancyclic_chord_bound}")
    for note in report.notes:
        click.echo(f"note: {note}")


@cli.command("crossover")
@click.option("--k", "k", type=int, required=True)
@click.option("--ratios-to", type=int, default=None, help="Also print upper(j+1)/upper(j) for j = k..K.")
@click.option("--json", "as_json", is_flag=True)
@domain_errors
def crossover_cmd(k: int, ratios_to: Optional[int], as_json: bool):
    """Where n^(1/k) overtakes ln n and falls back."""
    result = bounds_mod.crossover(k)
    ratios = bounds_mod.crossover_ratios(k, ratios_to) if ratios_to is not None else []
    if as_json:
        payload = result.model_dump(mode="json")
        if ratios:
            payload["ratios"] = [{"k": j, "ratio": r} for j, r in ratios]
        emit(payload)
        return
    click.echo(f"k={k}: lower {result.lower_solution:.6g}, upper {result.upper_solution:.6g}")
    for j, r in ratios:
        click.echo(f"upper({j + 1})/upper({j}) = {r:.2f}")


@cli.command("construct")
@click.option("--kind", type=click.Choice(kinds()), required=True)
@click.option("--n", "n", type=int, default=None)
@click.option("--p", "p", type=int, default=None)
@click.option("--stage", type=int, default=None)
@click.option("--k", "k", type=int, default=None, help="Verify the result for this k.")
@click.option("--json", "as_json", is_flag=True)
@domain_errors
def construct_cmd(kind, n, p, stage, k, as_json):
    """Print an explicit chord set."""
    diagram = build_construction(kind, n=n, p=p, stage=stage)
    report = verify(diagram, k) if k is not None else None
    if as_json:
        payload = {"kind": kind, "diagram": diagram.text, "p": diagram.p,
                   "total_cycles": enumerate_cycles(diagram).total_cycles}
        if report is not None:
            payload["verify"] = report.model_dump(mode="json")
        emit(payload)
    else:
        click.echo(diagram.text)
        if report is not None:
            click.echo(f"k={k}: {'complete' if report.complete else 'missing ' + str(report.missing)}")
    sys.exit(1 if report is not None and not report.complete else 0)


@cli.command("relativity")
@click.option("--graph", "graph_text", default=None, help="Graph as 'n; edges: u-v,...'.")
@click.option("--k", "k", type=int, required=True)
@click.option("--find", "find", nargs=2, type=int, default=None, metavar="N P",
              help="Search canonical P-chord sets on C_N for a witness instead.")
@click.option("--threads", type=int, default=None, help="Worker processes for --find.")
@click.option("--json", "as_json", is_flag=True)
@domain_errors
def relativity_cmd(graph_text, k, find, threads, as_json):
    """Compare verification across the Hamilton cycles of one graph."""
    if find:
        graph = find_relativity_witness(find[0], k, find[1], workers=threads)
        if graph is None:
            click.echo("no witness", err=True)
            sys.exit(1)
    elif graph_text is not None:
        graph = parse_graph(graph_text)
    else:
        raise click.UsageError("Give --graph or --find N P")
    report = relativity_report(graph, k)
    if as_json:
        emit(report.model_dump(mode="json"))
        return
    click.echo(graph.text)
    for entry in report.per_cycle:
        verdict = "complete" if entry.report.complete else f"missing {entry.report.missing}"
        click.echo(f"{'-'.join(map(str, entry.hamilton_cycle))}\t{entry.diagram.text}\t{verdict}")
    click.echo(f"invariant: {str(report.invariant_flag).lower()}")


@cli.command("oracle")
@click.option("--n", "n", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--json", "as_json", is_flag=True)
@domain_errors
def oracle_cmd(n: int, k: int, as_json: bool):
    """Compare L(n,k) with exhaustive realizability."""
    closed = required_lengths(n, k)
    realized = list(realizable_lengths(n, k))
    agrees = closed == realized
    if as_json:
        emit({"n": n, "k": k, "closed_form": closed, "realizable": realized, "agrees": agrees})
    else:
        click.echo(f"closed form: {closed}")
        click.echo(f"realizable:  {realized}")
    sys.exit(0 if agrees else 1)


def main():
    cli()


if __name__ == "__main__":
    main()
