"""k-chord pancyclicity relative to the chosen Hamilton cycle.

The same graph can be k-chord pancyclic with respect to one Hamilton cycle
and not with respect to another.
"""
import re
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional, Sequence, Set, Tuple

from app.config import settings
from app.core import OrderlyGenerator, enumerate_cycles, parse_chord_list
from app.exceptions import GraphParseError, NoHamiltonCycle, TooLarge, VertexOutOfRange
from app.logger import get_logger
from app.models import ChordDiagram, Graph, RebasedReport, RelativityReport, normalize_chord
from app.pancyclicity import is_complete, required_lengths, verify

logger = get_logger(__name__)

_GRAPH = re.compile(r"^\s*(\d+)\s*;\s*edges\s*:(.*)$", re.DOTALL)


def parse_graph(text: str) -> Graph:
    """Parse ``n; edges: u-v,...`` (base-cycle edges listed explicitly)."""
    match = _GRAPH.match(text)
    if match is None:
        raise GraphParseError(f"Cannot parse graph {text!r}; expected 'n; edges: u-v,...'")
    n = int(match.group(1))
    edges = parse_chord_list(match.group(2))
    return validate_graph(Graph(n=n, edges=edges))


def validate_graph(graph: Graph) -> Graph:
    seen: Set = set()
    for u, v in graph.edges:
        if not (1 <= u <= graph.n and 1 <= v <= graph.n) or u == v:
            raise VertexOutOfRange(f"Edge {u}-{v} is not a simple edge on 1..{graph.n}")
        if (u, v) in seen:
            raise GraphParseError(f"Edge {u}-{v} appears twice")
        seen.add((u, v))
    return graph


def diagram_to_graph(diagram: ChordDiagram) -> Graph:
    cycle = [(i, i % diagram.n + 1) for i in range(1, diagram.n + 1)]
    return Graph(n=diagram.n, edges=cycle + list(diagram.chords))


def hamilton_cycles(graph: Graph) -> List[List[int]]:
    """All Hamilton cycles, each once: starting at vertex 1, with the
    second vertex smaller than the last. Backtracking in increasing vertex
    order gives a deterministic listing."""
    validate_graph(graph)
    n = graph.n
    if n > settings.RELATIVITY_MAX_N:
        raise TooLarge(f"Hamilton cycle listing is limited to n <= {settings.RELATIVITY_MAX_N}")
    adjacency: Dict[int, List[int]] = {v: [] for v in range(1, n + 1)}
    for u, v in graph.edges:
        adjacency[u].append(v)
        adjacency[v].append(u)
    for v in adjacency:
        adjacency[v].sort()

    cycles: List[List[int]] = []
    path = [1]
    visited = [False] * (n + 1)
    visited[1] = True

    def extend() -> None:
        last = path[-1]
        if len(path) == n:
            if 1 in adjacency[last] and path[1] < path[-1]:
                cycles.append(list(path))
            return
        for w in adjacency[last]:
            if not visited[w]:
                visited[w] = True
                path.append(w)
                extend()
                path.pop()
                visited[w] = False

    if n >= 3:
        extend()
    if not cycles:
        raise NoHamiltonCycle(f"Graph on {n} vertices has no Hamilton cycle")
    return cycles


def rebase(graph: Graph, cycle: Sequence[int]) -> ChordDiagram:
    """Relabel so that ``cycle`` becomes v_1..v_n; the other edges become chords."""
    label = {v: i + 1 for i, v in enumerate(cycle)}
    base = {normalize_chord(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))}
    chords = [normalize_chord(label[u], label[v]) for u, v in graph.edges if (u, v) not in base]
    return ChordDiagram(n=graph.n, chords=chords)


def unbase(diagram: ChordDiagram, cycle: Sequence[int]) -> Graph:
    """Inverse of rebase: map labels back onto the original vertices."""
    vertex = {i + 1: v for i, v in enumerate(cycle)}
    edges = [(vertex[i], vertex[i % diagram.n + 1]) for i in range(1, diagram.n + 1)]
    edges += [(vertex[u], vertex[v]) for u, v in diagram.chords]
    return Graph(n=diagram.n, edges=edges)


def relativity_report(graph: Graph, k: int) -> RelativityReport:
    cycles = hamilton_cycles(graph)
    per_cycle = []
    for cycle in cycles:
        diagram = rebase(graph, cycle)
        per_cycle.append(
            RebasedReport(
                hamilton_cycle=cycle,
                diagram=diagram,
                report=verify(diagram, k),
                total_cycles=enumerate_cycles(diagram).total_cycles,
            )
        )
    verdicts = {entry.report.complete for entry in per_cycle}
    return RelativityReport(
        graph=graph,
        k=k,
        hamilton_cycles=cycles,
        per_cycle=per_cycle,
        invariant_flag=len(verdicts) == 1,
    )


def _witness_in_branch(n: int, k: int, p: int, first: int) -> Optional[Tuple[Graph, List[int]]]:
    """First witness among the canonical p-chord sets starting with ``first``."""
    required = frozenset(required_lengths(n, k))
    generator = OrderlyGenerator(n, p)
    universe = generator.universe
    for subset in generator.generate(first=first):
        chords = universe.to_chords(subset)
        if not is_complete(n, chords, k, required):
            continue
        graph = diagram_to_graph(ChordDiagram(n=n, chords=chords))
        for cycle in hamilton_cycles(graph):
            if not is_complete(n, rebase(graph, cycle).chords, k, required):
                return graph, cycle
    return None


def _witness_in_branch_args(args) -> Optional[Tuple[Graph, List[int]]]:
    return _witness_in_branch(*args)


def find_relativity_witness(
    n: int, k: int, p: int, workers: Optional[int] = None
) -> Optional[Graph]:
    """First canonical p-chord diagram that is k-chord pancyclic but fails
    the test for some other Hamilton cycle of the same graph.

    Branches by first chord run in ``workers`` processes and are merged in
    branch order, so the answer does not depend on the worker count.
    """
    if n > settings.WITNESS_MAX_N:
        raise TooLarge(f"Witness search is limited to n <= {settings.WITNESS_MAX_N}, got n={n}")
    required_lengths(n, k)
    workers = settings.SEARCH_WORKERS if workers is None else workers
    branches = OrderlyGenerator(n, p).branches()
    if workers <= 1 or len(branches) <= 1:
        found = (_witness_in_branch(n, k, p, first) for first in branches)
        hit = next((result for result in found if result is not None), None)
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        try:
            results = pool.map(_witness_in_branch_args, [(n, k, p, first) for first in branches])
            hit = next((result for result in results if result is not None), None)
        finally:
            pool.shutdown(wait=True, cancel_futures=True)
    if hit is None:
        return None
    graph, cycle = hit
    logger.info(
        "Relativity witness found",
        graph=graph.text,
        hamilton_cycle=cycle,
        missing=verify(rebase(graph, cycle), k).missing,
    )
    return graph
