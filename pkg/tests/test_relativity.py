import pytest

from app.constructions import all_chord_hamilton, example1
from app.exceptions import GraphParseError, NoHamiltonCycle, TooLarge, VertexOutOfRange
from app.models import Graph
from app.relativity import (
    diagram_to_graph,
    find_relativity_witness,
    hamilton_cycles,
    parse_graph,
    rebase,
    relativity_report,
    unbase,
)

C6 = "6; edges: 1-2,2-3,3-4,4-5,5-6,1-6"
K5 = "5; edges: " + ",".join(f"{u}-{v}" for u in range(1, 6) for v in range(u + 1, 6))


@pytest.mark.relativity
def test_parse_graph():
    graph = parse_graph(C6 + ",1-3")
    assert graph.n == 6
    assert (1, 3) in graph.edges
    assert parse_graph(graph.text) == graph, "Printed graphs must re-parse identically"


@pytest.mark.relativity
@pytest.mark.parametrize("text,error", [
    ("6 edges 1-2", GraphParseError),
    ("4; edges: 1-2,2-1", GraphParseError),
    ("4; edges: 1-5", VertexOutOfRange),
    ("4; edges: 2-2", VertexOutOfRange),
])
def test_parse_graph_errors(text, error):
    with pytest.raises(error):
        parse_graph(text)


@pytest.mark.relativity
@pytest.mark.parametrize("text,count", [
    (C6, 1),
    (C6 + ",1-3,1-4", 1),
    (K5, 12),
])
def test_hamilton_cycle_counts(text, count):
    cycles = hamilton_cycles(parse_graph(text))
    assert len(cycles) == count
    for cycle in cycles:
        assert cycle[0] == 1 and cycle[1] < cycle[-1], "Cycles start at 1 in their smaller direction"


@pytest.mark.relativity
def test_hamilton_cycles_errors():
    with pytest.raises(NoHamiltonCycle):
        hamilton_cycles(parse_graph("4; edges: 1-2,2-3,3-4"))
    path = ",".join(f"{v}-{v + 1}" for v in range(1, 17)) + ",1-17"
    with pytest.raises(TooLarge):
        hamilton_cycles(parse_graph(f"17; edges: {path}"))


@pytest.mark.relativity
def test_rebase_round_trip():
    """
    Relabeling along any Hamilton cycle:
    - Leaves |E| - n chords
    - Is undone by mapping the labels back
    """
    graph = diagram_to_graph(all_chord_hamilton(6))
    for cycle in hamilton_cycles(graph):
        diagram = rebase(graph, cycle)
        assert diagram.p == len(graph.edges) - graph.n
        assert unbase(diagram, cycle) == graph


@pytest.mark.relativity
def test_rebase_identity_cycle():
    diagram = example1(1)
    graph = diagram_to_graph(diagram)
    assert rebase(graph, list(range(1, 7))) == diagram


@pytest.mark.relativity
def test_single_hamilton_cycle_is_invariant():
    report = relativity_report(diagram_to_graph(example1(1)), 1)
    assert report.invariant_flag
    assert len(report.per_cycle) == 1
    assert report.per_cycle[0].report.complete


@pytest.mark.relativity
def test_cycle_count_does_not_depend_on_base():
    report = relativity_report(diagram_to_graph(all_chord_hamilton(6)), 1)
    assert len(report.hamilton_cycles) >= 2
    totals = {entry.total_cycles for entry in report.per_cycle}
    assert len(totals) == 1, f"Cycle counts differ between bases: {totals}"


@pytest.mark.relativity
@pytest.mark.slow
def test_relativity_witness_n10():
    """
    Some 4-chord set on C_10 is 1-chord pancyclic, yet another Hamilton
    cycle of the same graph fails the test.
    """
    graph = find_relativity_witness(10, 1, 4)
    assert isinstance(graph, Graph)
    report = relativity_report(graph, 1)
    assert not report.invariant_flag
    assert any(entry.report.complete for entry in report.per_cycle)
    assert any(not entry.report.complete for entry in report.per_cycle)


@pytest.mark.relativity
def test_witness_search_small_cases():
    graph = find_relativity_witness(6, 1, 2)
    assert graph is None, "Two chords on C_6 admit no second Hamilton cycle that fails"
    with pytest.raises(TooLarge):
        find_relativity_witness(11, 1, 4)


@pytest.mark.relativity
def test_witness_search_with_workers():
    assert find_relativity_witness(6, 1, 2, workers=2) is None
    assert find_relativity_witness(7, 1, 2, workers=2) == find_relativity_witness(7, 1, 2, workers=1)


@pytest.mark.relativity
@pytest.mark.slow
def test_relativity_witness_independent_of_workers():
    assert find_relativity_witness(10, 1, 4, workers=2) == find_relativity_witness(10, 1, 4)
