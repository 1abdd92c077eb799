from itertools import combinations

import pytest

from app.bounds import n_cycles_bounds
from app.constructions import all_chord_hamilton, crossing_family, example1
from app.core import (
    OrderlyGenerator,
    apply_map,
    canonical_diagrams,
    canonicalize,
    chord_universe,
    completion_lengths,
    crossing,
    cycles_through_all,
    dihedral_maps,
    enumerate_cycles,
    parse_diagram,
    simple_cycle_spectrum,
    sorted_cycle,
    validate,
)
from app.exceptions import (
    AdjacentEndpoints,
    ChordLimitExceeded,
    ChordParseError,
    DuplicateChord,
    NTooSmall,
    ValidationError,
    VertexOutOfRange,
)
from app.models import ChordDiagram
from app.search import orbit_total


@pytest.mark.core
def test_parse_and_format_round_trip():
    """
    The shared text format:
    - Whitespace is ignored
    - Chords are stored as (min, max) in sorted order
    - Formatting re-parses to the same diagram
    """
    diagram = parse_diagram(" 6 : 4-1 , 1-3 ")
    assert diagram.n == 6
    assert diagram.chords == ((1, 3), (1, 4)), "Chords must be normalized and sorted"
    assert diagram.text == "6: 1-3,1-4"
    assert parse_diagram(diagram.text) == diagram, "Printed diagrams must re-parse identically"


@pytest.mark.core
@pytest.mark.parametrize("text", ["6 1-3", "x: 1-3", "6: 1-3,1_4", "6: 1-3,,1-4"])
def test_parse_errors(text):
    with pytest.raises(ChordParseError):
        parse_diagram(text)


@pytest.mark.core
def test_empty_chord_list_is_valid():
    diagram = validate(parse_diagram("7:"))
    assert diagram.p == 0
    assert enumerate_cycles(diagram).total_cycles == 1, "C_n alone has one cycle"


@pytest.mark.core
@pytest.mark.parametrize("text,error", [
    ("6: 1-2", AdjacentEndpoints),
    ("6: 1-6", AdjacentEndpoints),
    ("6: 3-3", AdjacentEndpoints),
    ("6: 1-7", VertexOutOfRange),
    ("6: 0-3", VertexOutOfRange),
    ("6: 1-3,3-1", DuplicateChord),
    ("3: 1-3", NTooSmall),
])
def test_validate_rejects(text, error):
    with pytest.raises(error):
        validate(parse_diagram(text))


@pytest.mark.core
@pytest.mark.parametrize("c1,c2,n,expected", [
    ((1, 4), (2, 5), 6, True),
    ((2, 5), (1, 4), 6, True),
    ((1, 3), (4, 6), 6, False),
    ((1, 4), (1, 5), 7, False),
    ((1, 5), (2, 4), 6, False),
])
def test_crossing(c1, c2, n, expected):
    assert crossing(c1, c2, n) is expected


@pytest.mark.core
def test_dihedral_maps_identity_first():
    maps = dihedral_maps(6)
    assert len(maps) == 12
    assert maps[0] == (0, 1, 2, 3, 4, 5, 6), "The identity must come first"
    assert len(set(maps)) == 12, "All 2n symmetries must be distinct"


@pytest.mark.core
@pytest.mark.parametrize("text,representative,stabilizer", [
    ("6: 4-6", ((1, 3),), 2),
    ("6: 2-5", ((1, 4),), 4),
    ("6: 1-3,1-4", ((1, 3), (1, 4)), 1),
])
def test_canonicalize(text, representative, stabilizer):
    form = canonicalize(parse_diagram(text))
    assert form.representative.chords == representative
    assert form.stabilizer_size == stabilizer


@pytest.mark.core
def test_canonical_form_is_orbit_invariant():
    diagram = all_chord_hamilton(7)
    form = canonicalize(diagram)
    for g in dihedral_maps(7):
        image = ChordDiagram(n=7, chords=[(g[u], g[v]) for u, v in diagram.chords])
        assert canonicalize(image) == form, "Every image must share one canonical form"


@pytest.mark.core
def test_single_chord_branches():
    """The canonical single chords are (1, v), one per chord length."""
    generator = OrderlyGenerator(9, 3)
    branches = [chord_universe(9).chords[i] for i in generator.branches()]
    assert branches == [(1, 3), (1, 4), (1, 5)]


@pytest.mark.core
@pytest.mark.parametrize("n", [6, 7, 8])
@pytest.mark.parametrize("p", [0, 1, 2, 3, 4])
def test_orbit_sizes_cover_all_chord_sets(n, p):
    """
    Orderly generation lists one set per orbit:
    - Orbit sizes 2n/|stabilizer| sum to C(m, p)
    """
    total, expected = orbit_total(n, p)
    assert total == expected, f"Orbits at n={n}, p={p} cover {total} sets, expected {expected}"


@pytest.mark.core
def test_canonical_sets_are_lexicographic_and_canonical():
    diagrams = list(canonical_diagrams(7, 3))
    assert [d.chords for d in diagrams] == sorted(d.chords for d in diagrams)
    for diagram in diagrams:
        assert canonicalize(diagram).representative == diagram


@pytest.mark.core
def test_enumerate_example():
    """
    Chords 1-3 and 1-4 on C_6:
    - The base cycle itself
    - Four cycles through one chord, of lengths 3, 4, 4, 5
    - The chord triangle 1-3-4
    """
    spectrum = enumerate_cycles(example1(1))
    assert spectrum.by_chord_count == {0: [6], 1: [3, 4, 5], 2: [3]}
    assert spectrum.counts_by_chord_count == {0: 1, 1: 4, 2: 1}
    assert spectrum.total_cycles == 6


@pytest.mark.core
def test_chord_limit():
    with pytest.raises(ChordLimitExceeded):
        enumerate_cycles(example1(3), max_chords=4)


@pytest.mark.core
@pytest.mark.parametrize("diagram", [
    example1(1),
    example1(3),
    crossing_family(6, 3),
    crossing_family(8, 4),
    all_chord_hamilton(6),
    parse_diagram("9: 1-5,2-7,3-9,4-8"),
])
def test_matches_networkx(diagram):
    spectrum, cycles = simple_cycle_spectrum(diagram)
    assert enumerate_cycles(diagram) == spectrum, f"Spectra differ for {diagram.text}"
    assert len(cycles) == spectrum.total_cycles


@pytest.mark.core
@pytest.mark.slow
@pytest.mark.parametrize("n", [6, 7, 8])
def test_matches_networkx_exhaustive(n):
    for p in range(1, 5):
        for diagram in canonical_diagrams(n, p):
            spectrum, _ = simple_cycle_spectrum(diagram)
            assert enumerate_cycles(diagram) == spectrum, f"Spectra differ for {diagram.text}"


@pytest.mark.core
@pytest.mark.slow
@pytest.mark.parametrize("n", [6, 7, 8])
def test_at_most_two_cycles_through_a_chord_set(n):
    """
    Any chord set lies on at most two cycles using all of its chords,
    and on at most one when two of its chords share a vertex.
    """
    for p in range(1, 5):
        for diagram in canonical_diagrams(n, p):
            for size in range(1, p + 1):
                for subset in combinations(diagram.chords, size):
                    count = cycles_through_all(diagram, subset)
                    assert count <= 2, f"{subset} lies on {count} cycles in {diagram.text}"
                    ends = [v for chord in subset for v in chord]
                    if len(ends) != len(set(ends)):
                        assert count <= 1, f"{subset} shares a vertex but lies on {count} cycles"


@pytest.mark.core
def test_completion_lengths_crossing_pair():
    assert sorted(completion_lengths(6, [(1, 3), (2, 6)])) == [4, 6]
    assert completion_lengths(6, [(1, 3), (1, 4), (1, 5)]) == [], "A vertex cannot carry three cycle chords"


@pytest.mark.core
def test_cycles_through_all():
    diagram = example1(1)
    assert cycles_through_all(diagram, []) == 1, "Only the base cycle avoids every chord"
    assert cycles_through_all(diagram, [(3, 1)]) == 2
    assert cycles_through_all(diagram, [(1, 3), (1, 4)]) == 1
    with pytest.raises(ValidationError):
        cycles_through_all(diagram, [(2, 6)])


@pytest.mark.core
def test_sorted_cycle():
    assert sorted_cycle([3, 1, 2]) == [1, 2, 3]
    assert sorted_cycle([4, 6, 1, 3]) == [1, 3, 4, 6]


@pytest.mark.core
@pytest.mark.parametrize("n", [6, 7])
def test_spectrum_is_dihedral_invariant(n):
    for p in range(1, 4):
        for diagram in canonical_diagrams(n, p):
            spectrum = enumerate_cycles(diagram)
            for g in dihedral_maps(n):
                image = ChordDiagram(n=n, chords=apply_map(g, diagram.chords))
                assert enumerate_cycles(image) == spectrum, f"{image.text} differs from {diagram.text}"


@pytest.mark.core
@pytest.mark.parametrize("n", [6, 7, 8])
def test_cycle_count_between_bounds(n):
    """Every p-chord diagram has between C(p+2,2) and 2^(p+1)-1 cycles."""
    for p in range(0, 5):
        lower, upper = n_cycles_bounds(p)
        for diagram in canonical_diagrams(n, p):
            total = enumerate_cycles(diagram).total_cycles
            assert lower <= total <= upper, f"{diagram.text} has {total} cycles, outside [{lower}, {upper}]"


@pytest.mark.core
@pytest.mark.parametrize("n", range(6, 11))
def test_single_chord_pairs_lengths(n):
    """A chord spanning l vertices closes cycles of lengths l and n+2-l."""
    for u, v in chord_universe(n).chords:
        span = v - u + 1
        assert sorted(completion_lengths(n, [(u, v)])) == sorted([span, n + 2 - span])
