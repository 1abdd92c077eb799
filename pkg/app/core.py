"""Chord diagrams on the base cycle C_n.

Validation, the shared ``n: u-v,...`` text format, crossing tests,
dihedral canonical forms, orderly generation of canonical chord sets and
cycle enumeration by chord subset.
"""
import re
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx

from app.config import settings
from app.exceptions import (
    AdjacentEndpoints,
    ChordLimitExceeded,
    ChordParseError,
    DuplicateChord,
    NTooSmall,
    ValidationError,
    VertexOutOfRange,
)
from app.models import CanonicalForm, Chord, ChordDiagram, CycleSpectrum, normalize_chord

_PAIR = re.compile(r"^(\d+)-(\d+)$")


def parse_chord_list(text: str) -> List[Chord]:
    """Parse ``u1-v1,u2-v2,...``; whitespace is ignored."""
    compact = re.sub(r"\s+", "", text)
    if not compact:
        return []
    chords = []
    for token in compact.split(","):
        match = _PAIR.match(token)
        if match is None:
            raise ChordParseError(f"Cannot parse chord token {token!r}")
        chords.append(normalize_chord(int(match.group(1)), int(match.group(2))))
    return chords


def parse_diagram(text: str) -> ChordDiagram:
    """Parse the shared chord-set text format, e.g. ``6: 1-3,1-4``."""
    head, sep, tail = text.partition(":")
    head = head.strip()
    if not sep or not head.isdigit():
        raise ChordParseError(f"Cannot parse vertex count {head!r}; expected 'n: u-v,...'")
    return ChordDiagram(n=int(head), chords=parse_chord_list(tail))


def _check_chord(n: int, chord: Chord) -> None:
    u, v = chord
    if not (1 <= u <= n and 1 <= v <= n):
        raise VertexOutOfRange(f"Chord {u}-{v} has a vertex outside 1..{n}")
    gap = (v - u) % n
    if gap < 2 or gap > n - 2:
        raise AdjacentEndpoints(f"{u}-{v} joins vertices adjacent on C_{n}, not a chord")


def validate(diagram: ChordDiagram) -> ChordDiagram:
    """Check every ChordDiagram invariant; returns the diagram unchanged."""
    if diagram.n < 4:
        raise NTooSmall(f"The base cycle needs at least 4 vertices, got n={diagram.n}")
    seen: Set[Chord] = set()
    for chord in diagram.chords:
        _check_chord(diagram.n, chord)
        if chord in seen:
            raise DuplicateChord(f"Chord {chord[0]}-{chord[1]} appears twice")
        seen.add(chord)
    return diagram


def crossing(c1: Chord, c2: Chord, n: int) -> bool:
    """True iff the chords' endpoints strictly interleave around C_n."""
    a, b = normalize_chord(*c1)
    c, d = normalize_chord(*c2)
    _check_chord(n, (a, b))
    _check_chord(n, (c, d))
    return a < c < b < d or c < a < d < b


# --- dihedral symmetry ---------------------------------------------------


@lru_cache(maxsize=None)
def dihedral_maps(n: int) -> Tuple[Tuple[int, ...], ...]:
    """The 2n symmetries of C_n as vertex maps (index 0 unused).

    Rotations come first, starting with the identity, then reflections.
    """
    maps = []
    for s in range(n):
        maps.append((0,) + tuple((v - 1 + s) % n + 1 for v in range(1, n + 1)))
    for s in range(n):
        maps.append((0,) + tuple((s - (v - 1)) % n + 1 for v in range(1, n + 1)))
    return tuple(maps)


def apply_map(g: Sequence[int], chords: Iterable[Chord]) -> Tuple[Chord, ...]:
    return tuple(sorted(normalize_chord(g[u], g[v]) for u, v in chords))


def canonicalize(diagram: ChordDiagram) -> CanonicalForm:
    validate(diagram)
    original = tuple(diagram.chords)
    images = [apply_map(g, original) for g in dihedral_maps(diagram.n)]
    stabilizer = sum(1 for image in images if image == original)
    return CanonicalForm(
        representative=ChordDiagram(n=diagram.n, chords=min(images)),
        stabilizer_size=stabilizer,
    )


class ChordUniverse:
    """All chords of C_n in lexicographic order, with the dihedral group
    acting on chord indices.

    Chord sets are handled as sorted index tuples; since index order is
    lexicographic order on (u, v), comparing index tuples compares the
    sorted chord lists.
    """

    def __init__(self, n: int):
        self.n = n
        self.chords: List[Chord] = [
            (u, v)
            for u in range(1, n + 1)
            for v in range(u + 2, n + 1)
            if not (u == 1 and v == n)
        ]
        self.index: Dict[Chord, int] = {c: i for i, c in enumerate(self.chords)}
        self.perms: List[Tuple[int, ...]] = [
            tuple(self.index[normalize_chord(g[u], g[v])] for u, v in self.chords)
            for g in dihedral_maps(n)
        ]

    @property
    def size(self) -> int:
        return len(self.chords)

    def image(self, perm: Sequence[int], subset: Sequence[int]) -> Tuple[int, ...]:
        return tuple(sorted(perm[i] for i in subset))

    def is_canonical(self, subset: Tuple[int, ...]) -> bool:
        for perm in self.perms[1:]:
            if self.image(perm, subset) < subset:
                return False
        return True

    def stabilizer_size(self, subset: Tuple[int, ...]) -> int:
        return sum(1 for perm in self.perms if self.image(perm, subset) == subset)

    def to_chords(self, subset: Iterable[int]) -> Tuple[Chord, ...]:
        return tuple(self.chords[i] for i in subset)

    def to_diagram(self, subset: Iterable[int]) -> ChordDiagram:
        return ChordDiagram(n=self.n, chords=self.to_chords(subset))


@lru_cache(maxsize=32)
def chord_universe(n: int) -> ChordUniverse:
    return ChordUniverse(n)


class OrderlyGenerator:
    """Canonical p-chord sets of C_n, one per dihedral orbit, in
    lexicographic order.

    A set is canonical when it is the least image of itself under the 2n
    maps. Dropping the largest chord of a canonical set leaves a canonical
    set, so extending only canonical prefixes by larger chords reaches
    every orbit exactly once.
    """

    def __init__(self, n: int, p: int, max_degree: Optional[int] = None):
        self.universe = chord_universe(n)
        self.p = p
        self.max_degree = max_degree
        self.nodes = 0

    def branches(self) -> List[int]:
        """First chords of canonical sets: the canonical single chords."""
        if self.p == 0:
            return []
        return [c for c in range(self.universe.size) if self.universe.is_canonical((c,))]

    def generate(self, first: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
        if self.p == 0:
            yield ()
            return
        degree = [0] * (self.universe.n + 1)
        yield from self._extend((), 0, degree, first)

    def _extend(self, prefix, start, degree, first) -> Iterator[Tuple[int, ...]]:
        universe = self.universe
        remaining = self.p - len(prefix)
        stop = universe.size - remaining + 1
        if first is not None and not prefix:
            candidates = range(first, min(first + 1, stop))
        else:
            candidates = range(start, stop)
        for c in candidates:
            u, v = universe.chords[c]
            if self.max_degree is not None and (
                degree[u] >= self.max_degree or degree[v] >= self.max_degree
            ):
                continue
            candidate = prefix + (c,)
            if not universe.is_canonical(candidate):
                continue
            self.nodes += 1
            if remaining == 1:
                yield candidate
                continue
            degree[u] += 1
            degree[v] += 1
            yield from self._extend(candidate, c + 1, degree, first)
            degree[u] -= 1
            degree[v] -= 1


def canonical_diagrams(n: int, p: int) -> Iterator[ChordDiagram]:
    generator = OrderlyGenerator(n, p)
    for subset in generator.generate():
        yield generator.universe.to_diagram(subset)


# --- cycle enumeration -----------------------------------------------------


def completion_lengths(n: int, chords: Sequence[Chord]) -> List[int]:
    """Lengths of the cycles of C_n + chords that use every given chord.

    Cycle edges between consecutive chord endpoints form arcs; each arc is
    either wholly used or unused. An endpoint carrying one chord takes
    exactly one incident arc, an endpoint carrying two takes none, so
    fixing the first arc determines the rest: at most two completions.
    Completions splitting into several cycles are discarded.
    """
    if not chords:
        return [n]
    partners: Dict[int, List[int]] = {}
    for u, v in chords:
        partners.setdefault(u, []).append(v)
        partners.setdefault(v, []).append(u)
    if any(len(p) > 2 for p in partners.values()):
        return []
    ends = sorted(partners)
    t = len(ends)
    need = [2 - len(partners[w]) for w in ends]
    arc_len = [(ends[(i + 1) % t] - ends[i]) % n for i in range(t)]
    position = {w: i for i, w in enumerate(ends)}

    lengths = []
    for x0 in (0, 1):
        used = [x0] + [0] * (t - 1)
        feasible = True
        for i in range(1, t):
            used[i] = need[i] - used[i - 1]
            if used[i] not in (0, 1):
                feasible = False
                break
        if not feasible or used[t - 1] + used[0] != need[0]:
            continue
        if not _single_component(t, partners, position, used):
            continue
        lengths.append(len(chords) + sum(arc_len[i] for i in range(t) if used[i]))
    return lengths


def _single_component(t, partners, position, used) -> bool:
    # every endpoint has degree 2, so one component means one cycle
    parent = list(range(t))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for w, others in partners.items():
        for x in others:
            ri, rj = find(position[w]), find(position[x])
            if ri != rj:
                parent[ri] = rj
    for i in range(t):
        if used[i]:
            ri, rj = find(i), find((i + 1) % t)
            if ri != rj:
                parent[ri] = rj
    root = find(0)
    return all(find(i) == root for i in range(1, t))


def k_chord_lengths(n: int, chords: Sequence[Chord], k: int) -> Tuple[Set[int], int]:
    """Lengths and count of the cycles using exactly k of the chords."""
    if k == 0:
        return {n}, 1
    lengths: Set[int] = set()
    count = 0
    for subset in combinations(chords, k):
        found = completion_lengths(n, subset)
        lengths.update(found)
        count += len(found)
    return lengths, count


def enumerate_cycles(diagram: ChordDiagram, max_chords: Optional[int] = None) -> CycleSpectrum:
    """Spectrum of every cycle of C_n + chords, stratified by chord count."""
    validate(diagram)
    limit = settings.CHORD_LIMIT if max_chords is None else max_chords
    if diagram.p > limit:
        raise ChordLimitExceeded(
            f"{diagram.p} chords exceed the enumeration limit of {limit}"
        )
    by_chord_count: Dict[int, List[int]] = {}
    counts: Dict[int, int] = {}
    total = 0
    for k in range(diagram.p + 1):
        lengths, count = k_chord_lengths(diagram.n, diagram.chords, k)
        if count:
            by_chord_count[k] = sorted(lengths)
            counts[k] = count
            total += count
    return CycleSpectrum(
        n=diagram.n,
        by_chord_count=by_chord_count,
        counts_by_chord_count=counts,
        total_cycles=total,
    )


def cycles_through_all(diagram: ChordDiagram, x: Iterable[Chord]) -> int:
    """Number of cycles of C_n + X using every chord of X."""
    validate(diagram)
    subset = sorted({normalize_chord(*c) for c in x})
    present = set(diagram.chords)
    for chord in subset:
        if chord not in present:
            raise ValidationError(f"Chord {chord[0]}-{chord[1]} is not in the diagram")
    return len(completion_lengths(diagram.n, subset))


# --- independent oracle ----------------------------------------------------


def diagram_graph(diagram: ChordDiagram) -> nx.Graph:
    graph = nx.cycle_graph(range(1, diagram.n + 1))
    graph.add_edges_from(diagram.chords)
    return graph


def simple_cycle_spectrum(diagram: ChordDiagram) -> Tuple[CycleSpectrum, List[List[int]]]:
    """Spectrum from a generic simple-cycle enumerator (networkx).

    Also returns the cycles as vertex lists, for debugging.
    """
    validate(diagram)
    chords = set(diagram.chords)
    by_chord_count: Dict[int, Set[int]] = {}
    counts: Dict[int, int] = {}
    cycles = sorted(sorted_cycle(c) for c in nx.simple_cycles(diagram_graph(diagram)))
    for cycle in cycles:
        used = sum(
            1
            for a, b in zip(cycle, cycle[1:] + cycle[:1])
            if normalize_chord(a, b) in chords
        )
        by_chord_count.setdefault(used, set()).add(len(cycle))
        counts[used] = counts.get(used, 0) + 1
    spectrum = CycleSpectrum(
        n=diagram.n,
        by_chord_count={k: sorted(v) for k, v in sorted(by_chord_count.items())},
        counts_by_chord_count=dict(sorted(counts.items())),
        total_cycles=len(cycles),
    )
    return spectrum, cycles


def sorted_cycle(cycle: Sequence[int]) -> List[int]:
    """Rotate a vertex cycle to start at its least vertex, smaller neighbour second."""
    cycle = list(cycle)
    i = cycle.index(min(cycle))
    cycle = cycle[i:] + cycle[:i]
    if len(cycle) > 2 and cycle[-1] < cycle[1]:
        cycle = cycle[:1] + cycle[1:][::-1]
    return cycle
