"""Explicit chord diagrams: the worked n=6 example, the equality witnesses
for c(n,n) and c(n,n-1), the k=1 fan, and the extremal families for the
number of cycles."""
from functools import lru_cache
from typing import List, Optional

from app.bounds import c_value_k1
from app.core import validate
from app.exceptions import BadStage, InvalidInstance, NTooSmall, NTooSmallForFamily
from app.logger import get_logger
from app.models import ChordDiagram

logger = get_logger(__name__)

_EXAMPLE1 = {
    1: [(1, 3), (1, 4)],
    2: [(1, 3), (1, 4), (2, 6)],
    3: [(1, 3), (1, 4), (2, 6), (2, 4), (4, 6)],
}


@lru_cache(maxsize=None)
def example1(stage: int, n: int = 6) -> ChordDiagram:
    """Cumulative chord sets on C_6 for k = 1, 2, 3, and a 6-chord set for k = 4."""
    if n != 6:
        raise InvalidInstance(f"The worked example lives on C_6, got n={n}")
    if stage in _EXAMPLE1:
        return validate(ChordDiagram(n=6, chords=_EXAMPLE1[stage]))
    if stage == 4:
        from app.search import search_c

        outcome = search_c(6, 4)
        return outcome.witness
    raise BadStage(f"Stage must be 1..4, got {stage}")


def _non_adjacent(n: int, u: int, v: int) -> bool:
    gap = (v - u) % n
    return 2 <= gap <= n - 2


@lru_cache(maxsize=None)
def all_chord_hamilton(n: int) -> ChordDiagram:
    """n chords forming one Hamilton cycle, consecutive vertices never
    adjacent on C_n.

    Depth-first from vertex 1, trying smaller vertices first.
    """
    if n < 6:
        raise NTooSmall(f"An all-chord Hamilton cycle is built for n >= 6, got n={n}")
    path = [1]
    visited = [False] * (n + 1)
    visited[1] = True

    def extend() -> bool:
        if len(path) == n:
            return _non_adjacent(n, path[-1], 1)
        for w in range(2, n + 1):
            if not visited[w] and _non_adjacent(n, path[-1], w):
                visited[w] = True
                path.append(w)
                if extend():
                    return True
                path.pop()
                visited[w] = False
        return False

    extend()
    chords = [(path[i], path[(i + 1) % n]) for i in range(n)]
    return validate(ChordDiagram(n=n, chords=chords))


@lru_cache(maxsize=None)
def lemma3_construction(n: int) -> ChordDiagram:
    """n chords on C_n with (n-1)-chord cycles of lengths n-1 and n.

    Start from the all-chord Hamilton cycle H on C_{n-1} and split vertex
    v = 1 into v_u = 1 (next to u = n) and v_w = 2 (next to w = 3); old
    vertex j >= 2 becomes j + 1. H's chords x-v and y-v (x < y) become
    x-v_w and y-v_u, so H turns into an n-cycle using the edge v_u-v_w, and
    the extra chord x-v_u closes an (n-1)-cycle of chords.
    """
    if n < 7:
        raise NTooSmall(f"The vertex split needs n >= 7, got n={n}")
    base = all_chord_hamilton(n - 1)
    at_v = sorted(v if u == 1 else u for u, v in base.chords if 1 in (u, v))
    x, y = at_v
    chords = [(u + 1, v + 1) for u, v in base.chords if 1 not in (u, v)]
    chords += [(2, x + 1), (1, y + 1), (1, x + 1)]
    diagram = validate(ChordDiagram(n=n, chords=chords))
    logger.debug("Vertex split", n=n, x=x, y=y, diagram=diagram.text)
    return diagram


def one_chord_fan(n: int) -> ChordDiagram:
    """Chords (1,3), (1,4), ..., (1, 2+c) with c = ceil((n-3)/2).

    Chord (1,j) carries the 1-chord lengths j and n+2-j.
    """
    c = c_value_k1(n)
    return validate(ChordDiagram(n=n, chords=[(1, j) for j in range(3, 3 + c)]))


def noncrossing_family(n: int, p: int) -> ChordDiagram:
    """p nested parallel chords (1+i, n+1-i); the fewest cycles possible."""
    if p < 0 or n < 2 * p + 2:
        raise NTooSmallForFamily(f"Nested chords need n >= 2p+2, got n={n}, p={p}")
    return validate(ChordDiagram(n=n, chords=[(1 + i, n + 1 - i) for i in range(1, p + 1)]))


def ear_family(n: int, p: int) -> ChordDiagram:
    """p ears (2i-1, 2i+1) around the cycle; non-crossing but all cut off
    the same face."""
    if p < 0 or n < 2 * p + 2:
        raise NTooSmallForFamily(f"Ears need n >= 2p+2, got n={n}, p={p}")
    return validate(ChordDiagram(n=n, chords=[(2 * i - 1, 2 * i + 1) for i in range(1, p + 1)]))


def crossing_family(n: int, p: int) -> ChordDiagram:
    """p pairwise crossing chords (i, i+p)."""
    if p < 2 or n < 2 * p:
        raise NTooSmallForFamily(f"Crossing chords need p >= 2 and n >= 2p, got n={n}, p={p}")
    return validate(ChordDiagram(n=n, chords=[(i, i + p) for i in range(1, p + 1)]))


def crossing_family_cycles(p: int) -> int:
    """Cycle count of crossing_family: 1 + 2^p + p(p-1).

    Subsets of odd size or of size 2 close up in two ways; even subsets of
    size 4 or more split into several cycles.
    """
    return 1 + 2 ** p + p * (p - 1)


def ear_family_cycles(p: int) -> int:
    """Cycle count of ear_family: 2^p + p."""
    return 2 ** p + p


KINDS = ("example1", "lemma3", "hamilton", "fan", "noncrossing", "ears", "crossing")


def construct(kind: str, n: Optional[int] = None, p: Optional[int] = None, stage: Optional[int] = None) -> ChordDiagram:
    """Dispatch by construction name."""
    if kind == "example1":
        return example1(stage or 1)
    if n is None:
        raise InvalidInstance(f"Construction {kind!r} needs n")
    if kind == "lemma3":
        return lemma3_construction(n)
    if kind == "hamilton":
        return all_chord_hamilton(n)
    if kind == "fan":
        return one_chord_fan(n)
    if p is None:
        raise InvalidInstance(f"Construction {kind!r} needs p")
    if kind == "noncrossing":
        return noncrossing_family(n, p)
    if kind == "ears":
        return ear_family(n, p)
    if kind == "crossing":
        return crossing_family(n, p)
    raise InvalidInstance(f"Unknown construction {kind!r}; choose from {', '.join(KINDS)}")


def kinds() -> List[str]:
    return list(KINDS)
