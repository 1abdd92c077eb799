from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

Chord = Tuple[int, int]


def normalize_chord(u: int, v: int) -> Chord:
    """Store a chord as (min, max)."""
    return (u, v) if u <= v else (v, u)


def _normalize_pairs(value):
    return tuple(sorted(normalize_chord(int(u), int(v)) for u, v in value))


class ChordDiagram(BaseModel):
    """An n-cycle v_1..v_n plus a set of chords, vertices labeled 1..n."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., description="Number of vertices on the base cycle")
    chords: Tuple[Chord, ...] = Field(default=(), description="Chords as (u, v) with u < v")

    @field_validator("chords", mode="before")
    @classmethod
    def sort_chords(cls, value):
        # duplicates are kept so that validate() can report them
        return _normalize_pairs(value)

    @property
    def p(self) -> int:
        return len(self.chords)

    @property
    def text(self) -> str:
        """Shared chord-set text format, e.g. ``6: 1-3,1-4``."""
        return f"{self.n}: " + ",".join(f"{u}-{v}" for u, v in self.chords)

    def __str__(self) -> str:
        return self.text


class CycleSpectrum(BaseModel):
    n: int
    by_chord_count: Dict[int, List[int]]
    counts_by_chord_count: Dict[int, int]
    total_cycles: int


class CanonicalForm(BaseModel):
    representative: ChordDiagram
    stabilizer_size: int


class VerifyReport(BaseModel):
    n: int
    k: int
    complete: bool
    required: List[int]
    achieved: List[int]
    missing: List[int]


class SearchStatus(str, Enum):
    EXACT = "exact"
    LOWER_BOUND = "lower_bound"
    TIMEOUT = "timeout"


class SearchOutcome(BaseModel):
    n: int
    k: int
    value: int
    status: SearchStatus
    witness: Optional[ChordDiagram] = None
    nodes_explored: int = 0
    elapsed_ms: int = 0
    start_level: int = 0

    def record(self) -> dict:
        """JSON object with the frozen field names of the search output."""
        return {
            "n": self.n,
            "k": self.k,
            "value": self.value,
            "status": self.status.value,
            "witness": self.witness.text if self.witness is not None else None,
            "nodes": self.nodes_explored,
            "ms": self.elapsed_ms,
        }


class LevelResult(BaseModel):
    n: int
    k: int
    p: int
    feasible: bool
    count_canonical_sets: int
    witness: Optional[ChordDiagram] = None
    nodes: int = 0
    timed_out: bool = False


class KCycleMax(BaseModel):
    n: int
    k: int
    p: int
    value: int
    unrestricted_value: int
    witness: Optional[ChordDiagram] = None
    contains_k_cycle: bool
    canonical_sets: int


class BoundReport(BaseModel):
    n: int
    k: int
    p_threshold: int
    sound_threshold: int
    k1_closed_form: Optional[int] = None
    k1_printed_floor: Optional[int] = None
    k2_threshold: Optional[int] = None
    k2_printed_cap: Optional[int] = None
    largest_real_root: Optional[float] = None
    bondy_edge_bound: float
    pancyclic_chord_bound: int
    notes: List[str] = []


class CrossoverResult(BaseModel):
    k: int
    lower_solution: float
    upper_solution: float
    w0_value: float
    wm1_value: float
    lower_residual: float
    upper_residual: float


class Graph(BaseModel):
    """Simple undirected graph on vertices 1..n."""

    model_config = ConfigDict(frozen=True)

    n: int
    edges: Tuple[Chord, ...] = ()

    @field_validator("edges", mode="before")
    @classmethod
    def sort_edges(cls, value):
        return _normalize_pairs(value)

    @property
    def text(self) -> str:
        return f"{self.n}; edges: " + ",".join(f"{u}-{v}" for u, v in self.edges)

    def __str__(self) -> str:
        return self.text


class RebasedReport(BaseModel):
    hamilton_cycle: List[int]
    diagram: ChordDiagram
    report: VerifyReport
    total_cycles: int


class RelativityReport(BaseModel):
    graph: Graph
    k: int
    hamilton_cycles: List[List[int]]
    per_cycle: List[RebasedReport]
    invariant_flag: bool


class CellKind(str, Enum):
    EXACT = "exact"
    LOWER_BOUND = "lower_bound"


class CellSource(str, Enum):
    SEARCH = "search"
    CLOSED_FORM = "closed_form"
    CONSTRUCTION_BOUND = "construction+bound"


class TableCell(BaseModel):
    n: int
    k: int
    value: int
    kind: CellKind
    source: CellSource
    witness: Optional[ChordDiagram] = None

    def tsv(self) -> str:
        return f"{self.n}\t{self.k}\t{self.value}\t{self.kind.value}\t{self.source.value}"
