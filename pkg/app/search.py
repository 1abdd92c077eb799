"""Exact c(n,k) by iterative deepening over the chord count.

Each level p scans the canonical p-chord sets in lexicographic order, so
the first complete set found is the least canonical witness. Levels are
split into branches by their first (smallest) chord; branches can run in
worker processes and are merged in branch order.
"""
import json
import multiprocessing
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import List, Optional, Tuple

from app.bounds import binom, k_cycle_cap, start_level
from app.config import settings
from app.core import OrderlyGenerator, chord_universe, completion_lengths
from app.exceptions import InstanceTooLarge, InvalidInstance
from app.logger import get_logger
from app.models import ChordDiagram, KCycleMax, LevelResult, SearchOutcome, SearchStatus
from app.pancyclicity import is_complete, required_lengths

logger = get_logger(__name__)

# deadline and found-flag checks happen every this many canonical sets
_CLOCK_STRIDE = 256

_NOT_FOUND = 2**31 - 1

# position of the earliest branch known to hold a witness; only set inside
# pool workers, shared between them
_found_branch = None


def install_found_flag(flag) -> None:
    """Pool initializer: share the monotone witness flag with a worker."""
    global _found_branch
    _found_branch = flag


def _mark_found(position: int) -> None:
    if _found_branch is None:
        return
    with _found_branch.get_lock():
        if position < _found_branch.value:
            _found_branch.value = position


def _superseded(position: Optional[int], any_witness: bool) -> bool:
    if _found_branch is None or position is None:
        return False
    found = _found_branch.value
    if any_witness:
        return found != _NOT_FOUND
    return found < position


@dataclass
class BranchResult:
    first: int
    witness: Optional[Tuple[int, ...]] = None
    count: int = 0
    nodes: int = 0
    timed_out: bool = False
    superseded: bool = False


def explore_branch(
    n: int,
    k: int,
    p: int,
    first: int,
    deadline: Optional[float] = None,
    stop_at_first: bool = True,
    position: Optional[int] = None,
    any_witness: bool = False,
) -> BranchResult:
    """Scan the canonical p-chord sets whose smallest chord is ``first``.

    With ``stop_at_first`` the scan also stops once another worker has
    found a witness in an earlier branch (any branch with ``any_witness``);
    such a result is marked superseded and certifies nothing.
    """
    required = frozenset(required_lengths(n, k))
    generator = OrderlyGenerator(n, p)
    universe = generator.universe
    result = BranchResult(first=first)
    for subset in generator.generate(first=first):
        result.count += 1
        if result.count % _CLOCK_STRIDE == 1:
            if deadline is not None and time.time() > deadline:
                result.timed_out = True
                break
            if stop_at_first and _superseded(position, any_witness):
                result.superseded = True
                break
        if result.witness is None and is_complete(n, universe.to_chords(subset), k, required):
            result.witness = subset
            if stop_at_first:
                if position is not None:
                    _mark_found(position)
                break
    result.nodes = generator.nodes
    return result


def _explore_branch_args(args) -> BranchResult:
    return explore_branch(*args)


@dataclass
class Checkpoint:
    """Exhausted, infeasible branches persisted as a JSON list."""

    path: Optional[Path]
    entries: List[dict] = field(default_factory=list)

    @classmethod
    def load(cls, path: Optional[Path]) -> "Checkpoint":
        if path is None or not path.exists():
            return cls(path=path)
        with open(path, encoding="utf-8") as f:
            return cls(path=path, entries=json.load(f))

    def lookup(self, n: int, k: int, p: int, prefix: str) -> Optional[dict]:
        for entry in self.entries:
            if (entry["n"], entry["k"], entry["p"], entry["prefix"]) == (n, k, p, prefix):
                return entry
        return None

    def record(self, n: int, k: int, p: int, prefix: str, result: BranchResult) -> None:
        if self.path is None:
            return
        self.entries.append(
            {"n": n, "k": k, "p": p, "prefix": prefix,
             "canonical_sets": result.count, "nodes": result.nodes}
        )
        with open(self.path, "w", encoding="utf-8") as f:
            json.dump(self.entries, f, indent=1)


def run_level(
    n: int,
    k: int,
    p: int,
    *,
    deadline: Optional[float] = None,
    workers: int = 1,
    stop_at_first: bool = True,
    any_witness: bool = False,
    checkpoint: Optional[Checkpoint] = None,
) -> LevelResult:
    """Decide level p: is some p-chord set k-chord pancyclic?"""
    universe = chord_universe(n)
    checkpoint = checkpoint or Checkpoint(path=None)
    branches = OrderlyGenerator(n, p).branches()
    prefixes = {first: f"{n}: {universe.chords[first][0]}-{universe.chords[first][1]}" for first in branches}

    results: List[BranchResult] = []
    pending = []
    for first in branches:
        entry = checkpoint.lookup(n, k, p, prefixes[first])
        if entry is not None:
            logger.info("Branch restored from checkpoint", n=n, k=k, p=p, prefix=prefixes[first])
            results.append(BranchResult(first=first, count=entry["canonical_sets"], nodes=entry["nodes"]))
        else:
            pending.append(first)

    def absorb(result: BranchResult) -> bool:
        results.append(result)
        if result.witness is None and not result.timed_out and not result.superseded:
            checkpoint.record(n, k, p, prefixes[result.first], result)
        return result.witness is not None and stop_at_first

    if workers <= 1 or len(pending) <= 1:
        for first in pending:
            if absorb(explore_branch(n, k, p, first, deadline, stop_at_first)):
                break
            if results[-1].timed_out:
                break
    else:
        found = multiprocessing.Value("i", _NOT_FOUND)
        pool = ProcessPoolExecutor(
            max_workers=workers, initializer=install_found_flag, initargs=(found,)
        )
        try:
            futures = [
                pool.submit(
                    _explore_branch_args,
                    (n, k, p, first, deadline, stop_at_first, branches.index(first), any_witness),
                )
                for first in pending
            ]
            if any_witness:
                for future in as_completed(futures):
                    if absorb(future.result()):
                        break
            else:
                # merge in branch order: the first branch with a witness holds
                # the least witness
                for future in futures:
                    result = future.result()
                    if absorb(result) or result.timed_out:
                        break
        finally:
            # running branches see the flag or the deadline within one stride
            pool.shutdown(wait=True, cancel_futures=True)

    timed_out = any(r.timed_out for r in results)
    with_witness = sorted((r for r in results if r.witness is not None), key=lambda r: r.witness)
    witness = universe.to_diagram(with_witness[0].witness) if with_witness else None
    return LevelResult(
        n=n,
        k=k,
        p=p,
        feasible=witness is not None,
        count_canonical_sets=sum(r.count for r in results),
        witness=witness,
        nodes=sum(r.nodes for r in results),
        timed_out=timed_out and witness is None,
    )


def _check_instance(n: int, k: int) -> None:
    required_lengths(n, k)
    if n > 13:
        raise InvalidInstance(f"Search targets are limited to n <= 13, got n={n}")


def search_c(
    n: int,
    k: int,
    *,
    max_p: Optional[int] = None,
    time_limit: Optional[float] = None,
    workers: Optional[int] = None,
    any_witness: bool = False,
    checkpoint_path: Optional[Path] = None,
) -> SearchOutcome:
    """Smallest number of chords making C_n k-chord pancyclic."""
    _check_instance(n, k)
    max_p = settings.SEARCH_MAX_P if max_p is None else max_p
    max_p = min(max_p, chord_universe(n).size)
    time_limit = settings.SEARCH_TIME_LIMIT if time_limit is None else time_limit
    workers = settings.SEARCH_WORKERS if workers is None else workers
    checkpoint = Checkpoint.load(checkpoint_path)

    started = time.time()
    deadline = started + time_limit if time_limit is not None else None
    p0 = start_level(n, k)
    needed = len(required_lengths(n, k))
    nodes = 0

    def outcome(value: int, status: SearchStatus, witness: Optional[ChordDiagram] = None) -> SearchOutcome:
        return SearchOutcome(
            n=n,
            k=k,
            value=value,
            status=status,
            witness=witness,
            nodes_explored=nodes,
            elapsed_ms=int((time.time() - started) * 1000),
            start_level=p0,
        )

    for p in range(p0, max_p + 1):
        if k >= 3 and k_cycle_cap(k, p) < needed:
            # too few k-chord cycles possible at this level
            continue
        logger.info("Searching level", n=n, k=k, p=p)
        level = run_level(
            n, k, p,
            deadline=deadline,
            workers=workers,
            any_witness=any_witness,
            checkpoint=checkpoint,
        )
        nodes += level.nodes
        if level.feasible:
            logger.info("Level feasible", n=n, k=k, p=p, witness=level.witness.text)
            return outcome(p, SearchStatus.EXACT, level.witness)
        if level.timed_out:
            logger.warning("Search timed out", n=n, k=k, p=p)
            return outcome(p, SearchStatus.TIMEOUT)
        logger.info("Level exhausted", n=n, k=k, p=p, canonical_sets=level.count_canonical_sets)
    return outcome(max(max_p + 1, p0), SearchStatus.LOWER_BOUND)


def exhaust_level(n: int, k: int, p: int, workers: Optional[int] = None) -> LevelResult:
    """Scan the whole of level p, counting every canonical set."""
    _check_instance(n, k)
    if p < 0 or p > chord_universe(n).size:
        raise InvalidInstance(f"p must lie in 0..{chord_universe(n).size}, got p={p}")
    workers = settings.SEARCH_WORKERS if workers is None else workers
    if p == 0:
        return LevelResult(n=n, k=k, p=0, feasible=False, count_canonical_sets=1, nodes=0)
    return run_level(n, k, p, workers=workers, stop_at_first=False)


def _k_cycle_count(n: int, chords, k: int) -> Tuple[int, bool]:
    count = 0
    has_chord_cycle = False
    for subset in combinations(chords, k):
        lengths = completion_lengths(n, subset)
        count += len(lengths)
        if k in lengths:
            has_chord_cycle = True
    return count, has_chord_cycle


def empirical_k_cycle_max(n: int, k: int, p: int) -> KCycleMax:
    """Largest number of k-chord cycles over all p-chord sets on C_n.

    ``value`` maximizes over the sets that contain a k-cycle of chords when
    k >= 3, the hypothesis of the k-chord cap; ``unrestricted_value`` over
    all sets.
    """
    if n > settings.EMPIRICAL_MAX_N or p > settings.EMPIRICAL_MAX_P:
        raise InstanceTooLarge(
            f"Empirical maxima are limited to n <= {settings.EMPIRICAL_MAX_N}, "
            f"p <= {settings.EMPIRICAL_MAX_P}; got n={n}, p={p}"
        )
    if n < 4 or k < 1 or p < k or p > chord_universe(n).size:
        raise InvalidInstance(f"Need 1 <= k <= p <= number of chords; got n={n}, k={k}, p={p}")
    restricted = k >= 3
    generator = OrderlyGenerator(n, p)
    universe = generator.universe
    best = best_any = 0
    witness = None
    contains = False
    sets = 0
    for subset in generator.generate():
        sets += 1
        count, has_chord_cycle = _k_cycle_count(n, universe.to_chords(subset), k)
        best_any = max(best_any, count)
        if restricted and not has_chord_cycle:
            continue
        if count > best:
            best, witness, contains = count, subset, has_chord_cycle
        elif count == best and has_chord_cycle:
            contains = True
    return KCycleMax(
        n=n,
        k=k,
        p=p,
        value=best,
        unrestricted_value=best_any,
        witness=universe.to_diagram(witness) if witness is not None else None,
        contains_k_cycle=contains,
        canonical_sets=sets,
    )


def orbit_total(n: int, p: int) -> Tuple[int, int]:
    """Sum of orbit sizes over canonical p-sets, and C(m, p)."""
    generator = OrderlyGenerator(n, p)
    universe = generator.universe
    total = sum(
        2 * n // universe.stabilizer_size(subset) for subset in generator.generate()
    )
    return total, binom(universe.size, p)


def brute_force_c(n: int, k: int, max_p: Optional[int] = None) -> Optional[int]:
    """c(n,k) by scanning every chord subset, without symmetry or bounds."""
    required = frozenset(required_lengths(n, k))
    universe = chord_universe(n)
    max_p = universe.size if max_p is None else max_p
    for p in range(k, max_p + 1):
        for subset in combinations(universe.chords, p):
            if is_complete(n, subset, k, required):
                return p
    return None
