"""k-chord pancyclicity: the target length set L(n,k), verification of a
chord diagram against it, and a brute-force realizability oracle."""
from functools import lru_cache
from itertools import combinations
from typing import FrozenSet, List, Sequence, Tuple

from app.config import settings
from app.core import OrderlyGenerator, completion_lengths, k_chord_lengths, validate
from app.exceptions import InvalidInstance, KTooLarge, NTooLargeForOracle, NTooSmall
from app.logger import get_logger
from app.models import Chord, ChordDiagram, VerifyReport

logger = get_logger(__name__)


def _check_nk(n: int, k: int) -> None:
    if n < 6:
        raise NTooSmall(f"c(n,k) is defined for n >= 6, got n={n}")
    if k > n:
        raise KTooLarge(f"k={k} exceeds n={n}")
    if k < 1:
        raise InvalidInstance(f"k must be at least 1, got k={k}")


def required_lengths(n: int, k: int) -> List[int]:
    """L(n,k): lengths max(3,k)..n, without n when k = 1.

    A Hamilton cycle cannot use exactly one chord of another Hamilton cycle.
    """
    _check_nk(n, k)
    top = n - 1 if k == 1 else n
    return list(range(max(3, k), top + 1))


def verify(diagram: ChordDiagram, k: int) -> VerifyReport:
    validate(diagram)
    _check_nk(diagram.n, k)
    required = required_lengths(diagram.n, k)
    achieved, _ = k_chord_lengths(diagram.n, diagram.chords, k)
    missing = sorted(set(required) - achieved)
    return VerifyReport(
        n=diagram.n,
        k=k,
        complete=not missing,
        required=required,
        achieved=sorted(achieved),
        missing=missing,
    )


def is_complete(n: int, chords: Sequence[Chord], k: int, required: FrozenSet[int]) -> bool:
    """Fast feasibility test used by the searches; stops once every
    required length has been seen."""
    if len(chords) < k:
        return False
    outstanding = set(required)
    for subset in combinations(chords, k):
        for length in completion_lengths(n, subset):
            outstanding.discard(length)
        if not outstanding:
            return True
    return False


@lru_cache(maxsize=None)
def realizable_lengths(n: int, k: int) -> Tuple[int, ...]:
    """Every l for which some chord set on C_n has an l-cycle through
    exactly k chords.

    Only the k chords on the cycle matter, so it suffices to scan the
    canonical k-chord sets in which no vertex carries more than two chords.
    """
    if n > settings.ORACLE_MAX_N:
        raise NTooLargeForOracle(
            f"Exhaustive realizability is limited to n <= {settings.ORACLE_MAX_N}, got n={n}"
        )
    _check_nk(n, k)
    candidates = set(range(max(3, k), n + 1))
    found = set()
    generator = OrderlyGenerator(n, k, max_degree=2)
    for subset in generator.generate():
        found.update(completion_lengths(n, generator.universe.to_chords(subset)))
        if found >= candidates:
            break
    logger.debug("Realizability scan finished", n=n, k=k, nodes=generator.nodes)
    return tuple(sorted(found & candidates))


def realizable(n: int, k: int, l: int) -> bool:
    if not 3 <= l <= n:
        raise InvalidInstance(f"Cycle length must lie in 3..{n}, got l={l}")
    if l < k:
        return False
    return l in realizable_lengths(n, k)


def oracle_required_lengths(n: int, k: int) -> List[int]:
    """L(n,k) as decided by the realizability oracle.

    Disagreement with the closed form is logged as an error and the oracle's
    answer is returned.
    """
    closed = required_lengths(n, k)
    oracle = list(realizable_lengths(n, k))
    if oracle != closed:
        logger.error("Closed form disagrees with oracle", n=n, k=k, closed=closed, oracle=oracle)
    return oracle
