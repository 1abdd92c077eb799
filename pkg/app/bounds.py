"""Closed-form bounds on cycle counts and on c(n,k), their integer
thresholds, and the Lambert W crossover between ln n and n^(1/k)."""
import math
from typing import List, Tuple

from numpy.polynomial import Polynomial

from app.exceptions import DomainError, InvalidInstance, KBelow3, KTooLarge, NTooSmall
from app.models import BoundReport, CrossoverResult

MAX_LEMMA2_P = 62


def binom(a: int, b: int) -> int:
    """C(a, b) with C(a, b) = 0 whenever a < b, b < 0 or a < 0."""
    if b < 0 or a < 0 or a < b:
        return 0
    return math.comb(a, b)


def n_cycles_bounds(p: int) -> Tuple[int, int]:
    """Lower and upper bounds on the number of cycles of C_n plus p chords."""
    if p < 0 or p > MAX_LEMMA2_P:
        raise InvalidInstance(f"p must lie in 0..{MAX_LEMMA2_P}, got p={p}")
    return binom(p + 2, 2), 2 ** (p + 1) - 1


def _check_cap_args(k: int, p: int) -> None:
    if k < 3:
        raise KBelow3(f"The k-chord cycle cap needs k >= 3, got k={k}")
    if p < k:
        raise InvalidInstance(f"The k-chord cycle cap needs p >= k, got p={p}, k={k}")


def k_cycle_cap(k: int, p: int) -> int:
    """Cap on the number of k-chord cycles made by p chords containing a k-cycle."""
    _check_cap_args(k, p)
    return binom(p, k) + k * binom(p - k, k - 1) + binom(p - k, k)


def k_cycle_cap_sum_form(k: int, p: int) -> int:
    """The same cap, summed chord by chord before simplification.

    Adding the r-th chord outside the k-cycle S, a k-chord cycle through it
    uses i chords of S and k-i-1 of the r-1 earlier extra chords; with
    i <= 1 at most two such cycles exist, otherwise at most one.
    """
    _check_cap_args(k, p)
    total = 1
    for r in range(1, p - k + 1):
        pairs = sum(binom(k, i) * binom(r - 1, k - i - 1) for i in range(0, 2))
        rest = sum(binom(k, i) * binom(r - 1, k - i - 1) for i in range(2, k))
        total += 2 * pairs + rest
    return total


def _check_nk(n: int, k: int) -> None:
    if n < 6:
        raise NTooSmall(f"Bounds are defined for n >= 6, got n={n}")
    if k > n:
        raise KTooLarge(f"k={k} exceeds n={n}")
    if k < 1:
        raise InvalidInstance(f"k must be at least 1, got k={k}")


def chord_lower_bound(n: int, k: int) -> int:
    """Smallest p >= k whose cap reaches the n-k+1 required lengths."""
    _check_nk(n, k)
    if k < 3:
        raise KBelow3(f"Use the dedicated k=1 and k=2 forms, got k={k}")
    p = k
    while k_cycle_cap(k, p) < n - k + 1:
        p += 1
    return p


def chord_lower_bound_root(n: int, k: int) -> float:
    """Largest real root of cap(k,p) - n + k - 1 as a polynomial in p.

    Reporting only; chord_lower_bound is the certified integer threshold.
    """
    _check_nk(n, k)
    if k < 3:
        raise KBelow3(f"The polynomial threshold needs k >= 3, got k={k}")

    def falling(shift: int, count: int) -> Polynomial:
        poly = Polynomial([1.0])
        for i in range(count):
            poly = poly * Polynomial([-(shift + i), 1.0])
        return poly

    poly = (
        falling(0, k) / math.factorial(k)
        + k * falling(k, k - 1) / math.factorial(k - 1)
        + falling(k, k) / math.factorial(k)
        - (n - k + 1)
    )
    real = [r.real for r in poly.roots() if abs(r.imag) < 1e-7]
    return max(real)


def c_value_k1(n: int) -> int:
    """c(n,1) = ceil((n-3)/2).

    A chord making a 1-chord cycle of length l also makes one of length
    n+2-l, so each chord covers at most two of the n-3 required lengths.
    """
    if n < 6:
        raise NTooSmall(f"c(n,1) is defined for n >= 6, got n={n}")
    return (n - 2) // 2


def c_lower_bound_k1(n: int) -> int:
    return c_value_k1(n)


def printed_k1_floor(n: int) -> int:
    """floor((n-3)/2). Undercounts for even n: c(6,1) is 2, this gives 1."""
    return (n - 3) // 2


def two_chord_cap(p: int) -> int:
    """Cap p^2 - p - 1 on 2-chord cycles. Three crossing long chords on C_6 already make 6."""
    if p < 1:
        raise InvalidInstance(f"p must be at least 1, got p={p}")
    return p * p - p - 1


def c_lower_bound_k2(n: int) -> int:
    """ceil((1 + sqrt(4n-3)) / 2): least p with (2p-1)^2 >= 4n-3."""
    if n < 6:
        raise NTooSmall(f"c(n,2) is defined for n >= 6, got n={n}")
    s = math.isqrt(4 * n - 3)
    p = (s + 1) // 2
    while (2 * p - 1) ** 2 < 4 * n - 3:
        p += 1
    return p


def required_count(n: int, k: int) -> int:
    """|L(n,k)|."""
    return n - max(3, k) + 1 - (1 if k == 1 else 0)


def sound_lower_bound(n: int, k: int) -> int:
    """Least p >= k with 2*C(p,k) >= |L(n,k)|.

    Any k chords lie on at most two common cycles, so this holds without
    further hypotheses. For k = 1, 2 it gives ceil((n-3)/2) and the least p
    with p(p-1) >= n-2.
    """
    _check_nk(n, k)
    needed = required_count(n, k)
    p = k
    while 2 * binom(p, k) < needed:
        p += 1
    return p


def start_level(n: int, k: int) -> int:
    """First chord count worth searching for c(n,k)."""
    level = max(k, sound_lower_bound(n, k))
    if k >= 3:
        level = max(level, chord_lower_bound(n, k))
    return level


def bondy_edge_bound(n: int) -> float:
    """n - 1 + log2(n - 1): fewest edges of a pancyclic graph on n vertices."""
    if n < 3:
        raise NTooSmall(f"The edge bound needs n >= 3, got n={n}")
    return n - 1 + math.log2(n - 1)


def pancyclic_chord_bound(n: int) -> int:
    """Least p whose cycle-count cap 2^(p+1)-1 covers the n-2 lengths 3..n."""
    if n < 3:
        raise NTooSmall(f"The pancyclic bound needs n >= 3, got n={n}")
    p = 0
    while 2 ** (p + 1) - 1 < n - 2:
        p += 1
    return p


def bound_report(n: int, k: int) -> BoundReport:
    _check_nk(n, k)
    notes: List[str] = []
    sound = sound_lower_bound(n, k)
    k1 = k1_floor = k2 = k2_cap = root = None
    if k == 1:
        k1 = c_value_k1(n)
        k1_floor = printed_k1_floor(n)
        threshold = k1
        if k1 != k1_floor:
            notes.append(
                f"printed floor((n-3)/2) = {k1_floor} disagrees with the pairing bound ceil((n-3)/2) = {k1}"
            )
    elif k == 2:
        k2 = c_lower_bound_k2(n)
        k2_cap = two_chord_cap(k2)
        threshold = k2
        if sound < k2:
            notes.append(
                f"printed cap p^2-p-1 gives {k2}; the per-pair cap p(p-1) only certifies {sound}"
            )
        notes.append("the printed 2-chord cap undercounts: three crossing diameters of C_6 give 6 > 5")
    else:
        threshold = chord_lower_bound(n, k)
        root = chord_lower_bound_root(n, k)
    return BoundReport(
        n=n,
        k=k,
        p_threshold=max(threshold, 1),
        sound_threshold=sound,
        k1_closed_form=k1,
        k1_printed_floor=k1_floor,
        k2_threshold=k2,
        k2_printed_cap=k2_cap,
        largest_real_root=root,
        bondy_edge_bound=bondy_edge_bound(n),
        pancyclic_chord_bound=pancyclic_chord_bound(n),
        notes=notes,
    )


# --- Lambert W -----------------------------------------------------------

_BRANCH_POINT = -math.exp(-1.0)


def lambert_w(branch: int, x: float) -> float:
    """Real branches W_0 and W_{-1} of the inverse of w*e^w, by Halley steps."""
    if branch not in (0, -1):
        raise DomainError(f"Only the real branches 0 and -1 exist, got {branch}")
    if x < _BRANCH_POINT and not math.isclose(x, _BRANCH_POINT, rel_tol=1e-15):
        raise DomainError(f"W is real only for x >= -1/e, got x={x}")
    if branch == -1 and x >= 0:
        raise DomainError(f"W_-1 is real only for -1/e <= x < 0, got x={x}")
    if math.isclose(x, _BRANCH_POINT, rel_tol=1e-15):
        return -1.0
    if x == 0:
        return 0.0

    if x < -0.25:
        # series about the branch point
        q = math.sqrt(2.0 * (math.e * x + 1.0))
        q = q if branch == 0 else -q
        w = -1.0 + q - q * q / 3.0 + 11.0 / 72.0 * q ** 3
    elif branch == -1:
        l1 = math.log(-x)
        l2 = math.log(-l1)
        w = l1 - l2 + l2 / l1
    elif x < math.e:
        w = math.log1p(x)
    else:
        l1 = math.log(x)
        l2 = math.log(l1)
        w = l1 - l2 + l2 / l1

    for _ in range(100):
        if w == -1.0:
            break
        ew = math.exp(w)
        f = w * ew - x
        denominator = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0)
        if denominator == 0:
            break
        dw = f / denominator
        w -= dw
        if abs(dw) <= 1e-15 * (1.0 + abs(w)):
            break
    return w


def crossover(k: int) -> CrossoverResult:
    """Both positive solutions of ln s = s^(1/k).

    With s = exp(-k*w) the equation becomes w*e^w = -1/k; W_0 gives the
    lower solution and W_{-1} the upper one.
    """
    if k < 3:
        raise KBelow3(f"ln n = n^(1/k) has two positive solutions only for k >= 3, got k={k}")
    w0 = lambert_w(0, -1.0 / k)
    wm1 = lambert_w(-1, -1.0 / k)
    lower = math.exp(-k * w0)
    upper = math.exp(-k * wm1)

    def residual(s: float) -> float:
        root = s ** (1.0 / k)
        return abs(math.log(s) - root) / root

    return CrossoverResult(
        k=k,
        lower_solution=lower,
        upper_solution=upper,
        w0_value=w0,
        wm1_value=wm1,
        lower_residual=residual(lower),
        upper_residual=residual(upper),
    )


def crossover_ratios(k_from: int, k_to: int) -> List[Tuple[int, float]]:
    """upper(k+1) / upper(k) for k in k_from..k_to."""
    return [
        (k, crossover(k + 1).upper_solution / crossover(k).upper_solution)
        for k in range(k_from, k_to + 1)
    ]
