"""Invariants of center arrangements.

For centers c_1..c_n in P^N and a feature dimension k this module computes

* ell (ℓ): dimension of (c_1 ∨ P) ∧ ... ∧ (c_n ∨ P) for a generic k-plane P,
  by the partition formula, the two-view formula, the pseudo-disjoint
  formula, and by direct sampling;
* the dimension of the multiview variety, as (k+1)(N - ℓ) and as the largest
  h admitting an integer vector m with subset-sum bounds;
* pseudo-disjointness and properness;
* tau and upsilon (υ), the largest possible dim H_[n] over the variety.

Center index sets are 0-based tuples throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, NamedTuple, Sequence

from .linalg import (
    DEFAULT_ENTRY_BOUND,
    SamplingError,
    Subspace,
    join,
    join_many,
    meet,
    meet_many,
    sample_avoiding,
    sample_subspace,
)

PARTITION_CAP = 12
FEASIBILITY_CAP = 6

Partition = tuple[tuple[int, ...], ...]


class ArrangementError(ValueError):
    pass


class InvalidRequest(ArrangementError):
    """k is outside 0 <= k <= N - 1 - max dim c_i."""


class PartitionBudgetExceeded(ArrangementError):
    pass


class FeasibilityBudgetExceeded(ArrangementError):
    pass


class WrongArity(ArrangementError):
    pass


class NotPseudoDisjoint(ArrangementError):
    pass


class SamplingExhausted(SamplingError):
    pass


class Inconsistent(RuntimeError):
    """Two independent routes to the same invariant disagreed."""

    def __init__(self, message: str, report: "AnalysisReport | None" = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class CenterArrangement:
    N: int
    centers: tuple[Subspace, ...]
    # lattice[mask] = dim c_I for the index set I encoded by ``mask``; lattice[0] = N
    lattice: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        centers = tuple(self.centers)
        object.__setattr__(self, "centers", centers)
        if not centers:
            raise ArrangementError("an arrangement needs at least one center")
        for i, c in enumerate(centers):
            if c.N != self.N:
                raise ArrangementError(f"center {i} lives in P^{c.N}, arrangement in P^{self.N}")
        if len(centers) > PARTITION_CAP:
            raise PartitionBudgetExceeded(
                f"{len(centers)} centers exceeds the intersection-lattice cap {PARTITION_CAP}"
            )
        n = len(centers)
        spaces: list[Subspace] = [Subspace.full(self.N)] + [None] * ((1 << n) - 1)  # type: ignore[list-item]
        for mask in range(1, 1 << n):
            low = (mask & -mask).bit_length() - 1
            spaces[mask] = meet(spaces[mask & (mask - 1)], centers[low])
        object.__setattr__(self, "lattice", tuple(S.dim for S in spaces))

    @property
    def n(self) -> int:
        return len(self.centers)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(c.dim for c in self.centers)

    def h(self) -> tuple[int, ...]:
        """Image dimensions h_i = N - dim c_i - 1."""
        return tuple(self.N - d - 1 for d in self.dims)

    def dim_meet(self, indices: Sequence[int]) -> int:
        """dim c_I (-1 when the centers in I do not meet)."""
        return self.lattice[_mask(indices)]

    def center_meet(self, indices: Sequence[int]) -> Subspace:
        return meet_many([self.centers[i] for i in indices])

    def append(self, c: Subspace) -> "CenterArrangement":
        return CenterArrangement(self.N, self.centers + (c,))

    def max_k(self) -> int:
        return self.N - 1 - max(self.dims)


def _mask(indices: Sequence[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def _indices(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def _check_k(arr: CenterArrangement, k: int) -> None:
    if not 0 <= k <= arr.max_k():
        raise InvalidRequest(
            f"k={k} must satisfy 0 <= k <= N-1-max dim c_i = {arr.max_k()}"
        )


# --- set partitions ----------------------------------------------------------


def restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """All restricted growth strings of length n in lexicographic order.

    a_0 = 0 and a_i <= 1 + max(a_0..a_{i-1}); each string is one set partition.
    """
    if n == 0:
        yield ()
        return
    a = [0] * n
    b = [1] * n  # b[i] = 1 + max(a[:i])
    while True:
        yield tuple(a)
        j = n - 1
        while j > 0 and a[j] == b[j]:
            j -= 1
        if j == 0:
            return
        a[j] += 1
        for i in range(j + 1, n):
            a[i] = 0
            b[i] = max(b[j], a[j] + 1)


def rgs_to_partition(a: Sequence[int]) -> Partition:
    blocks: dict[int, list[int]] = {}
    for i, v in enumerate(a):
        blocks.setdefault(v, []).append(i)
    return tuple(tuple(blocks[v]) for v in sorted(blocks))


def _max_over_partitions(n: int, weight: Sequence[int]) -> tuple[int, Partition]:
    """max over set partitions of [n] of the sum of weight[block mask]."""
    best = None
    best_rgs: tuple[int, ...] = ()
    masks = [0] * n
    for a in restricted_growth_strings(n):
        nb = 0
        for i, v in enumerate(a):
            if v == nb:
                masks[v] = 0
                nb += 1
            masks[v] |= 1 << i
        total = sum(weight[masks[b]] for b in range(nb))
        if best is None or total > best:
            best, best_rgs = total, a
    assert best is not None
    return best, rgs_to_partition(best_rgs)


# --- ell ------------------------------------------------------------------------


def ell_closed_form(
    arr: CenterArrangement, k: int, cap: int = PARTITION_CAP
) -> tuple[int, Partition]:
    """ℓ = N + max over partitions λ of Σ_{I∈λ} (dim c_I - (N-k-1)), with a maximizing λ."""
    _check_k(arr, k)
    if arr.n > cap:
        raise PartitionBudgetExceeded(f"n={arr.n} exceeds the partition cap {cap}")
    shift = arr.N - k - 1
    weight = [d - shift for d in arr.lattice]
    best, lam = _max_over_partitions(arr.n, weight)
    return arr.N + best, lam


def ell_two_view(arr: CenterArrangement, k: int) -> int:
    if arr.n != 2:
        raise WrongArity(f"two-view formula needs n=2, got n={arr.n}")
    d1, d2 = arr.dims
    return max(arr.dim_meet((0, 1)) + k + 1, d1 + d2 + 2 * k + 2 - arr.N)


def ell_sampled(
    arr: CenterArrangement,
    k: int,
    trials: int = 10,
    seed=0,
    entry_bound: int = DEFAULT_ENTRY_BOUND,
) -> int:
    """min over sampled k-planes P of dim ∧_i (c_i ∨ P).

    Each P is drawn from (seed, trial) and redrawn until it meets no center.
    A non-generic draw can only raise the dimension, hence the minimum.
    """
    _check_k(arr, k)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    best = None
    for t in range(trials):
        try:
            P = sample_avoiding(arr.N, k, arr.centers, (seed, "ell", t), entry_bound)
        except SamplingError as exc:
            raise SamplingExhausted(str(exc)) from exc
        d = meet_many([join(c, P) for c in arr.centers]).dim
        best = d if best is None else min(best, d)
    return best


def is_pseudo_disjoint(arr: CenterArrangement, k: int) -> tuple[bool, tuple[int, ...] | None]:
    """Check Σ_{i∈I} dim c_i >= (|I|-1)(N-k-1) + dim c_I for all I with c_I ≠ ∅.

    Returns (True, None) or (False, first violating I), scanning index sets
    by size and then lexicographically.
    """
    if k < 0:
        raise InvalidRequest("k must be non-negative")
    dims = arr.dims
    for size in range(2, arr.n + 1):
        for I in combinations(range(arr.n), size):
            dI = arr.dim_meet(I)
            if dI < 0:
                continue
            if sum(dims[i] for i in I) < (size - 1) * (arr.N - k - 1) + dI:
                return False, I
    return True, None


def ell_pseudo_disjoint(arr: CenterArrangement, k: int) -> int:
    """max{k, N - Σ(h_i - k)}, valid for pseudo-disjoint arrangements only."""
    _check_k(arr, k)
    ok, I = is_pseudo_disjoint(arr, k)
    if not ok:
        raise NotPseudoDisjoint(f"index set {I} violates pseudo-disjointness")
    return max(k, arr.N - sum(h - k for h in arr.h()))


def is_triangulable(arr: CenterArrangement, k: int) -> bool:
    return ell_closed_form(arr, k)[0] == k


# --- dimension of the multiview variety ----------------------------------------


def dim_multiview(arr: CenterArrangement, k: int) -> int:
    return (k + 1) * (arr.N - ell_closed_form(arr, k)[0])


def dim_P(arr: CenterArrangement, k: int) -> int:
    """Dimension of the product of Grassmannians of planes through each center."""
    return sum((k + 1) * (h - k) for h in arr.h())


def dim_via_feasibility(
    arr: CenterArrangement, k: int, cap: int = FEASIBILITY_CAP
) -> tuple[int, tuple[int, ...]]:
    """Largest h = Σ m_i over m ∈ ℕ^n with Σ_{i∈I} m_i <= (k+1)(N - dim c_I - k - 1) for all I.

    Exhaustive branch and bound.  Coordinates are fixed in index order; once
    m_0..m_{i-1} are set, the constraints whose largest index is i only cap
    m_i from above, so every visited vector is feasible.
    """
    _check_k(arr, k)
    n = arr.n
    if n > cap:
        raise FeasibilityBudgetExceeded(f"n={n} exceeds the feasibility cap {cap}")
    bound = [(k + 1) * (arr.N - d - k - 1) for d in arr.lattice]
    by_top: list[list[int]] = [[] for _ in range(n)]
    for mask in range(1, 1 << n):
        by_top[mask.bit_length() - 1].append(mask)
    single = [bound[1 << i] for i in range(n)]
    tail = [sum(single[i:]) for i in range(n)] + [0]

    best_h = -1
    best_m: tuple[int, ...] = ()
    m = [0] * n

    def partial(mask: int) -> int:
        return sum(m[j] for j in _indices(mask))

    def search(i: int, total: int) -> None:
        nonlocal best_h, best_m
        if i == n:
            if total > best_h:
                best_h, best_m = total, tuple(m)
            return
        if total + tail[i] <= best_h:
            return
        top = min(bound[mask] - partial(mask & ~(1 << i)) for mask in by_top[i])
        for v in range(top, -1, -1):
            if total + v + tail[i + 1] <= best_h:
                break
            m[i] = v
            search(i + 1, total + v)
        m[i] = 0

    search(0, 0)
    return best_h, best_m


def feasible(arr: CenterArrangement, k: int, m: Sequence[int]) -> bool:
    """Whether m satisfies every subset constraint of the feasibility problem."""
    if len(m) != arr.n or any(x < 0 for x in m):
        return False
    for mask in range(1, 1 << arr.n):
        if sum(m[j] for j in _indices(mask)) > (k + 1) * (arr.N - arr.lattice[mask] - k - 1):
            return False
    return True


# --- properness ----------------------------------------------------------------


def is_proper(arr: CenterArrangement, k: int) -> bool:
    """True iff the multiview variety is strictly smaller than the product of planes through the centers."""
    _check_k(arr, k)
    pd, _ = is_pseudo_disjoint(arr, k)
    return not (pd and arr.N - sum(h - k for h in arr.h()) >= k)


# --- tau and upsilon --------------------------------------------------------------


def tau(N: int, h_list: Sequence[int], k: int) -> int:
    """Largest integer s >= 0 with s² - (N-1-S)s <= N + kS, S = Σ(h_i - k).

    This is the floor expression for τ evaluated with integers only; the
    admissible s form an interval containing 0 because the left side is
    convex in s and the right side is non-negative.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if any(h > N for h in h_list):
        raise ValueError("every h_i must be at most N")
    S = sum(h - k for h in h_list)
    a = N - 1 - S
    rhs = N + k * S
    if rhs < 0:
        raise ValueError("N + kΣ(h_i-k) is negative; need h_i >= k")
    s = 0
    while (s + 1) * (s + 1) - a * (s + 1) <= rhs:
        s += 1
    return s


def schubert_locus_dim(N: int, h_list: Sequence[int], k: int, s: int) -> int:
    """Expected dimension of the s-planes meeting each generic center in >= s-k-1 dimensions."""
    if s < k:
        raise ValueError("need s >= k")
    S = sum(h - k for h in h_list)
    return max(-1, (s + 1) * (N - s) - (s - k) * S)


class Upsilon(NamedTuple):
    value: int
    tag: str  # "exact-generic" or "lower-bound"
    witness: Subspace | None


def meets_centers_enough(arr: CenterArrangement, V: Subspace, k: int) -> bool:
    """dim(V ∧ c_i) >= dim V - k - 1 for every center."""
    return all(meet(V, c).dim >= V.dim - k - 1 for c in arr.centers)


def upsilon(
    arr: CenterArrangement,
    k: int,
    mode: str = "search",
    seed=0,
    trials: int = 3,
    entry_bound: int = DEFAULT_ENTRY_BOUND,
) -> Upsilon:
    """υ, the largest dim H_[n] over the multiview variety.

    ``mode="generic"`` returns min{τ, dim c_i + k + 1}, which is exact when
    the centers are generic (e.g. produced by the seeded sampler); the caller
    vouches for genericity.  ``mode="search"`` returns a certified lower
    bound: the largest candidate V = (join of a subset of centers) ∨ P, P a
    sampled plane of dimension -1..k, or V = ∧(c_i ∨ P), that meets every
    center in at least dim V - k - 1 dimensions.
    """
    _check_k(arr, k)
    upper = min(d + k + 1 for d in arr.dims)
    if mode == "generic":
        return Upsilon(min(tau(arr.N, arr.h(), k), upper), "exact-generic", None)
    if mode != "search":
        raise ValueError(f"unknown upsilon mode {mode!r}")

    best: Subspace | None = None

    def consider(V: Subspace) -> None:
        nonlocal best
        if V.dim <= upper and (best is None or V.dim > best.dim) and meets_centers_enough(arr, V, k):
            best = V

    for t in range(trials):
        try:
            P = sample_avoiding(arr.N, k, arr.centers, (seed, "ups", t), entry_bound)
        except SamplingError as exc:
            raise SamplingExhausted(str(exc)) from exc
        consider(meet_many([join(c, P) for c in arr.centers]))
    for mask in range(1 << arr.n):
        base = (
            join_many([arr.centers[i] for i in _indices(mask)])
            if mask
            else Subspace.empty(arr.N)
        )
        for e in range(-1, k + 1):
            if base.dim + e + 1 <= (best.dim if best is not None else -2):
                continue
            V = join(base, sample_subspace(arr.N, e, (seed, "ups-cand", mask, e), entry_bound))
            consider(V)
    assert best is not None
    return Upsilon(best.dim, "lower-bound", best)


# --- aggregate report ---------------------------------------------------------------


@dataclass
class AnalysisReport:
    N: int
    n: int
    k: int
    center_dims: tuple[int, ...]
    ell: int
    ell_witness: Partition
    ell_sampled: int
    dim_M: int
    dim_M_feasibility: int | None
    feasibility_witness: tuple[int, ...] | None
    dim_P: int
    pseudo_disjoint: bool
    pseudo_disjoint_violation: tuple[int, ...] | None
    triangulable: bool
    proper: bool
    tau: int
    upsilon: int
    upsilon_tag: str
    upsilon_upper: int
    super_triangulable: bool | None
    consistent: bool = True
    inconsistencies: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "n": self.n,
            "k": self.k,
            "center_dims": list(self.center_dims),
            "ell": self.ell,
            "ell_witness": [list(b) for b in self.ell_witness],
            "ell_sampled": self.ell_sampled,
            "dim_M": self.dim_M,
            "dim_M_feasibility": self.dim_M_feasibility,
            "feasibility_witness": None
            if self.feasibility_witness is None
            else list(self.feasibility_witness),
            "dim_P": self.dim_P,
            "pseudo_disjoint": self.pseudo_disjoint,
            "pseudo_disjoint_violation": None
            if self.pseudo_disjoint_violation is None
            else list(self.pseudo_disjoint_violation),
            "triangulable": self.triangulable,
            "proper": self.proper,
            "tau": self.tau,
            "upsilon": self.upsilon,
            "upsilon_tag": self.upsilon_tag,
            "upsilon_upper": self.upsilon_upper,
            "super_triangulable": self.super_triangulable,
            "consistent": self.consistent,
            "inconsistencies": list(self.inconsistencies),
        }


def analyze(
    arr: CenterArrangement,
    k: int,
    seed=0,
    trials: int = 10,
    generic: bool = False,
    partition_cap: int = PARTITION_CAP,
    feasibility_cap: int = FEASIBILITY_CAP,
    entry_bound: int = DEFAULT_ENTRY_BOUND,
) -> AnalysisReport:
    """Compute every invariant and cross-check the independent routes.

    Raises :class:`Inconsistent` (carrying the full report) when the
    closed-form and sampled ℓ, or the two dimension formulas, disagree.
    """
    ell, lam = ell_closed_form(arr, k, partition_cap)
    sampled = ell_sampled(arr, k, max(trials, 10), seed, entry_bound)
    dim_M = (k + 1) * (arr.N - ell)
    if arr.n <= feasibility_cap:
        h_max, m = dim_via_feasibility(arr, k, feasibility_cap)
    else:
        h_max, m = None, None
    pd, violation = is_pseudo_disjoint(arr, k)
    ups = upsilon(arr, k, "generic" if generic else "search", seed, entry_bound=entry_bound)
    upper = min(d + k + 1 for d in arr.dims)
    if generic:
        super_tri: bool | None = ups.value == k
    elif upper == k or ups.value > k:
        super_tri = upper == k
    else:
        super_tri = None

    problems = []
    if sampled != ell:
        problems.append(f"closed-form ell={ell} but sampled ell={sampled}")
    if h_max is not None and h_max != dim_M:
        problems.append(f"(k+1)(N-ell)={dim_M} but feasibility gives h={h_max}")
    if pd and max(k, arr.N - sum(h - k for h in arr.h())) != ell:
        problems.append("pseudo-disjoint formula disagrees with closed-form ell")
    if generic and ups.value < ell:
        problems.append(f"generic upsilon={ups.value} is below ell={ell}")

    report = AnalysisReport(
        N=arr.N,
        n=arr.n,
        k=k,
        center_dims=arr.dims,
        ell=ell,
        ell_witness=lam,
        ell_sampled=sampled,
        dim_M=dim_M,
        dim_M_feasibility=h_max,
        feasibility_witness=m,
        dim_P=dim_P(arr, k),
        pseudo_disjoint=pd,
        pseudo_disjoint_violation=violation,
        triangulable=ell == k,
        proper=is_proper(arr, k),
        tau=tau(arr.N, arr.h(), k),
        upsilon=ups.value,
        upsilon_tag=ups.tag,
        upsilon_upper=upper,
        super_triangulable=super_tri,
        consistent=not problems,
        inconsistencies=problems,
    )
    if problems:
        raise Inconsistent("; ".join(problems), report)
    return report
