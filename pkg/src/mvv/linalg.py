"""Exact projective linear algebra over the rationals.

A projective subspace of P^N is stored as the reduced row-echelon basis of
its affine cone in Q^(N+1).  Because the echelon form is canonical, two
:class:`Subspace` values compare (and hash) equal exactly when they are the
same subspace.  The empty subspace has no basis rows and dimension -1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Iterable, Sequence

Row = tuple[Fraction, ...]

DEFAULT_ENTRY_BOUND = 1000
MAX_REDRAWS = 1000


class SamplingError(RuntimeError):
    """A seeded sampler failed to produce a generic object within its redraw budget."""


def make_rng(seed, *path) -> random.Random:
    """Deterministic generator for ``seed`` refined by an index path.

    ``make_rng(s, i)`` is independent of how many other indices were used,
    so trial loops give the same draws serially or in parallel.
    """
    if isinstance(seed, random.Random):
        if not path:
            return seed
        seed = seed.getrandbits(64)
    return random.Random(repr((seed,) + tuple(path)))


def _frac_rows(M: Iterable[Iterable]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in M]


def _integer_rows(M: Iterable[Iterable]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators; row scaling keeps the rank."""
    out = []
    for row in _frac_rows(M):
        m = reduce(lcm, (x.denominator for x in row), 1)
        out.append([int(x * m) for x in row])
    return out


def rank(M: Sequence[Sequence]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination on integer rows."""
    A = _integer_rows(M)
    if not A:
        return 0
    m, ncols = len(A), len(A[0])
    r, prev = 0, 1
    for c in range(ncols):
        if r == m:
            break
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        for i in range(r + 1, m):
            a_ic = A[i][c]
            row_i, row_r = A[i], A[r]
            for j in range(c + 1, ncols):
                row_i[j] = (piv * row_i[j] - a_ic * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        r += 1
    return r


def rank_by_elimination(M: Sequence[Sequence], seed=None) -> int:
    """Rank by plain Gaussian elimination over Fractions.

    Rows and columns are visited in a seeded random order, so this is an
    independent check on :func:`rank` rather than the same computation.
    """
    A = _frac_rows(M)
    if not A:
        return 0
    rng = make_rng(seed)
    rng.shuffle(A)
    cols = list(range(len(A[0])))
    rng.shuffle(cols)
    r = 0
    for c in cols:
        candidates = [i for i in range(r, len(A)) if A[i][c] != 0]
        if not candidates:
            continue
        p = rng.choice(candidates)
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        for i in range(r + 1, len(A)):
            if A[i][c] != 0:
                f = A[i][c] / piv
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
    return r


def rref(M: Sequence[Sequence], ncols: int | None = None) -> tuple[list[Row], list[int]]:
    """Reduced row-echelon form (pivots equal to 1) and its pivot columns.

    Zero rows are dropped, so the result is a basis of the row space.
    """
    A = _frac_rows(M)
    if ncols is None:
        ncols = len(A[0]) if A else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return [tuple(row) for row in A[:r]], pivots


def kernel(M: Sequence[Sequence], ncols: int) -> list[Row]:
    """Basis of {x : M x = 0} as row vectors."""
    R, pivots = rref(M, ncols)
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[Row]:
    Bt = list(zip(*B))
    return [tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in Bt) for row in A]


def apply(A: Sequence[Sequence], v: Sequence) -> Row:
    """Matrix-vector product A v."""
    return tuple(sum((Fraction(a) * b for a, b in zip(row, v)), Fraction(0)) for row in A)


@dataclass(frozen=True)
class Subspace:
    """Projective subspace of P^N with canonical (RREF) basis."""

    N: int
    basis: tuple[Row, ...]

    @classmethod
    def span(cls, N: int, rows: Iterable[Iterable]) -> "Subspace":
        rows = [tuple(r) for r in rows]
        for r in rows:
            if len(r) != N + 1:
                raise ValueError(f"vector of length {len(r)} does not live in P^{N}")
        R, _ = rref(rows, N + 1)
        return cls(N, tuple(R))

    @classmethod
    def empty(cls, N: int) -> "Subspace":
        return cls(N, ())

    @classmethod
    def full(cls, N: int) -> "Subspace":
        return cls.coordinate(N, range(N + 1))

    @classmethod
    def coordinate(cls, N: int, indices: Iterable[int]) -> "Subspace":
        """Span of the standard basis points e_i, i in ``indices``."""
        rows = []
        for i in sorted(set(indices)):
            v = [0] * (N + 1)
            v[i] = 1
            rows.append(v)
        return cls.span(N, rows)

    @property
    def dim(self) -> int:
        return len(self.basis) - 1

    @property
    def is_empty(self) -> bool:
        return not self.basis

    @property
    def is_full(self) -> bool:
        return len(self.basis) == self.N + 1

    def annihilator(self) -> "Subspace":
        """Subspace of the dual P^N cut out by the linear forms vanishing on self."""
        return Subspace(self.N, tuple(rref(kernel(self.basis, self.N + 1), self.N + 1)[0]))

    def __repr__(self) -> str:
        rows = ", ".join("[" + " ".join(str(x) for x in r) + "]" for r in self.basis)
        return f"Subspace(N={self.N}, dim={self.dim}, basis=[{rows}])"


def _check_same_ambient(*spaces: Subspace) -> int:
    Ns = {S.N for S in spaces}
    if len(Ns) != 1:
        raise ValueError(f"subspaces live in different ambient spaces: {sorted(Ns)}")
    return Ns.pop()


def join(V: Subspace, W: Subspace) -> Subspace:
    """V ∨ W, the span of both subspaces."""
    N = _check_same_ambient(V, W)
    if W.is_empty:
        return V
    if V.is_empty:
        return W
    return Subspace.span(N, V.basis + W.basis)


def join_many(spaces: Sequence[Subspace]) -> Subspace:
    if not spaces:
        raise ValueError("join_many needs at least one subspace")
    N = _check_same_ambient(*spaces)
    return Subspace.span(N, [r for S in spaces for r in S.basis])


def meet(V: Subspace, W: Subspace) -> Subspace:
    """V ∧ W, computed as the common kernel of both annihilators."""
    N = _check_same_ambient(V, W)
    if V.is_empty or W.is_empty:
        return Subspace.empty(N)
    forms = kernel(V.basis, N + 1) + kernel(W.basis, N + 1)
    if not forms:
        return V
    return Subspace.span(N, kernel(forms, N + 1))


def meet_many(spaces: Sequence[Subspace]) -> Subspace:
    """Intersection of a nonempty list of subspaces."""
    if not spaces:
        raise ValueError("meet_many needs at least one subspace")
    N = _check_same_ambient(*spaces)
    if any(S.is_empty for S in spaces):
        return Subspace.empty(N)
    forms = [f for S in spaces for f in kernel(S.basis, N + 1)]
    if not forms:
        return Subspace.full(N)
    return Subspace.span(N, kernel(forms, N + 1))


def contains(V: Subspace, W: Subspace) -> bool:
    """True iff W ⊆ V."""
    _check_same_ambient(V, W)
    if W.is_empty:
        return True
    return rank(V.basis + W.basis) == len(V.basis)


def _random_rows(rng: random.Random, nrows: int, ncols: int, bound: int) -> list[list[int]]:
    return [[rng.randint(-bound, bound) for _ in range(ncols)] for _ in range(nrows)]


def sample_subspace(N: int, d: int, seed=None, entry_bound: int = DEFAULT_ENTRY_BOUND) -> Subspace:
    """Random d-plane in P^N from a uniform integer matrix, redrawn until full rank."""
    if not -1 <= d <= N:
        raise ValueError(f"cannot sample a {d}-plane in P^{N}")
    if entry_bound < 2:
        raise ValueError("entry_bound must be at least 2")
    if d == -1:
        return Subspace.empty(N)
    rng = make_rng(seed)
    for _ in range(MAX_REDRAWS):
        rows = _random_rows(rng, d + 1, N + 1, entry_bound)
        if rank(rows) == d + 1:
            return Subspace.span(N, rows)
    raise SamplingError(f"no full-rank {d + 1}x{N + 1} draw")


def sample_inside(V: Subspace, d: int, seed=None, entry_bound: int = DEFAULT_ENTRY_BOUND) -> Subspace:
    """Random d-plane contained in V (random integer combinations of V's basis)."""
    if not -1 <= d <= V.dim:
        raise ValueError(f"cannot sample a {d}-plane inside a {V.dim}-plane")
    if d == -1:
        return Subspace.empty(V.N)
    rng = make_rng(seed)
    for _ in range(MAX_REDRAWS):
        coeffs = _random_rows(rng, d + 1, V.dim + 1, entry_bound)
        rows = matmul(coeffs, V.basis)
        if rank(rows) == d + 1:
            return Subspace.span(V.N, rows)
    raise SamplingError(f"no {d}-plane found inside the given {V.dim}-plane")


def sample_through(c: Subspace, d: int, seed=None, entry_bound: int = DEFAULT_ENTRY_BOUND) -> Subspace:
    """Random d-plane containing c: c's basis extended by sampled rows."""
    if not c.dim <= d <= c.N:
        raise ValueError(f"cannot sample a {d}-plane through a {c.dim}-plane in P^{c.N}")
    rng = make_rng(seed)
    extra = d - c.dim
    for _ in range(MAX_REDRAWS):
        rows = list(c.basis) + _random_rows(rng, extra, c.N + 1, entry_bound)
        if rank(rows) == d + 1:
            return Subspace.span(c.N, rows)
    raise SamplingError(f"no {d}-plane found through the given {c.dim}-plane")


def dual_complement(V: Subspace, seed=None, entry_bound: int = DEFAULT_ENTRY_BOUND) -> Subspace:
    """A subspace V* of dimension N - dim V - 1 with V ∧ V* = ∅.

    With ``seed=None`` the coordinate subspace on the non-pivot columns of
    V's echelon basis is returned; otherwise a seeded random complement.
    The full space has the empty complement.
    """
    N = V.N
    if V.is_full:
        return Subspace.empty(N)
    if seed is None:
        _, pivots = rref(V.basis, N + 1)
        return Subspace.coordinate(N, set(range(N + 1)) - set(pivots))
    d = N - V.dim - 1
    rng = make_rng(seed)
    for _ in range(MAX_REDRAWS):
        rows = _random_rows(rng, d + 1, N + 1, entry_bound)
        if rank(list(V.basis) + rows) == N + 1:
            return Subspace.span(N, rows)
    raise SamplingError("no complement drawn")


def sample_avoiding(
    N: int,
    d: int,
    avoid: Sequence[Subspace],
    seed=None,
    entry_bound: int = DEFAULT_ENTRY_BOUND,
    max_redraws: int = 100,
) -> Subspace:
    """Random d-plane in P^N disjoint from every subspace in ``avoid``."""
    rng = make_rng(seed)
    for _ in range(max_redraws):
        P = sample_subspace(N, d, rng, entry_bound)
        if all(meet(P, c).is_empty for c in avoid):
            return P
    raise SamplingError(f"no {d}-plane avoiding all {len(avoid)} subspaces in {max_redraws} draws")
