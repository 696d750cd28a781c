import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mvv.io import subspace_from_json, subspace_to_json
from mvv.linalg import (
    Subspace,
    contains,
    dual_complement,
    join,
    kernel,
    make_rng,
    matmul,
    meet,
    meet_many,
    rank,
    rank_by_elimination,
    rref,
    sample_inside,
    sample_subspace,
    sample_through,
)

from helpers import random_nested, random_pair


def pt(*coords):
    return Subspace.span(len(coords) - 1, [coords])


# --- rank ---------------------------------------------------------------------


def test_rank_zero_and_identity():
    assert rank([[0] * 3] * 3) == 0
    assert rank([[int(i == j) for j in range(4)] for i in range(4)]) == 4


def test_rank_of_empty_matrix():
    assert rank([]) == 0


@pytest.mark.parametrize("seed", range(40))
def test_rank_matches_randomized_elimination(seed):
    rng = make_rng(seed)
    # low-rank products make the cross-check nontrivial
    r = rng.randint(0, 5)
    A = [[rng.randint(-9, 9) for _ in range(r)] for _ in range(5)]
    B = [[rng.randint(-9, 9) for _ in range(7)] for _ in range(r)]
    M = matmul(A, B) if r else [[0] * 7 for _ in range(5)]
    assert rank(M) == rank_by_elimination(M, seed)
    raw = [[rng.randint(-9, 9) for _ in range(7)] for _ in range(5)]
    assert rank(raw) == rank_by_elimination(raw, (seed, 1))


def test_rank_with_fractions():
    M = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]]
    assert rank(M) == 1


@given(st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=1, max_size=6),
       st.permutations(range(6)))
@settings(max_examples=150, deadline=None)
def test_rank_pivot_order_independent(rows, perm):
    permuted = [rows[i] for i in perm if i < len(rows)]
    assert rank(rows) == rank(permuted) == rank_by_elimination(rows)


def test_kernel_is_annihilated():
    M = [[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 1, 0]]
    K = kernel(M, 4)
    assert len(K) == 4 - rank(M)
    for v in K:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in M)


def test_rref_pivots_are_one():
    R, piv = rref([[2, 4, 6], [1, 1, 1]])
    assert all(R[i][p] == 1 for i, p in enumerate(piv))


# --- subspaces --------------------------------------------------------------------


def test_subspace_equality_is_row_space_equality():
    a = Subspace.span(2, [[1, 0, 0], [0, 1, 0]])
    b = Subspace.span(2, [[1, 1, 0], [3, -2, 0]])
    assert a == b and hash(a) == hash(b)
    assert a != Subspace.span(2, [[1, 0, 0], [0, 0, 1]])


def test_empty_subspace_has_dim_minus_one():
    assert Subspace.empty(4).dim == -1
    assert Subspace.span(4, []).is_empty


def test_join_two_points_is_line():
    assert join(pt(1, 0, 0), pt(0, 1, 0)).dim == 1


def test_join_with_empty():
    V = sample_subspace(3, 1, 1)
    assert join(V, Subspace.empty(3)) == V
    assert join(Subspace.empty(3), V) == V


@pytest.mark.parametrize("seed", range(10))
def test_random_disjoint_lines_join_to_p3(seed):
    L1, L2 = sample_subspace(3, 1, (seed, 1)), sample_subspace(3, 1, (seed, 2))
    assert rank(L1.basis + L2.basis) == 4
    assert join(L1, L2).dim == 3
    assert meet(L1, L2).is_empty


def test_two_lines_in_plane_meet_in_point():
    L1 = Subspace.span(2, [[1, 2, 3], [0, 1, 5]])
    L2 = Subspace.span(2, [[7, 0, 1], [1, 1, 1]])
    assert meet(L1, L2).dim == 0


def test_meet_idempotent():
    V = sample_subspace(4, 2, 3)
    assert meet(V, V) == V


def test_meet_many_through_common_point():
    X = pt(1, 2, 3, 4)
    planes = [sample_through(X, 2, s) for s in range(3)]
    M = meet_many(planes)
    assert contains(M, X)
    assert meet_many([planes[0]]) == planes[0]


@pytest.mark.parametrize("seed", range(20))
def test_meet_many_permutation_invariant(seed):
    rng = make_rng(seed)
    N = 4
    X = sample_subspace(N, 0, rng)
    spaces = [sample_through(X, rng.randint(0, N), rng) for _ in range(4)]
    ref = meet_many(spaces)
    shuffled = spaces[:]
    rng.shuffle(shuffled)
    assert meet_many(shuffled) == ref


def test_meet_rejects_mismatched_ambient():
    with pytest.raises(ValueError):
        meet(Subspace.full(2), Subspace.full(3))


def test_dual_complement_examples():
    X = pt(0, 1, 0)
    Xs = dual_complement(X, seed=5)
    assert Xs.dim == 1 and meet(X, Xs).is_empty
    assert dual_complement(Subspace.empty(3)) == Subspace.full(3)
    assert dual_complement(Subspace.full(3)).is_empty
    L = sample_subspace(4, 1, 9)
    for seed in (None, 1, 2):
        Ls = dual_complement(L, seed)
        assert Ls.dim == 2 and meet(L, Ls).is_empty
    assert dual_complement(L, 7) == dual_complement(L, 7)


def test_contains_examples():
    a, b = pt(1, 0, 0, 0), pt(0, 1, 1, 0)
    L = join(a, b)
    assert contains(L, a) and contains(L, b)
    assert contains(L, Subspace.empty(3))
    assert not contains(a, L)
    c = sample_subspace(3, 0, 1)
    P = sample_subspace(3, 1, 2)
    assert contains(join(c, P), c)


def test_sample_subspace_determinism_and_shape():
    assert sample_subspace(3, -1, 0).is_empty
    assert sample_subspace(3, 1, 11) == sample_subspace(3, 1, 11)
    assert sample_subspace(3, 1, 11) != sample_subspace(3, 1, 12)
    S = sample_subspace(5, 2, 4, entry_bound=3)
    assert S.dim == 2 and S.N == 5


def test_sample_subspace_rejects_bad_requests():
    with pytest.raises(ValueError):
        sample_subspace(3, 4, 0)
    with pytest.raises(ValueError):
        sample_subspace(3, 1, 0, entry_bound=1)


def test_random_lines_in_p3_are_generically_skew():
    hits = sum(
        meet(sample_subspace(3, 1, (t, "a")), sample_subspace(3, 1, (t, "b"))).is_empty
        for t in range(100)
    )
    assert hits >= 99


def test_sample_inside_and_through():
    V = sample_subspace(5, 3, 1)
    W = sample_inside(V, 1, 2)
    assert W.dim == 1 and contains(V, W)
    U = sample_through(W, 4, 3)
    assert U.dim == 4 and contains(U, W)


# --- subspace lattice laws on randomized inputs --------------------------------------


@pytest.mark.parametrize("seed", range(200))
def test_meet_join_dimension_formula(seed):
    V, W = random_pair(seed)
    assert meet(V, W).dim + join(V, W).dim == V.dim + W.dim


@pytest.mark.parametrize("seed", range(200))
def test_modular_law(seed):
    V, W, rng = random_nested(seed)
    U = sample_subspace(W.N, rng.randint(-1, W.N), rng, 50)
    if rng.random() < 0.5 and not W.is_empty:
        # force U to share something with W
        U = join(U, sample_inside(W, rng.randint(-1, W.dim), rng, 50))
    assert meet(W, join(V, U)) == join(V, meet(W, U))


@pytest.mark.parametrize("seed", range(200))
def test_complement_cuts_nested_space(seed):
    V, W, rng = random_nested(seed)
    if V.is_full:
        return
    Vs = dual_complement(V, rng)
    assert meet(W, Vs).dim == W.dim - V.dim - 1


def test_subspace_json_round_trip():
    S = Subspace.span(3, [[Fraction(1, 3), 2, 0, -1], [0, 0, 1, Fraction(5, 7)]])
    blob = json.dumps(subspace_to_json(S))
    assert subspace_from_json(json.loads(blob)) == S
    assert subspace_to_json(Subspace.empty(2)) == {"N": 2, "basis": []}
    assert all("/" in x for row in subspace_to_json(S)["basis"] for x in row)
