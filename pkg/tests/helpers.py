"""Random structured inputs shared by the test modules."""

from mvv.linalg import Subspace, make_rng, sample_inside, sample_subspace


def pool_subspace(rng, N, pool, max_size=None):
    """Span of a random subset of a point pool; shared pools force coincidences."""
    size = rng.randint(0, min(len(pool), max_size if max_size is not None else N + 1))
    pts = rng.sample(pool, size)
    return Subspace.span(N, [p.basis[0] for p in pts])


def random_pair(seed, max_N=5):
    """Two subspaces of a common P^N that often share a nontrivial intersection."""
    rng = make_rng(seed, "pair")
    N = rng.randint(1, max_N)
    if rng.random() < 0.5:
        pool = [sample_subspace(N, 0, rng, 50) for _ in range(rng.randint(1, N + 2))]
        return pool_subspace(rng, N, pool), pool_subspace(rng, N, pool)
    return (
        sample_subspace(N, rng.randint(-1, N), rng, 50),
        sample_subspace(N, rng.randint(-1, N), rng, 50),
    )


def random_nested(seed, max_N=5):
    """(V, W) with V ⊆ W, plus the rng for further draws."""
    rng = make_rng(seed, "nested")
    N = rng.randint(1, max_N)
    W = sample_subspace(N, rng.randint(-1, N), rng, 50)
    V = sample_inside(W, rng.randint(-1, W.dim), rng, 50)
    return V, W, rng


def scene_from_centers(N, k, centers, seed):
    from mvv.camera import camera_with_center
    from mvv.triangulation import Scene

    return Scene(N, k, tuple(camera_with_center(c, make_rng(seed, "cam", i)) for i, c in enumerate(centers)))


def classical_scene(seed):
    """Two random 3x4 cameras with distinct point centers, k=0."""
    rng = make_rng(seed, "classical")
    return scene_from_centers(3, 0, [sample_subspace(3, 0, rng) for _ in range(2)], seed)


def line_scene(seed):
    """Two random 3x4 cameras imaging lines of P^3, k=1."""
    rng = make_rng(seed, "line")
    return scene_from_centers(3, 1, [sample_subspace(3, 0, rng) for _ in range(2)], seed)


def random_triangulable_scene(seed, max_N=5):
    """Redraw generic scenes until the center arrangement is triangulable."""
    from mvv.arrangement import CenterArrangement, is_triangulable

    rng = make_rng(seed, "triangulable")
    while True:
        N = rng.randint(2, max_N)
        k = rng.randint(0, N - 1)
        n = rng.randint(2, 4)
        centers = [sample_subspace(N, rng.randint(-1, N - k - 1), rng, 50) for _ in range(n)]
        if is_triangulable(CenterArrangement(N, centers), k):
            return scene_from_centers(N, k, centers, (seed, N, k))
