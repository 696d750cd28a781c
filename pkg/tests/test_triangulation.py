import pytest

from mvv.arrangement import CenterArrangement, ell_closed_form, is_triangulable
from mvv.camera import CenterCollision, back_project, project, project_backplane
from mvv.linalg import (
    Subspace,
    join,
    make_rng,
    meet,
    sample_avoiding,
    sample_inside,
    sample_subspace,
    sample_through,
)
from mvv.triangulation import (
    ArityMismatch,
    InconsistentTuple,
    TriangulationError,
    UnderDetermined,
    constraint_membership,
    in_image,
    synthesize,
    triangulate,
)

from helpers import classical_scene, line_scene, random_triangulable_scene, scene_from_centers


def world_plane(scene, seed):
    return sample_avoiding(scene.N, scene.k, scene.centers, (seed, "P"))


def perturb(p, j):
    """Add 1 to coordinate j of the single basis vector of an image point."""
    v = list(p.basis[0])
    v[j] += 1
    return Subspace.span(p.N, [v])


def test_scene_rejects_oversized_center():
    with pytest.raises(TriangulationError):
        scene_from_centers(3, 2, [sample_subspace(3, 1, 0)], 0)


def test_synthesize_classical_pair_meets():
    scene = classical_scene(1)
    t = synthesize(scene, world_plane(scene, 1))
    H1, H2 = (back_project(C, p) for C, p in zip(scene.cameras, t))
    assert meet(H1, H2).dim == 0


def test_synthesize_names_colliding_camera():
    scene = scene_from_centers(3, 0, [sample_subspace(3, 0, s) for s in range(3)], 4)
    with pytest.raises(CenterCollision) as info:
        synthesize(scene, scene.centers[2])
    assert info.value.camera == 2


def test_synthesize_single_camera_equals_project():
    scene = scene_from_centers(4, 1, [sample_subspace(4, 1, 3)], 3)
    P = world_plane(scene, 0)
    assert synthesize(scene, P) == [project(scene.cameras[0], P)]


def test_synthesize_rejects_wrong_dimension():
    scene = classical_scene(0)
    with pytest.raises(TriangulationError):
        synthesize(scene, sample_subspace(3, 1, 0))


@pytest.mark.parametrize("seed", range(40))
def test_classical_round_trip(seed):
    scene = classical_scene(seed)
    P = world_plane(scene, seed)
    assert triangulate(scene, synthesize(scene, P)) == P


@pytest.mark.parametrize("seed", range(30))
def test_line_round_trip(seed):
    scene = line_scene(seed)
    P = world_plane(scene, seed)
    assert triangulate(scene, synthesize(scene, P)) == P


@pytest.mark.parametrize("seed", range(30))
def test_random_triangulable_round_trip(seed):
    scene = random_triangulable_scene(seed)
    P = world_plane(scene, seed)
    t = synthesize(scene, P)
    assert triangulate(scene, t) == P
    assert constraint_membership(scene, t) == (True, True, True)
    assert in_image(scene, t)


@pytest.mark.parametrize("seed", range(10))
def test_single_camera_is_underdetermined(seed):
    rng = make_rng(seed)
    N = rng.randint(1, 5)
    k = rng.randint(0, N - 1)
    scene = scene_from_centers(N, k, [sample_subspace(N, rng.randint(0, N - k - 1), rng)], seed)
    with pytest.raises(UnderDetermined) as info:
        triangulate(scene, synthesize(scene, world_plane(scene, seed)))
    assert info.value.intersection.dim == scene.centers[0].dim + k + 1


def test_single_camera_with_empty_center_is_an_isomorphism():
    scene = scene_from_centers(3, 1, [Subspace.empty(3)], 2)
    P = world_plane(scene, 2)
    assert triangulate(scene, synthesize(scene, P)) == P


@pytest.mark.parametrize("seed", range(10))
def test_perturbed_point_pair_is_inconsistent(seed):
    scene = classical_scene(seed)
    t = synthesize(scene, world_plane(scene, seed))
    for view in range(2):
        for j in range(3):
            bad = list(t)
            bad[view] = perturb(t[view], j)
            with pytest.raises(InconsistentTuple):
                triangulate(scene, bad)
            assert not constraint_membership(scene, bad).H_ok


def test_arity_mismatch():
    scene = classical_scene(0)
    t = synthesize(scene, world_plane(scene, 0))
    with pytest.raises(ArityMismatch):
        triangulate(scene, t[:1])


def test_wrong_image_dimension():
    scene = classical_scene(0)
    with pytest.raises(TriangulationError):
        triangulate(scene, [Subspace.full(2), Subspace.full(2)])


@pytest.mark.parametrize("seed", range(10))
def test_meeting_lines_v_constraint_always_holds(seed):
    rng = make_rng(seed)
    X = sample_subspace(3, 0, rng)
    centers = [sample_through(X, 1, rng) for _ in range(2)]
    scene = scene_from_centers(3, 0, centers, seed)
    t = [sample_subspace(1, 0, rng) for _ in range(2)]
    assert constraint_membership(scene, t).V_ok


def test_in_image_center_only_fiber():
    c1, c2 = sample_subspace(3, 0, 1), sample_subspace(3, 0, 2)
    scene = scene_from_centers(3, 0, [c1, c2], 5)
    H1 = sample_through(c1, 1, 7)
    H2 = join(c2, c1)
    t = [project_backplane(C, H) for C, H in zip(scene.cameras, (H1, H2))]
    assert triangulate(scene, t) == c1
    assert not in_image(scene, t)


def test_in_image_collinear_centers_on_common_line():
    E = sample_subspace(3, 1, 3)
    centers = [sample_inside(E, 0, s) for s in range(3)]
    scene = scene_from_centers(3, 0, centers, 6)
    t = [project_backplane(C, E) for C in scene.cameras]
    with pytest.raises(UnderDetermined):
        triangulate(scene, t)
    # a point of E away from the centers maps to this tuple, so it is in the image
    X = sample_inside(E, 0, 99)
    assert synthesize(scene, X) == t
    assert in_image(scene, t)


@pytest.mark.parametrize("seed", range(15))
def test_non_triangulable_scenes_are_always_underdetermined(seed):
    rng = make_rng(seed, "nontri")
    while True:
        N = rng.randint(2, 5)
        k = rng.randint(0, N - 1)
        centers = [sample_subspace(N, rng.randint(0, N - k - 1), rng, 50) for _ in range(rng.randint(1, 3))]
        arr = CenterArrangement(N, centers)
        if not is_triangulable(arr, k):
            break
    scene = scene_from_centers(N, k, centers, seed)
    ell = ell_closed_form(arr, k)[0]
    for trial in range(5):
        with pytest.raises(UnderDetermined) as info:
            triangulate(scene, synthesize(scene, world_plane(scene, (seed, trial))))
        assert info.value.intersection.dim >= ell
