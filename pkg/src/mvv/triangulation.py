"""Synthesizing image tuples of world k-planes and recovering the k-plane."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Sequence

from .arrangement import CenterArrangement
from .camera import CameraMatrix, CenterCollision, back_project, center, project
from .linalg import Subspace, contains, meet, meet_many


class TriangulationError(ValueError):
    pass


class UnderDetermined(TriangulationError):
    """The back-projected planes meet in more than k dimensions."""

    def __init__(self, message: str, intersection: Subspace):
        super().__init__(message)
        self.intersection = intersection


class InconsistentTuple(TriangulationError):
    """The back-projected planes meet in fewer than k dimensions (tuple is off the variety)."""

    def __init__(self, message: str, intersection: Subspace):
        super().__init__(message)
        self.intersection = intersection


class ArityMismatch(TriangulationError):
    pass


@dataclass(frozen=True)
class Scene:
    N: int
    k: int
    cameras: tuple[CameraMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "cameras", tuple(self.cameras))
        if not self.cameras:
            raise TriangulationError("a scene needs at least one camera")
        if self.k < 0:
            raise TriangulationError("k must be non-negative")
        for i, C in enumerate(self.cameras):
            if C.N != self.N:
                raise TriangulationError(f"camera {i} maps from P^{C.N}, scene is P^{self.N}")
            if C.N - C.h - 1 > self.N - self.k - 1:
                raise TriangulationError(
                    f"camera {i} has a center of dim {C.N - C.h - 1} > N-k-1 = {self.N - self.k - 1}"
                )

    @property
    def centers(self) -> tuple[Subspace, ...]:
        return tuple(center(C) for C in self.cameras)

    def arrangement(self) -> CenterArrangement:
        return CenterArrangement(self.N, self.centers)


def synthesize(scene: Scene, P: Subspace) -> list[Subspace]:
    """(C_1·P, ..., C_n·P)."""
    if P.dim != scene.k:
        raise TriangulationError(f"world plane has dim {P.dim}, scene expects k={scene.k}")
    out = []
    for i, C in enumerate(scene.cameras):
        try:
            out.append(project(C, P))
        except CenterCollision as exc:
            raise CenterCollision(f"the plane meets the center of camera {i}", camera=i) from exc
    return out


def _validate(scene: Scene, planes: Sequence[Subspace]) -> None:
    if len(planes) != len(scene.cameras):
        raise ArityMismatch(f"{len(planes)} image planes for {len(scene.cameras)} cameras")
    for i, (C, p) in enumerate(zip(scene.cameras, planes)):
        if p.N != C.h:
            raise TriangulationError(f"image plane {i} lives in P^{p.N}, camera {i} images P^{C.h}")
        if p.dim != scene.k:
            raise TriangulationError(f"image plane {i} has dim {p.dim}, expected k={scene.k}")


def back_projections(scene: Scene, planes: Sequence[Subspace]) -> list[Subspace]:
    _validate(scene, planes)
    return [back_project(C, p) for C, p in zip(scene.cameras, planes)]


def triangulate(scene: Scene, planes: Sequence[Subspace]) -> Subspace:
    """Intersect the back-projected planes; succeed only when the result is a k-plane."""
    H = meet_many(back_projections(scene, planes))
    if H.dim > scene.k:
        raise UnderDetermined(
            f"back-projected planes meet in dimension {H.dim} > k={scene.k}", H
        )
    if H.dim < scene.k:
        raise InconsistentTuple(
            f"back-projected planes meet in dimension {H.dim} < k={scene.k}", H
        )
    return H


class ConstraintReport(NamedTuple):
    P_ok: bool
    V_ok: bool
    H_ok: bool


def constraint_membership(scene: Scene, planes: Sequence[Subspace]) -> ConstraintReport:
    """Evaluate the center-containment, center-intersection and common-k-plane conditions."""
    Hs = back_projections(scene, planes)
    cs = scene.centers
    k = scene.k
    P_ok = all(contains(H, c) for H, c in zip(Hs, cs))
    V_ok = True
    for size in range(2, len(cs) + 1):
        for I in combinations(range(len(cs)), size):
            cI = meet_many([cs[i] for i in I])
            if cI.is_empty:
                continue
            if meet_many([Hs[i] for i in I]).dim < cI.dim + k + 1:
                V_ok = False
                break
        if not V_ok:
            break
    H_ok = meet_many(Hs).dim >= k
    return ConstraintReport(P_ok, V_ok, H_ok)


def in_image(scene: Scene, planes: Sequence[Subspace]) -> bool:
    """Whether some k-plane meeting no center projects to the tuple.

    Assumes the back-projected planes share at least a k-plane.  The tuple is
    in the image iff dim(c_i ∧ H_[n]) + k + 1 <= dim H_[n] for every center.
    """
    H = meet_many(back_projections(scene, planes))
    return all(meet(c, H).dim + scene.k + 1 <= H.dim for c in scene.centers)
