"""Camera matrices, centers, projection and back-projection of k-planes.

A camera is any full-rank (h+1) x (N+1) rational matrix C.  Its center is
ker C, the k-plane P projects to the k-plane spanned by C X_0, ..., C X_k,
and the back-projected plane of an image k-plane p is
{X : C X lies in p} = ker(Q C) where the rows of Q cut out p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import (
    DEFAULT_ENTRY_BOUND,
    MAX_REDRAWS,
    Row,
    SamplingError,
    Subspace,
    apply,
    contains,
    join,
    kernel,
    make_rng,
    matmul,
    meet,
    rank,
    sample_avoiding,
    sample_subspace,
)


class CameraError(ValueError):
    pass


class CenterCollision(CameraError):
    """The k-plane meets a camera center, so its projection is undefined."""

    def __init__(self, message: str, camera: int | None = None):
        super().__init__(message)
        self.camera = camera


class NotThroughCenter(CameraError):
    pass


@dataclass(frozen=True)
class CameraMatrix:
    matrix: tuple[Row, ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in r) for r in self.matrix)
        if not rows or len({len(r) for r in rows}) != 1:
            raise CameraError("camera matrix must be a nonempty rectangular array")
        object.__setattr__(self, "matrix", rows)
        if self.h > self.N:
            raise CameraError(f"camera has h={self.h} > N={self.N}")
        if rank(rows) != len(rows):
            raise CameraError("camera matrix is not of full row rank")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "CameraMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @property
    def h(self) -> int:
        return len(self.matrix) - 1

    @property
    def N(self) -> int:
        return len(self.matrix[0]) - 1


def center(C: CameraMatrix) -> Subspace:
    """ker C as a subspace of P^N; it has dimension N - h - 1."""
    return Subspace.span(C.N, kernel(C.matrix, C.N + 1))


def camera_with_center(c: Subspace, seed=None, entry_bound: int = DEFAULT_ENTRY_BOUND) -> CameraMatrix:
    """A random camera whose center is exactly ``c``.

    The rows are random linear forms vanishing on c, so h = N - dim c - 1.
    """
    forms = c.annihilator()
    rng = make_rng(seed)
    h = c.N - c.dim - 1
    if h < 0:
        raise CameraError("the full space is not the center of any camera")
    for _ in range(MAX_REDRAWS):
        coeffs = [[rng.randint(-entry_bound, entry_bound) for _ in forms.basis] for _ in range(h + 1)]
        rows = matmul(coeffs, forms.basis)
        if rank(rows) == h + 1:
            return CameraMatrix.from_rows(rows)
    raise SamplingError("no full-rank camera drawn")


def random_camera(N: int, h: int, seed=None, entry_bound: int = DEFAULT_ENTRY_BOUND) -> CameraMatrix:
    S = sample_subspace(N, h, seed, entry_bound)
    return CameraMatrix(S.basis)


def project(C: CameraMatrix, P: Subspace) -> Subspace:
    """The image k-plane C·P in P^h."""
    if P.N != C.N:
        raise CameraError(f"world plane lives in P^{P.N}, camera expects P^{C.N}")
    if not meet(P, center(C)).is_empty:
        raise CenterCollision("the plane meets the camera center")
    return Subspace.span(C.h, [apply(C.matrix, X) for X in P.basis])


def back_project(C: CameraMatrix, p: Subspace) -> Subspace:
    """Back-projected plane H(p) = ker(Q C) with Q the linear forms vanishing on p."""
    if p.N != C.h:
        raise CameraError(f"image plane lives in P^{p.N}, camera images are in P^{C.h}")
    if p.is_empty:
        raise CameraError("cannot back-project the empty image plane")
    Q = kernel(p.basis, C.h + 1)
    if not Q:
        return Subspace.full(C.N)
    return Subspace.span(C.N, kernel(matmul(Q, C.matrix), C.N + 1))


def project_backplane(C: CameraMatrix, H: Subspace) -> Subspace:
    """Image C(H) of a plane H through the center; inverse of :func:`back_project`."""
    c = center(C)
    if H.N != C.N or not contains(H, c):
        raise NotThroughCenter("plane does not contain the camera center")
    if H.dim == c.dim:
        raise NotThroughCenter("plane equals the center; it has no image")
    return Subspace.span(C.h, [apply(C.matrix, X) for X in H.basis])


def multiview_identities_check(C: CameraMatrix, k: int, seed=None) -> bool:
    """Check dim c = N-h-1 and dim H = N-h+k = dim c+k+1 on a sampled k-plane."""
    c = center(C)
    if not 0 <= k <= C.N - c.dim - 1:
        raise CameraError(f"k={k} outside 0..{C.N - c.dim - 1}")
    if c.dim != C.N - C.h - 1:
        return False
    P = sample_avoiding(C.N, k, [c], seed)
    H = back_project(C, project(C, P))
    return H.dim == C.N - C.h + k == c.dim + k + 1 and H == join(c, P)
