"""JSON file formats.  Every rational is written as the string "a/b" (b > 0, reduced)."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .arrangement import CenterArrangement
from .camera import CameraError, CameraMatrix
from .linalg import Subspace
from .triangulation import Scene


class ParseError(ValueError):
    pass


def rational_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a rational string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise ParseError(f"{where}: expected a rational string like \"3/4\", got {value!r}")
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{where}: {value!r} is not a rational number") from None


def _require(obj: Any, key: str, where: str) -> Any:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected a JSON object")
    if key not in obj:
        raise ParseError(f"{where}: missing field {key!r}")
    return obj[key]


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{where}: expected an integer, got {value!r}")
    return value


def _matrix(value: Any, where: str, ncols: int | None = None) -> list[list[Fraction]]:
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected a list of rows")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list):
            raise ParseError(f"{where}[{i}]: expected a list of rationals")
        if ncols is not None and len(row) != ncols:
            raise ParseError(f"{where}[{i}]: expected {ncols} entries, got {len(row)}")
        rows.append([parse_rational(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)])
    return rows


def matrix_to_json(rows) -> list[list[str]]:
    return [[rational_to_str(x) for x in row] for row in rows]


def subspace_to_json(S: Subspace) -> dict:
    return {"N": S.N, "basis": matrix_to_json(S.basis)}


def subspace_from_json(obj: Any, where: str = "subspace") -> Subspace:
    N = _int(_require(obj, "N", where), f"{where}.N")
    if N < 0:
        raise ParseError(f"{where}.N: must be non-negative")
    rows = _matrix(_require(obj, "basis", where), f"{where}.basis", N + 1)
    return Subspace.span(N, rows)


def camera_to_json(C: CameraMatrix) -> dict:
    return {"h": C.h, "N": C.N, "matrix": matrix_to_json(C.matrix)}


def camera_from_json(obj: Any, where: str = "camera") -> CameraMatrix:
    h = _int(_require(obj, "h", where), f"{where}.h")
    N = _int(_require(obj, "N", where), f"{where}.N")
    rows = _matrix(_require(obj, "matrix", where), f"{where}.matrix", N + 1)
    if len(rows) != h + 1:
        raise ParseError(f"{where}.matrix: expected {h + 1} rows for h={h}, got {len(rows)}")
    try:
        return CameraMatrix.from_rows(rows)
    except CameraError as exc:
        raise ParseError(f"{where}: {exc}") from None


def arrangement_to_json(arr: CenterArrangement, generic: bool = False, with_lattice: bool = True) -> dict:
    out: dict[str, Any] = {
        "N": arr.N,
        "centers": [subspace_to_json(c) for c in arr.centers],
    }
    if generic:
        out["generic"] = True
    if with_lattice:
        out["lattice"] = [
            {"I": [i for i in range(arr.n) if mask >> i & 1], "dim": arr.lattice[mask]}
            for mask in range(1, 1 << arr.n)
        ]
    return out


def arrangement_from_json(obj: Any, where: str = "arrangement") -> tuple[CenterArrangement, bool]:
    """Parse an arrangement file; also returns its ``generic`` flag (default False)."""
    N = _int(_require(obj, "N", where), f"{where}.N")
    raw = _require(obj, "centers", where)
    if not isinstance(raw, list) or not raw:
        raise ParseError(f"{where}.centers: expected a nonempty list")
    centers = []
    for i, c in enumerate(raw):
        S = subspace_from_json(c, f"{where}.centers[{i}]")
        if S.N != N:
            raise ParseError(f"{where}.centers[{i}].N: {S.N} does not match N={N}")
        centers.append(S)
    generic = obj.get("generic", False)
    if not isinstance(generic, bool):
        raise ParseError(f"{where}.generic: expected true/false")
    return CenterArrangement(N, centers), generic


def scene_to_json(scene: Scene) -> dict:
    return {"N": scene.N, "k": scene.k, "cameras": [camera_to_json(C) for C in scene.cameras]}


def scene_from_json(obj: Any, where: str = "scene") -> Scene:
    N = _int(_require(obj, "N", where), f"{where}.N")
    k = _int(_require(obj, "k", where), f"{where}.k")
    raw = _require(obj, "cameras", where)
    if not isinstance(raw, list) or not raw:
        raise ParseError(f"{where}.cameras: expected a nonempty list")
    cams = [camera_from_json(c, f"{where}.cameras[{i}]") for i, c in enumerate(raw)]
    try:
        return Scene(N, k, tuple(cams))
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from None


def tuple_to_json(planes) -> dict:
    return {"planes": [subspace_to_json(p) for p in planes]}


def tuple_from_json(obj: Any, where: str = "tuple") -> list[Subspace]:
    raw = _require(obj, "planes", where)
    if not isinstance(raw, list):
        raise ParseError(f"{where}.planes: expected a list")
    return [subspace_from_json(p, f"{where}.planes[{i}]") for i, p in enumerate(raw)]


def load_json(path: str | Path) -> Any:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
