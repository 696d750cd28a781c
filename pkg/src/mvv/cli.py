"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 under-determined
triangulation, 3 inconsistent (tuple off the variety, failed cross-check),
4 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .arrangement import (
    FEASIBILITY_CAP,
    PARTITION_CAP,
    ArrangementError,
    CenterArrangement,
    FeasibilityBudgetExceeded,
    Inconsistent,
    PartitionBudgetExceeded,
    analyze,
)
from .camera import CameraError, CenterCollision, camera_with_center
from .io import (
    ParseError,
    arrangement_from_json,
    arrangement_to_json,
    dumps,
    load_json,
    scene_from_json,
    scene_to_json,
    subspace_from_json,
    subspace_to_json,
    tuple_from_json,
    tuple_to_json,
)
from .linalg import DEFAULT_ENTRY_BOUND, SamplingError, make_rng, sample_avoiding, sample_subspace
from .triangulation import (
    InconsistentTuple,
    Scene,
    TriangulationError,
    UnderDetermined,
    synthesize,
    triangulate,
)
from .verify import run_worked_examples, run_sweep

EXIT_OK, EXIT_USAGE, EXIT_UNDERDETERMINED, EXIT_INCONSISTENT, EXIT_BUDGET = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _seed(args) -> int:
    env = os.environ.get("MVV_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"MVV_SEED must be an integer, got {env!r}") from None
    return args.seed


def _meta(args, seed: int, **extra) -> dict:
    return {
        "command": args.command,
        "seed": seed,
        "trials": getattr(args, "trials", None),
        "caps": {
            "partition": getattr(args, "partition_cap", PARTITION_CAP),
            "feasibility": getattr(args, "feasibility_cap", FEASIBILITY_CAP),
        },
        "entry_bound": getattr(args, "entry_bound", DEFAULT_ENTRY_BOUND),
        "version": __version__,
        **extra,
    }


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    seed = _seed(args)
    arr, generic = arrangement_from_json(load_json(args.input))
    generic = generic or args.generic
    status = EXIT_OK
    try:
        report = analyze(
            arr,
            args.k,
            seed=seed,
            trials=args.trials,
            generic=generic,
            partition_cap=args.partition_cap,
            feasibility_cap=args.feasibility_cap,
            entry_bound=args.entry_bound,
        )
    except Inconsistent as exc:
        if exc.report is None:
            raise
        report = exc.report
        status = EXIT_INCONSISTENT
        print(f"inconsistent: {exc}", file=sys.stderr)
    body = report.to_dict()
    body["meta"] = _meta(args, seed, input=str(args.input), generic=generic)
    _emit(dumps(body), args.out)
    return status


def cmd_gen(args) -> int:
    seed = _seed(args)
    N = args.N
    if args.scene:
        if args.cameras is None or args.k is None:
            raise UsageError("gen --scene needs --k and --cameras (comma-separated image dimensions h_i)")
        centers = []
        for i, h in enumerate(args.cameras):
            if not 0 <= h <= N:
                raise UsageError(f"camera {i}: need 0 <= h <= N, got h={h}")
            if N - h - 1 > N - args.k - 1:
                raise UsageError(f"camera {i}: h={h} < k={args.k}, its center would be too large")
            centers.append(sample_subspace(N, N - h - 1, make_rng(seed, "center", i), args.entry_bound))
        cams = tuple(
            camera_with_center(c, make_rng(seed, "camera", i), args.entry_bound) for i, c in enumerate(centers)
        )
        body = scene_to_json(Scene(N, args.k, cams))
    else:
        if args.centers is None:
            raise UsageError("gen needs --centers (comma-separated center dimensions) or --scene")
        for i, d in enumerate(args.centers):
            if not -1 <= d <= N - 1:
                raise UsageError(f"center {i}: need -1 <= dim <= N-1, got {d}")
            if args.k is not None and d > N - args.k - 1:
                raise UsageError(f"center {i}: dim {d} > N-k-1 = {N - args.k - 1}")
        centers = [
            sample_subspace(N, d, make_rng(seed, "center", i), args.entry_bound) for i, d in enumerate(args.centers)
        ]
        body = arrangement_to_json(CenterArrangement(N, centers), generic=True)
        if args.k is not None:
            body["k"] = args.k
    body["meta"] = _meta(args, seed)
    _emit(dumps(body), args.out)
    return EXIT_OK


def cmd_synthesize(args) -> int:
    seed = _seed(args)
    scene = scene_from_json(load_json(args.scene))
    if args.plane:
        P = subspace_from_json(load_json(args.plane), "plane")
    else:
        P = sample_avoiding(scene.N, scene.k, scene.centers, make_rng(seed, "plane"), args.entry_bound)
    try:
        planes = synthesize(scene, P)
    except CenterCollision as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    body = tuple_to_json(planes)
    body["world_plane"] = subspace_to_json(P)
    body["meta"] = _meta(args, seed)
    _emit(dumps(body), args.out)
    return EXIT_OK


def cmd_triangulate(args) -> int:
    scene = scene_from_json(load_json(args.scene))
    planes = tuple_from_json(load_json(args.tuple))
    body: dict = {"meta": _meta(args, _seed(args), scene=str(args.scene), tuple=str(args.tuple))}
    try:
        P = triangulate(scene, planes)
        body.update(status="ok", plane=subspace_to_json(P), intersection_dim=P.dim)
        code = EXIT_OK
    except UnderDetermined as exc:
        body.update(status="UnderDetermined", plane=None, intersection_dim=exc.intersection.dim)
        code = EXIT_UNDERDETERMINED
    except InconsistentTuple as exc:
        body.update(status="Inconsistent", plane=None, intersection_dim=exc.intersection.dim)
        code = EXIT_INCONSISTENT
    _emit(dumps(body), args.out)
    return code


def cmd_verify(args) -> int:
    seed = _seed(args)
    if args.paper_examples:
        report = run_worked_examples(seed)
    else:
        report = run_sweep(
            args.cases,
            args.maxN,
            args.maxn,
            seed,
            args.trials,
            args.partition_cap,
            args.feasibility_cap,
            args.entry_bound,
        )
    _emit(dumps(report.to_dict()), args.out)
    for name, tally in sorted(report.checks.items()):
        print(f"{'PASS' if not tally.failed else 'FAIL'} {name}: {tally.passed} passed, {tally.failed} failed",
              file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_INCONSISTENT


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mvv", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"mvv {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, trials=True, caps=True):
        p.add_argument("--seed", type=int, default=0, help="base seed (MVV_SEED overrides)")
        p.add_argument("--entry-bound", type=int, default=DEFAULT_ENTRY_BOUND)
        p.add_argument("--out", help="write JSON here instead of stdout")
        if trials:
            p.add_argument("--trials", type=int, default=10)
        if caps:
            p.add_argument("--partition-cap", type=int, default=PARTITION_CAP)
            p.add_argument("--feasibility-cap", type=int, default=FEASIBILITY_CAP)

    p = sub.add_parser("analyze", help="compute all invariants of an arrangement")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--generic", action="store_true", help="treat the centers as generic (exact upsilon)")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("gen", help="seeded random arrangement or scene")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--centers", type=_int_list, help="center dimensions, e.g. 0,0,1")
    p.add_argument("--scene", action="store_true")
    p.add_argument("--cameras", type=_int_list, help="image dimensions h_i for --scene")
    p.add_argument("--k", type=int)
    common(p, trials=False, caps=False)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("synthesize", help="project a world k-plane through a scene")
    p.add_argument("--scene", required=True)
    p.add_argument("--plane", help="world plane file; sampled from the seed when omitted")
    common(p, trials=False, caps=False)
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("triangulate", help="recover the k-plane from an image tuple")
    p.add_argument("--scene", required=True)
    p.add_argument("--tuple", required=True)
    common(p, trials=False, caps=False)
    p.set_defaults(func=cmd_triangulate)

    p = sub.add_parser("verify", help="randomized oracle-equivalence sweeps")
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--maxN", type=int, default=5)
    p.add_argument("--maxn", type=int, default=4)
    p.add_argument("--paper-examples", action="store_true", help="replay the bundled worked examples")
    common(p)
    p.set_defaults(func=cmd_verify, seed=42)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PartitionBudgetExceeded, FeasibilityBudgetExceeded) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, UsageError, ArrangementError, CameraError, TriangulationError, SamplingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
