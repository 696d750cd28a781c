"""Randomized cross-checks between independent routes to the same invariant.

Each sweep case draws an arrangement from one of several generators (generic
centers, centers spanned by subsets of a shared point pool, centers through a
common core, coordinate subspaces), so that forced intersections are common.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Callable

from . import __version__
from .arrangement import (
    FEASIBILITY_CAP,
    PARTITION_CAP,
    CenterArrangement,
    dim_via_feasibility,
    ell_closed_form,
    ell_sampled,
    ell_two_view,
    is_proper,
    is_pseudo_disjoint,
    tau,
    upsilon,
)
from .io import arrangement_from_json, arrangement_to_json
from .linalg import (
    DEFAULT_ENTRY_BOUND,
    Subspace,
    make_rng,
    sample_inside,
    sample_subspace,
    sample_through,
)

# (N, h_list, k) -> tau, for generic point centers and single point centers
TAU_TABLE: list[tuple[int, tuple[int, ...], int, int]] = [
    (3, (2,), 0, 1),
    (3, (2, 2), 0, 1),
    (3, (2, 2, 2), 0, 0),
    (3, (2, 2, 2, 2), 0, 0),
    (3, (2,), 1, 2),
    (3, (2, 2), 1, 2),
    (3, (2, 2, 2), 1, 2),
    (3, (2, 2, 2, 2), 1, 1),
    (3, (2, 2, 2, 2, 2), 1, 1),
    (4, (3,), 0, 2),
    (9, (8,), 0, 3),
    (16, (15,), 0, 4),
]


def _generic(rng, N: int, n: int, entry_bound: int) -> list[Subspace]:
    return [sample_subspace(N, rng.randint(-1, N - 1), rng, entry_bound) for _ in range(n)]


def _pool(rng, N: int, n: int, entry_bound: int) -> list[Subspace]:
    pool = [sample_subspace(N, 0, rng, entry_bound) for _ in range(rng.randint(1, N + 2))]
    centers = []
    for _ in range(n):
        size = rng.randint(1, min(len(pool), N))
        pts = rng.sample(pool, size)
        centers.append(Subspace.span(N, [p.basis[0] for p in pts]))
    return centers


def _core(rng, N: int, n: int, entry_bound: int) -> list[Subspace]:
    core = sample_subspace(N, rng.randint(0, N - 1), rng, entry_bound)
    out = []
    for _ in range(n):
        if rng.random() < 0.3:
            out.append(sample_inside(core, rng.randint(0, core.dim), rng, entry_bound))
        else:
            out.append(sample_through(core, rng.randint(core.dim, N - 1), rng, entry_bound))
    return out


def _coordinate(rng, N: int, n: int, entry_bound: int) -> list[Subspace]:
    out = []
    for _ in range(n):
        size = rng.randint(0, N)
        out.append(Subspace.coordinate(N, rng.sample(range(N + 1), size)))
    return out


GENERATORS: dict[str, Callable] = {
    "generic": _generic,
    "pool": _pool,
    "core": _core,
    "coordinate": _coordinate,
}


def random_instance(
    seed,
    max_N: int = 5,
    max_n: int = 4,
    n: int | None = None,
    kind: str | None = None,
    entry_bound: int = DEFAULT_ENTRY_BOUND,
) -> tuple[CenterArrangement, int, str]:
    """Seeded (arrangement, k, generator name) with k drawn from 0..N-1-max dim c_i."""
    rng = make_rng(seed, "instance")
    while True:
        N = rng.randint(1, max_N)
        size = n if n is not None else rng.randint(1, max_n)
        name = kind or rng.choice(sorted(GENERATORS))
        centers = GENERATORS[name](rng, N, size, entry_bound)
        if max(c.dim for c in centers) <= N - 1:
            arr = CenterArrangement(N, centers)
            return arr, rng.randint(0, arr.max_k()), name


@dataclass
class CheckTally:
    passed: int = 0
    failed: int = 0
    skipped: int = 0


@dataclass
class VerifyReport:
    config: dict
    checks: dict[str, CheckTally] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, name: str, passed: bool | None, case: Any = None, detail: dict | None = None):
        tally = self.checks.setdefault(name, CheckTally())
        if passed is None:
            tally.skipped += 1
        elif passed:
            tally.passed += 1
        else:
            tally.failed += 1
            self.failures.append({"check": name, "case": case, **(detail or {})})

    def to_dict(self) -> dict:
        return {
            "meta": self.config,
            "ok": self.ok,
            "checks": {
                k: {"passed": v.passed, "failed": v.failed, "skipped": v.skipped}
                for k, v in sorted(self.checks.items())
            },
            "failures": self.failures,
        }


def check_instance(
    arr: CenterArrangement,
    k: int,
    seed,
    trials: int = 10,
    feasibility_cap: int = FEASIBILITY_CAP,
    entry_bound: int = DEFAULT_ENTRY_BOUND,
) -> dict[str, tuple[bool | None, dict]]:
    """Run every cross-check pair on one instance; value None means not applicable."""
    ell, lam = ell_closed_form(arr, k)
    out: dict[str, tuple[bool | None, dict]] = {}
    sampled = ell_sampled(arr, k, trials, seed, entry_bound)
    out["ell_closed_vs_sampled"] = (sampled == ell, {"closed": ell, "sampled": sampled})
    if arr.n == 2:
        tv = ell_two_view(arr, k)
        out["ell_two_view_vs_closed"] = (tv == ell, {"closed": ell, "two_view": tv})
    else:
        out["ell_two_view_vs_closed"] = (None, {})
    if arr.n <= feasibility_cap:
        h, m = dim_via_feasibility(arr, k, feasibility_cap)
        out["dim_feasibility_vs_closed"] = (
            h == (k + 1) * (arr.N - ell),
            {"feasibility": h, "witness": list(m), "closed": (k + 1) * (arr.N - ell)},
        )
    else:
        out["dim_feasibility_vs_closed"] = (None, {})
    pd, _ = is_pseudo_disjoint(arr, k)
    if pd:
        formula = max(k, arr.N - sum(h - k for h in arr.h()))
        out["pseudo_disjoint_formula"] = (formula == ell, {"closed": ell, "formula": formula})
    else:
        out["pseudo_disjoint_formula"] = (None, {})
    upper = min(d + k + 1 for d in arr.dims)
    out["ell_bounds"] = (k <= ell <= upper, {"ell": ell, "upper": upper})
    proper = is_proper(arr, k)
    dim_P = sum((k + 1) * (h - k) for h in arr.h())
    out["proper_vs_dimension"] = (
        proper == ((k + 1) * (arr.N - ell) != dim_P),
        {"proper": proper, "dim_M": (k + 1) * (arr.N - ell), "dim_P": dim_P},
    )
    ups = upsilon(arr, k, "search", seed, entry_bound=entry_bound)
    out["upsilon_search_bounds"] = (ell <= ups.value <= upper, {"ell": ell, "upsilon": ups.value, "upper": upper})
    return out


def run_sweep(
    cases: int,
    max_N: int = 5,
    max_n: int = 4,
    seed: int = 42,
    trials: int = 10,
    partition_cap: int = PARTITION_CAP,
    feasibility_cap: int = FEASIBILITY_CAP,
    entry_bound: int = DEFAULT_ENTRY_BOUND,
) -> VerifyReport:
    report = VerifyReport(
        config={
            "command": "verify",
            "cases": cases,
            "maxN": max_N,
            "maxn": max_n,
            "seed": seed,
            "trials": trials,
            "caps": {"partition": partition_cap, "feasibility": feasibility_cap},
            "entry_bound": entry_bound,
            "version": __version__,
        }
    )
    for case in range(cases):
        arr, k, kind = random_instance((seed, case), max_N, max_n, entry_bound=entry_bound)
        results = check_instance(arr, k, (seed, case), trials, feasibility_cap, entry_bound)
        instance = {"k": k, "generator": kind, "arrangement": arrangement_to_json(arr, with_lattice=False)}
        for name, (passed, detail) in results.items():
            report.record(name, passed, case, {**detail, "instance": instance} if passed is False else detail)
    if cases:
        for N, hs, k, expected in TAU_TABLE:
            got = tau(N, hs, k)
            report.record("tau_table", got == expected, None, {"N": N, "h": list(hs), "k": k, "tau": got, "expected": expected})
    return report


def load_example_fixtures() -> list[tuple[str, dict]]:
    folder = resources.files("mvv") / "fixtures" / "paper"
    out = []
    for entry in sorted(folder.iterdir(), key=lambda p: p.name):
        if entry.name.endswith(".json"):
            out.append((entry.name, json.loads(entry.read_text())))
    return out


def check_example_fixture(obj: dict, seed=0) -> dict[str, tuple[Any, Any]]:
    """Evaluate each expected field of a fixture; returns {field: (expected, got)}."""
    arr, generic = arrangement_from_json(obj)
    k = obj["k"]
    got: dict[str, Callable[[], Any]] = {
        "ell": lambda: ell_closed_form(arr, k)[0],
        "ell_sampled": lambda: ell_sampled(arr, k, 10, seed),
        "triangulable": lambda: ell_closed_form(arr, k)[0] == k,
        "pseudo_disjoint": lambda: is_pseudo_disjoint(arr, k)[0],
        "proper": lambda: is_proper(arr, k),
        "dim_M": lambda: (k + 1) * (arr.N - ell_closed_form(arr, k)[0]),
        "tau": lambda: tau(arr.N, arr.h(), k),
        "upsilon": lambda: upsilon(arr, k, "generic" if generic else "search", seed).value,
        "two_view": lambda: ell_two_view(arr, k),
    }
    return {key: (val, got[key]()) for key, val in obj["expect"].items()}


def run_worked_examples(seed: int = 0) -> VerifyReport:
    report = VerifyReport(config={"command": "verify", "worked_examples": True, "seed": seed, "version": __version__})
    for name, obj in load_example_fixtures():
        for key, (expected, got) in check_example_fixture(obj, seed).items():
            report.record(
                f"example:{name}:{key}",
                expected == got,
                name,
                {"description": obj.get("description"), "expected": expected, "got": got},
            )
    return report
