"""Regenerate src/mvv/fixtures/paper/*.json (the bundled worked examples)."""

from pathlib import Path

from mvv.arrangement import CenterArrangement
from mvv.io import arrangement_to_json, dumps
from mvv.linalg import Subspace, sample_subspace

OUT = Path(__file__).resolve().parents[1] / "src" / "mvv" / "fixtures" / "paper"


def coord(N, *idx):
    return Subspace.coordinate(N, idx)


def write(name, description, N, centers, k, expect, generic=False):
    body = arrangement_to_json(CenterArrangement(N, centers), generic=generic, with_lattice=False)
    body.update(description=description, k=k, expect=expect)
    (OUT / f"{name}.json").write_text(dumps(body))


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    write("two_lines_p3", "two distinct (skew) line centers in P^3, points", 3,
          [coord(3, 0, 1), coord(3, 2, 3)], 0,
          {"ell": 1, "ell_sampled": 1, "triangulable": False, "dim_M": 2, "two_view": 1})
    write("two_points_p3", "two distinct point centers in P^3, lines", 3,
          [coord(3, 0), coord(3, 3)], 1,
          {"ell": 1, "ell_sampled": 1, "triangulable": True, "two_view": 1, "proper": False,
           "pseudo_disjoint": True, "dim_M": 4})
    write("two_points_p3_k0", "two distinct point centers in P^3, points", 3,
          [coord(3, 0), coord(3, 3)], 0,
          {"ell": 0, "ell_sampled": 0, "triangulable": True, "proper": True, "pseudo_disjoint": True,
           "dim_M": 3})
    write("coincident_p2", "two coincident point centers in P^2, points", 2,
          [coord(2, 0), coord(2, 0)], 0,
          {"pseudo_disjoint": False, "proper": True})
    write("distinct_points_p2", "two distinct point centers in P^2, points", 2,
          [coord(2, 0), coord(2, 1)], 0,
          {"pseudo_disjoint": True})
    write("lines_meeting_p3", "two line centers in P^3 meeting in a point, points", 3,
          [coord(3, 0, 1), coord(3, 0, 2)], 0,
          {"pseudo_disjoint": True, "two_view": 1, "ell": 1})
    write("collinear_points_p3", "three collinear point centers in P^3, points", 3,
          [Subspace.span(3, [[1, 0, 0, 0]]), Subspace.span(3, [[0, 1, 0, 0]]),
           Subspace.span(3, [[1, 1, 0, 0]])], 0,
          {"upsilon": 1, "ell": 0})
    table = {0: {1: 1, 2: 1, 3: 0, 4: 0, 5: 0}, 1: {1: 2, 2: 2, 3: 2, 4: 1, 5: 1}}
    for k, row in table.items():
        for n, ups in row.items():
            centers = [sample_subspace(3, 0, ("fixture", k, n, i)) for i in range(n)]
            write(f"generic_points_p3_n{n}_k{k}", f"{n} generic point centers in P^3, k={k}", 3,
                  centers, k, {"upsilon": ups, "tau": ups}, generic=True)
    for N, t in ((4, 2), (9, 3), (16, 4)):
        write(f"single_point_p{N}", f"one generic point center in P^{N}, points", N,
              [sample_subspace(N, 0, ("fixture", "single", N))], 0,
              {"upsilon": 1, "tau": t}, generic=True)


if __name__ == "__main__":
    main()
