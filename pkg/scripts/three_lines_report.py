"""Full combinatorial report for the three-line spectral curve.

Reproduces the headline numbers: 26 strata with dimension profile
(7 x 3, 12 x 2, 6 x 1, 1 x 0), the 27-piece local census at the diagonal
point with its eight top-dimensional disks, the two completely reducible
strata, and a sampled matrix polynomial for every stratum.

Usage: python scripts/three_lines_report.py
"""

from collections import Counter
from fractions import Fraction

from spectral_strata import (
    CurveShape,
    Divisor,
    StratumLabel,
    Subgraph,
    classify_polynomial,
    cr_strata,
    enumerate_strata,
    interior_cubic_points,
    line_arrangement,
    local_model,
    matpoly_to_json_obj,
    sample_stratum,
    stratum_dimension,
    stratum_rows,
)

LINES = [("0", "0"), ("1", "1"), ("0", "2")]


def main() -> None:
    arr = line_arrangement(LINES)
    shape = CurveShape(arr.dual_graph, 1, 3)
    strata = enumerate_strata(shape)
    print(f"lines: {LINES}")
    print(f"dual graph: triangle on {arr.dual_graph.vertices}")
    print(f"strata: {len(strata)}")
    profile = Counter(stratum_dimension(shape, s) for s in strata)
    print("dimension profile:", dict(sorted(profile.items(), reverse=True)))

    print("\nstratum table")
    for row in stratum_rows(shape):
        print(
            f"  id={row['id']:2d} edges={row['subgraph_edges']!s:10} "
            f"divisor={tuple(row['divisor'].values())} dim={row['dimension']} "
            f"class={row['class']} mult={row['multiplicity']}"
        )

    origin = StratumLabel(
        Subgraph(arr.dual_graph, frozenset()),
        Divisor(arr.dual_graph.vertices, (0, 0, 0)),
    )
    model = local_model(shape, origin)
    print(f"\nlocal census at the diagonal point: p={model.p}, q={model.q}")
    print(f"  total local strata: {sum(model.census.values())} (= 3^{model.p})")
    top = {
        s.divisor.values: m for s, m in model.census.items() if s.subgraph.n_edges == 3
    }
    print(f"  top-dimensional disks: {sum(top.values())} with multiplicities {top}")

    print("\ncompletely reducible strata:")
    for s in cr_strata(shape):
        print(f"  edges={s.subgraph.edge_list()} divisor={s.divisor.values}")

    print("\nsamples (one matrix polynomial per stratum):")
    cubic = interior_cubic_points(
        arr, [Fraction(n, d) for d in (1, 2, 3) for n in range(-12, 13)]
    )
    print(f"  rational points found on the interior cubic: {cubic[:4]}")
    for s in strata:
        if s.subgraph.n_edges == 3 and s.divisor.values == (1, 1, 1):
            params = list(cubic[0])
        else:
            params = [Fraction(i + 2) for i in range(s.subgraph.n_edges)]
        p = sample_stratum(arr, s, params)
        label = classify_polynomial(p, arr)
        assert label == s
        a0 = matpoly_to_json_obj(p)["coeffs"][0]
        print(f"  {s.subgraph.edge_list()!s:10} {s.divisor.values}  A0={a0}")


if __name__ == "__main__":
    main()
