"""Survey the loop-space decompositions over a sweep of inputs.

Prints, for each base rank d (and each attaching number k over the
4-sphere), the decomposition, the first loop-homology coefficients, and the
rational homotopy ranks.  Unsupported d=0 cases are listed with their
refusal reasons.

Usage: python scripts/survey_decompositions.py [--cutoff N]
"""

import argparse
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from loopsix import (
    UnsupportedCase,
    bundle_from_classes,
    decompose,
    loop_factors,
    loop_homology_series,
    new_four_manifold,
    ranks_from_decomposition,
    render,
)


def random_form(rng, d):
    Q = [[0] * d for _ in range(d)]
    for i in range(d):
        Q[i][i] = rng.choice([1, -1])
    for _ in range(2 * d):
        i, j = rng.randrange(d), rng.randrange(d)
        if i != j:
            for r in range(d):
                Q[r][j] += Q[r][i]
            for s in range(d):
                Q[j][s] += Q[i][s]
    return Q


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--cutoff", type=int, default=8)
    args = parser.parse_args()
    rng = random.Random(0)

    print("== d >= 1 (decomposition depends only on d) ==")
    for d in range(1, 7):
        N = new_four_manifold(random_form(rng, d))
        w2 = [rng.randint(0, 1) for _ in range(d)]
        ell = rng.randint(-3, 3)
        b = bundle_from_classes(N, w2, 4 * ell + N.pairing([x % 2 for x in w2]))
        expr = decompose(N, b)
        series = loop_homology_series(expr, args.cutoff)
        ranks = ranks_from_decomposition(loop_factors(N, b, args.cutoff), args.cutoff)
        print(f"d={d}: {render(expr)}")
        print(f"      loop homology: {series.integer_coefficients()}")
        print(f"      homotopy ranks: {ranks.dims}")

    print("== d = 0 (depends on k) ==")
    N0 = new_four_manifold([])
    for k in range(0, 17):
        b = bundle_from_classes(N0, [], 4 * k)
        try:
            expr = decompose(N0, b)
        except UnsupportedCase as exc:
            print(f"k={k}: unsupported ({exc})")
            continue
        print(f"k={k}: {render(expr)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
