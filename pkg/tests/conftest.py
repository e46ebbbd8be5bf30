"""Shared generators and independent oracles for the test suite.

The oracles here deliberately avoid the library's own combinatorics:
Lyndon words are enumerated as explicit words, and graded free Lie algebra
dimensions are computed by spanning literal bracket expressions inside the
tensor algebra with Koszul signs.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product as iter_product
from pathlib import Path

from loopsix import BundleData, FourManifold, bundle_from_classes, new_four_manifold

REPO_ROOT = Path(__file__).resolve().parent.parent
INPUTS = REPO_ROOT / "inputs"


# ---------------------------------------------------------------------------
# Random but reproducible manifolds and bundles
# ---------------------------------------------------------------------------


def random_unimodular_form(rng: random.Random, d: int, bound: int = 10) -> list[list[int]]:
    """A random symmetric integer matrix with det +-1 and entries <= bound.

    Starts from a +-1 diagonal (or hyperbolic blocks for even d) and applies
    unimodular congruences, skipping any step that would break the bound.
    """
    if d == 0:
        return []
    Q = [[0] * d for _ in range(d)]
    if d % 2 == 0 and rng.random() < 0.4:
        for i in range(0, d, 2):
            Q[i][i + 1] = Q[i + 1][i] = 1
    else:
        for i in range(d):
            Q[i][i] = rng.choice([1, -1])
    for _ in range(3 * d):
        i, j = rng.randrange(d), rng.randrange(d)
        if i == j:
            continue
        c = rng.choice([-2, -1, 1, 2])
        candidate = [row[:] for row in Q]
        for r in range(d):
            candidate[r][j] += c * candidate[r][i]
        for s in range(d):
            candidate[j][s] += c * candidate[i][s]
        if max(abs(x) for row in candidate for x in row) <= bound:
            Q = candidate
    return Q


def random_bundle(
    rng: random.Random, N: FourManifold
) -> BundleData:
    """A valid bundle over N with small level."""
    w2 = [rng.randint(0, 1) for _ in range(N.d)]
    alpha = tuple(w2)
    ell = rng.randint(-5, 5)
    p1 = 4 * ell + N.pairing(alpha)
    return bundle_from_classes(N, w2, p1)


def random_pair(rng: random.Random, d: int) -> tuple[FourManifold, BundleData]:
    N = new_four_manifold(random_unimodular_form(rng, d))
    return N, random_bundle(rng, N)


# ---------------------------------------------------------------------------
# Lyndon word oracle (free Lie ring basis counts by explicit enumeration)
# ---------------------------------------------------------------------------


def _is_lyndon(word: tuple[int, ...]) -> bool:
    n = len(word)
    for shift in range(1, n):
        if word[shift:] + word[:shift] <= word:
            return False
    return True


def lyndon_count_for_content(content: list[int]) -> int:
    """Number of Lyndon words with exactly content[i] copies of letter i."""
    from itertools import permutations

    letters: list[int] = []
    for letter, mult in enumerate(content):
        letters.extend([letter] * mult)
    return sum(1 for word in set(permutations(letters)) if _is_lyndon(word))


def lyndon_count_for_weight(letter_weights: list[int], total_weight: int) -> int:
    """Number of Lyndon words over a weighted alphabet with given total weight."""
    count = 0
    max_len = total_weight  # weights are >= 1
    stack: list[tuple[tuple[int, ...], int]] = [((), 0)]
    while stack:
        word, weight = stack.pop()
        for letter, w in enumerate(letter_weights):
            new_weight = weight + w
            if new_weight > total_weight or len(word) + 1 > max_len:
                continue
            new_word = word + (letter,)
            if new_weight == total_weight:
                if _is_lyndon(new_word):
                    count += 1
            else:
                stack.append((new_word, new_weight))
    return count


# ---------------------------------------------------------------------------
# Graded free Lie algebra oracle (bracket spans in the tensor algebra)
# ---------------------------------------------------------------------------


def _tensor_bracket(
    u: dict[tuple[int, ...], Fraction],
    v: dict[tuple[int, ...], Fraction],
    deg_u: int,
    deg_v: int,
) -> dict[tuple[int, ...], Fraction]:
    """[u, v] = u (x) v - (-1)^{|u||v|} v (x) u with degree-1 odd generators."""
    sign = -((-1) ** (deg_u * deg_v))
    out: dict[tuple[int, ...], Fraction] = {}
    for wu, cu in u.items():
        for wv, cv in v.items():
            out[wu + wv] = out.get(wu + wv, Fraction(0)) + cu * cv
            out[wv + wu] = out.get(wv + wu, Fraction(0)) + Fraction(sign) * cu * cv
    return {w: c for w, c in out.items() if c != 0}


def _independent_subset(vectors, degree, num_letters):
    """Gaussian elimination over Q in the word basis; returns a basis list."""
    words = list(iter_product(range(num_letters), repeat=degree))
    index = {w: i for i, w in enumerate(words)}
    rows: list[list[Fraction]] = []
    basis = []
    pivots: dict[int, list[Fraction]] = {}
    for vec in vectors:
        dense = [Fraction(0)] * len(words)
        for w, c in vec.items():
            dense[index[w]] = c
        for col in sorted(pivots):
            if dense[col] != 0:
                factor = dense[col]
                dense = [x - factor * y for x, y in zip(dense, pivots[col])]
        lead = next((i for i, x in enumerate(dense) if x != 0), None)
        if lead is None:
            continue
        inv = Fraction(1) / dense[lead]
        dense = [x * inv for x in dense]
        pivots[lead] = dense
        basis.append(vec)
    return basis


def graded_free_lie_dims_oracle(num_letters: int, max_degree: int) -> list[int]:
    """Dimensions of the free graded Lie algebra on odd degree-1 generators,
    computed by spanning literal brackets inside the tensor algebra."""
    components: list[list[dict[tuple[int, ...], Fraction]]] = []
    degree_one = [
        {(i,): Fraction(1)} for i in range(num_letters)
    ]
    components.append(degree_one)
    dims = [len(degree_one)]
    for degree in range(2, max_degree + 1):
        candidates = []
        for split in range(1, degree):
            for u in components[split - 1]:
                for v in components[degree - split - 1]:
                    bracket = _tensor_bracket(u, v, split, degree - split)
                    if bracket:
                        candidates.append(bracket)
        basis = _independent_subset(candidates, degree, num_letters)
        components.append(basis)
        dims.append(len(basis))
    return dims
