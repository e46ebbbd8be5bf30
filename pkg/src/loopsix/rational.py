"""Rational homotopy of the sphere-bundle 6-manifolds via Koszul duality.

For d >= 2 the rational cohomology of M is a Koszul algebra generated in
degree 2, and the homotopy Lie algebra of M is its Koszul dual; numerically,
the loop-homology series is the reciprocal of the cohomology Hilbert series
evaluated at -t, and PBW inversion of that series yields the degree-wise
ranks of pi_*(Loop M) (x) Q.  For d = 1 this dual reading breaks down -- M is
not coformal -- and the machinery here exposes exactly how it breaks: the
naive dual series disagrees with the true loop homology first in degree 3,
and the explicit Sullivan model of M carries the cubic differential term
``dx = c^3`` that obstructs coformality.

Weight conventions: a cohomology generator in degree 2 has weight 1, and
weight w corresponds to loop-space degree w throughout, so series from this
module compare directly with the decomposition series of
:mod:`loopsix.homotopy`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Literal, Mapping, Sequence

from .errors import InputError, UnsupportedError
from .homotopy import (
    LoopFactorMultiset,
    decompose,
    loop_factors,
    loop_homology_series,
)
from .linalg import integer_primitive, nullspace, rank, rref
from .manifold import BundleData, FourManifold, SixManifoldRing, cohomology_ring
from .series import (
    GradedLieDims,
    TruncatedSeries,
    pbw_invert,
    series_reciprocal,
)

Rational = int | Fraction


class NotQuadratic(UnsupportedError):
    """The cohomology is not presented by degree-2 generators and quadratic
    relations (d = 0, or a structural failure)."""


class KoszulInconsistency(UnsupportedError):
    """The Koszul-dual series failed a consistency check."""


class DifferentialNotSquareZero(InputError):
    """A Sullivan model whose differential does not square to zero."""


# ---------------------------------------------------------------------------
# Quadratic presentations of the cohomology
# ---------------------------------------------------------------------------


def _sym2_basis(g: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(g) for j in range(i, g)]


@dataclass(frozen=True, eq=False)
class QuadraticPresentation:
    """Degree-2 generators and the quadratic relation space of H^*(M; Q).

    ``relations`` are vectors over the monomial basis of Sym^2 (pairs (i, j)
    with i <= j in lexicographic order).  ``weight_dims`` records the true
    degree-wise dimensions of the presented algebra when it is known (the
    Betti numbers, for presentations built from a manifold ring); ``d_rank``
    remembers the rank d of the base when there is one.
    """

    generators: int
    relations: tuple[tuple[Fraction, ...], ...]
    weight_dims: tuple[int, ...] | None = None
    d_rank: int | None = None

    @property
    def relation_count(self) -> int:
        return len(self.relations)


def quadratic_presentation(ring: SixManifoldRing) -> QuadraticPresentation:
    """Present H^*(M; Q) by its degree-2 part.

    ``V = H^2`` and ``R = ker(Sym^2 V -> H^4)``; requires Sym^2 V -> H^4 to
    be onto and Sym^3 V -> H^6 to hit the 1-dimensional top degree (both are
    forced by unimodularity when d >= 1).  The d = 0 rings are rejected: for
    ``ell = 0`` the degree-4 class is not a product, and for ``ell != 0`` the
    truncation relation lives in weight 4, so no quadratic presentation of
    the cohomology exists either way.
    """
    if ring.d == 0:
        raise NotQuadratic(
            "the cohomology over the 4-sphere has no quadratic presentation "
            "(the defining relation is not quadratic)"
        )
    deg2 = ring.basis_of_degree(2)
    deg4 = ring.basis_of_degree(4)
    g = len(deg2)
    sym2 = _sym2_basis(g)
    # columns: sym2 monomials; rows: H^4 coordinates
    columns = []
    for (i, j) in sym2:
        product = ring.product(deg2[i], deg2[j])
        columns.append([product.get(lbl, Fraction(0)) for lbl in deg4])
    matrix = [[columns[c][r] for c in range(len(sym2))] for r in range(len(deg4))]
    if rank(matrix) != len(deg4):
        raise NotQuadratic("Sym^2 of the degree-2 part does not surject onto H^4")
    kernel = nullspace(matrix, ncols=len(sym2))
    relations = tuple(
        tuple(Fraction(x) for x in integer_primitive(vec)) for vec in kernel
    )
    # weight-3 consistency: Sym^3 V must hit the top class
    top_hit = False
    for (i, j, k) in combinations_with_replacement(range(g), 3):
        uv = ring.product(deg2[i], deg2[j])
        w = ring.multiply(uv, {deg2[k]: Fraction(1)})
        if w.get("top", 0) != 0:
            top_hit = True
            break
    if not top_hit:
        raise NotQuadratic("Sym^3 of the degree-2 part misses the top class")
    betti = ring.betti()
    return QuadraticPresentation(
        generators=g,
        relations=relations,
        weight_dims=(betti[0], betti[1], betti[2], betti[3]),
        d_rank=ring.d,
    )


def free_presentation(generators: int) -> QuadraticPresentation:
    """The polynomial algebra on ``generators`` degree-2 classes (R empty)."""
    return QuadraticPresentation(generators=generators, relations=())


def presentation_from_relations(
    generators: int, relations: Iterable[Sequence[Rational]]
) -> QuadraticPresentation:
    """A hand-built quadratic presentation (vectors over the Sym^2 basis)."""
    expected = generators * (generators + 1) // 2
    rels = []
    for vec in relations:
        if len(vec) != expected:
            raise InputError(
                f"relation vectors need length {expected} for {generators} generators"
            )
        rels.append(tuple(Fraction(x) for x in vec))
    return QuadraticPresentation(generators=generators, relations=tuple(rels))


def quadratic_algebra_dims(p: QuadraticPresentation, cutoff: int) -> list[int]:
    """Degree-wise dimensions of ``Sym(V)/(R)`` computed by linear algebra.

    Weight-w ideal component is ``R * Sym^{w-2} V``.  Exponential in the
    cutoff for many generators; meant for small hand-built presentations and
    cross-checks.
    """
    g = p.generators
    sym2 = _sym2_basis(g)
    dims = [1]
    if cutoff >= 1:
        dims.append(g)
    for w in range(2, cutoff + 1):
        monos = list(combinations_with_replacement(range(g), w))
        index = {m: i for i, m in enumerate(monos)}
        rows = []
        for rel in p.relations:
            for lower in combinations_with_replacement(range(g), w - 2):
                row = [Fraction(0)] * len(monos)
                for (pair, coeff) in zip(sym2, rel):
                    if coeff == 0:
                        continue
                    target = tuple(sorted(lower + pair))
                    row[index[target]] += coeff
                rows.append(row)
        dims.append(len(monos) - rank(rows))
    return dims[: cutoff + 1]


def hilbert_series(p: QuadraticPresentation, cutoff: int) -> TruncatedSeries:
    """Hilbert series of the presented algebra by weight.

    For presentations built from a manifold ring this is the recorded Betti
    series ``1 + (d+1)s + (d+1)s^2 + s^3`` (the honest dimensions of
    H^*(M; Q), whether or not the quadratic algebra on (V, R) truncates by
    itself); for hand-built presentations the quadratic algebra dimensions
    are computed directly.
    """
    if p.weight_dims is not None:
        return TruncatedSeries.from_coefficients(p.weight_dims, cutoff=cutoff)
    return TruncatedSeries.from_coefficients(
        quadratic_algebra_dims(p, cutoff), cutoff=cutoff
    )


# ---------------------------------------------------------------------------
# The quadratic dual, directly
# ---------------------------------------------------------------------------


def _dual_relation_space(p: QuadraticPresentation) -> list[list[Fraction]]:
    """Basis of the orthogonal complement of the associative relation space.

    The associative presentation of the graded-commutative algebra adds the
    commutators ``e_i (x) e_j - e_j (x) e_i`` to the (symmetrized) quadratic
    relations; the dual algebra is the tensor algebra on V* modulo the
    orthogonal complement of that span inside V (x) V.
    """
    g = p.generators
    sym2 = _sym2_basis(g)
    rows: list[list[Fraction]] = []
    for i in range(g):
        for j in range(i + 1, g):
            row = [Fraction(0)] * (g * g)
            row[i * g + j] = Fraction(1)
            row[j * g + i] = Fraction(-1)
            rows.append(row)
    for rel in p.relations:
        row = [Fraction(0)] * (g * g)
        for (pair, coeff) in zip(sym2, rel):
            if coeff == 0:
                continue
            i, j = pair
            if i == j:
                row[i * g + i] += coeff
            else:
                row[i * g + j] += coeff
                row[j * g + i] += coeff
        rows.append(row)
    return nullspace(rows, ncols=g * g)


def quadratic_dual_dims(
    p: QuadraticPresentation, max_weight: int, column_budget: int = 320
) -> list[int]:
    """Dimensions of the quadratic dual algebra, degree by degree.

    Builds bases of ``T(V*)/(R_perp)`` iteratively: weight w is the quotient
    of ``A_{w-1} (x) V*`` by the image of ``A_{w-2} (x) R_perp``.  Stops
    early (returning what it has) once the working dimension exceeds
    ``column_budget``, since exact Gaussian elimination beyond desk scale is
    pointless for a consistency check.
    """
    g = p.generators
    dual_relations = _dual_relation_space(p)
    dims = [1, g]
    if max_weight < 2:
        return dims[: max_weight + 1]
    # mult[i][b] = coordinates of (basis_b * f_i) in the next weight
    prev_dim = 1
    cur_dim = g
    mult: list[list[list[Fraction]]] = [
        [[Fraction(1) if r == i else Fraction(0) for r in range(g)]]
        for i in range(g)
    ]
    for w in range(2, max_weight + 1):
        ncols = cur_dim * g
        if ncols > column_budget:
            break
        rows = []
        for b in range(prev_dim):
            for s in dual_relations:
                row = [Fraction(0)] * ncols
                for i in range(g):
                    for j in range(g):
                        c = s[i * g + j]
                        if c == 0:
                            continue
                        vec = mult[i][b]
                        for u, x in enumerate(vec):
                            if x != 0:
                                row[u * g + j] += c * x
                rows.append(row)
        if rows:
            reduced, pivots = rref(rows)
        else:
            reduced, pivots = [], []
        pivot_set = set(pivots)
        free_cols = [c for c in range(ncols) if c not in pivot_set]
        col_to_quotient = {c: q for q, c in enumerate(free_cols)}
        pivot_row = {p_: r for r, p_ in enumerate(pivots)}

        def reduce_unit(col: int) -> list[Fraction]:
            out = [Fraction(0)] * len(free_cols)
            if col in col_to_quotient:
                out[col_to_quotient[col]] = Fraction(1)
                return out
            row = reduced[pivot_row[col]]
            for q, c in enumerate(free_cols):
                out[q] = -row[c]
            return out

        new_mult = [
            [reduce_unit(u * g + j) for u in range(cur_dim)] for j in range(g)
        ]
        prev_dim, cur_dim = cur_dim, len(free_cols)
        mult = new_mult
        dims.append(cur_dim)
    return dims


def koszul_dual_series(
    p: QuadraticPresentation,
    cutoff: int,
    *,
    check: bool = True,
    check_weight: int = 6,
    column_budget: int = 320,
) -> TruncatedSeries:
    """Hilbert series of the Koszul dual: reciprocal of the Hilbert series
    at ``-s``.

    With ``check=True`` the result is validated two ways: all coefficients
    must be nonnegative, and they must match the directly computed quadratic
    dual dimensions through ``min(cutoff, check_weight)`` (subject to the
    dimension budget).  ``check=False`` returns the naive series unverified,
    which is what the d = 1 non-coformality witness needs.
    """
    hs = hilbert_series(p, cutoff)
    dual = series_reciprocal(hs.alternate())
    if not check:
        return dual
    for n in range(cutoff + 1):
        if dual[n] < 0:
            raise KoszulInconsistency(
                f"dual series coefficient at weight {n} is negative ({dual[n]}); "
                "the input algebra is not Koszul"
            )
    direct = quadratic_dual_dims(p, min(cutoff, check_weight), column_budget)
    for w, dim in enumerate(direct):
        if dual[w] != dim:
            raise KoszulInconsistency(
                f"dual dimension mismatch at weight {w}: series gives {dual[w]}, "
                f"direct computation gives {dim}; the input algebra is not Koszul"
            )
    return dual


def lie_dims(
    p: QuadraticPresentation, cutoff: int, *, force: bool = False
) -> GradedLieDims:
    """Degree-wise ranks of the homotopy Lie algebra via the Koszul dual.

    Valid for d >= 2 (the Koszul range).  For d = 1 the dual reading is
    wrong; pass ``force=True`` to run the naive inversion anyway, which
    fails with :class:`~loopsix.series.NegativeLieDimension` -- that failure
    is itself the non-coformality signal.
    """
    if p.d_rank == 1 and not force:
        raise KoszulInconsistency(
            "d = 1 cohomology is not Koszul; its naive dual series does not "
            "give homotopy ranks (pass force=True to see it fail)"
        )
    dual = koszul_dual_series(p, cutoff, check=not force)
    return pbw_invert(dual)


# ---------------------------------------------------------------------------
# Ranks read off the decomposition
# ---------------------------------------------------------------------------


def ranks_from_decomposition(
    factors: LoopFactorMultiset, cutoff: int
) -> GradedLieDims:
    """Rational homotopy ranks of Loop M from its factor multiset.

    ``S^1`` contributes degree 1; ``Loop(S^m)`` contributes degree m-1 for
    odd m, degrees m-1 and 2m-2 for even m; ``S^3{n}`` is rationally trivial.
    """
    if factors.truncated and cutoff > factors.cutoff:
        raise InputError(
            f"factor enumeration only reaches degree {factors.cutoff}, "
            f"cannot produce ranks through degree {cutoff}"
        )
    dims = [0] * cutoff
    if cutoff >= 1:
        dims[0] += factors.circles
    for m, mult in factors.sphere_loops:
        if m % 2 == 1:
            if m - 1 <= cutoff:
                dims[m - 2] += mult
        else:
            if m - 1 <= cutoff:
                dims[m - 2] += mult
            if 2 * m - 2 <= cutoff:
                dims[2 * m - 3] += mult
    return GradedLieDims(tuple(dims))


def free_graded_lie_dims(
    degrees: Iterable[int] | Mapping[int, int], cutoff: int
) -> GradedLieDims:
    """Dimensions of the free graded Lie algebra on generators of the given
    degrees: PBW inversion of the tensor-algebra series ``1/(1 - sum t^deg)``.
    """
    counts: dict[int, int] = {}
    if isinstance(degrees, Mapping):
        counts = {int(k): int(v) for k, v in degrees.items()}
    else:
        for deg in degrees:
            counts[int(deg)] = counts.get(int(deg), 0) + 1
    if any(d < 1 for d in counts):
        raise InputError("generator degrees must be >= 1")
    gen_poly = TruncatedSeries.zero(cutoff)
    for deg, count in counts.items():
        if count and deg <= cutoff:
            gen_poly = gen_poly + TruncatedSeries.monomial(deg, count, cutoff)
    tensor = series_reciprocal(TruncatedSeries.one(cutoff) - gen_poly)
    return pbw_invert(tensor)


# ---------------------------------------------------------------------------
# Sullivan models (free graded-commutative algebras with a differential)
# ---------------------------------------------------------------------------

Monomial = tuple[int, ...]
Polynomial = dict[Monomial, Fraction]


@dataclass(frozen=True, eq=False)
class SullivanModel:
    """A finitely generated Sullivan algebra.

    ``generators`` is an ordered tuple of (name, degree); the differential
    maps generator names to polynomials, a polynomial being a map from
    exponent tuples (over the generator order) to rational coefficients.
    Odd-degree generators are exterior: exponents 0 or 1.
    """

    generators: tuple[tuple[str, int], ...]
    differential: dict

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.generators)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(deg for _, deg in self.generators)

    def d_of(self, name: str) -> Polynomial:
        return self.differential.get(name, {})


def _mono_degree(mono: Monomial, degrees: Sequence[int]) -> int:
    return sum(e * d for e, d in zip(mono, degrees))


def _mono_mul(
    a: Monomial, b: Monomial, degrees: Sequence[int]
) -> tuple[Monomial, int] | None:
    """Normal-form product of two monomials with its Koszul sign, or None
    when an odd generator gets squared."""
    n = len(degrees)
    out = []
    sign_exp = 0
    odd_suffix_a = 0  # number of odd-degree slots of a strictly above current j
    odd_counts_a = [a[i] * (degrees[i] % 2) for i in range(n)]
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + odd_counts_a[i]
    for j in range(n):
        e = a[j] + b[j]
        if degrees[j] % 2 == 1 and e > 1:
            return None
        out.append(e)
        if degrees[j] % 2 == 1 and b[j]:
            sign_exp += b[j] * suffix[j + 1]
    return tuple(out), (-1) ** (sign_exp % 2)


def _poly_mul(p: Polynomial, q: Polynomial, degrees: Sequence[int]) -> Polynomial:
    out: Polynomial = {}
    for ma, ca in p.items():
        for mb, cb in q.items():
            prod = _mono_mul(ma, mb, degrees)
            if prod is None:
                continue
            mono, sign = prod
            out[mono] = out.get(mono, Fraction(0)) + sign * ca * cb
    return {m: c for m, c in out.items() if c != 0}


def _d_monomial(mono: Monomial, model: SullivanModel) -> Polynomial:
    degrees = model.degrees
    names = model.names
    n = len(degrees)
    out: Polynomial = {}
    prefix_odd = 0
    for i in range(n):
        e = mono[i]
        if e:
            dg = model.d_of(names[i])
            if dg:
                lowered = list(mono)
                lowered[i] = e - 1
                suffix_deg = sum(mono[j] * degrees[j] for j in range(i + 1, n))
                sign = (-1) ** ((prefix_odd + (degrees[i] + 1) * suffix_deg) % 2)
                base = _poly_mul({tuple(lowered): Fraction(e)}, dg, degrees)
                for m, c in base.items():
                    out[m] = out.get(m, Fraction(0)) + sign * c
        prefix_odd += e * (degrees[i] % 2)
    return {m: c for m, c in out.items() if c != 0}


def _d_poly(p: Polynomial, model: SullivanModel) -> Polynomial:
    out: Polynomial = {}
    for mono, coeff in p.items():
        for m, c in _d_monomial(mono, model).items():
            out[m] = out.get(m, Fraction(0)) + coeff * c
    return {m: c for m, c in out.items() if c != 0}


def make_sullivan_model(
    generators: Sequence[tuple[str, int]],
    differential: Mapping[str, Mapping[Monomial, Rational]],
) -> SullivanModel:
    """Validate and build a model; the differential must raise degree by 1."""
    gens = tuple((str(n), int(d)) for n, d in generators)
    names = [n for n, _ in gens]
    if len(set(names)) != len(names):
        raise InputError("generator names must be distinct")
    degrees = [d for _, d in gens]
    if any(d < 1 for d in degrees):
        raise InputError("generator degrees must be >= 1")
    diff: dict[str, Polynomial] = {}
    for name, poly in differential.items():
        if name not in names:
            raise InputError(f"differential given for unknown generator {name!r}")
        target = degrees[names.index(name)] + 1
        clean: Polynomial = {}
        for mono, coeff in poly.items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != len(gens):
                raise InputError("monomial exponent tuple has the wrong length")
            if _mono_degree(mono, degrees) != target:
                raise InputError(
                    f"d({name}) must be homogeneous of degree {target}"
                )
            c = Fraction(coeff)
            if c:
                clean[mono] = clean.get(mono, Fraction(0)) + c
        if clean:
            diff[name] = clean
    return SullivanModel(generators=gens, differential=diff)


def check_square_zero(model: SullivanModel) -> None:
    for name, _ in model.generators:
        dd = _d_poly(model.d_of(name), model)
        if dd:
            raise DifferentialNotSquareZero(
                f"d(d({name})) != 0 (got {len(dd)} surviving monomials)"
            )


def monomial_basis(model: SullivanModel, degree: int) -> list[Monomial]:
    """All normal-form monomials of one degree."""
    degrees = model.degrees
    n = len(degrees)
    out: list[Monomial] = []

    def extend(i: int, remaining: int, current: list[int]) -> None:
        if i == n:
            if remaining == 0:
                out.append(tuple(current))
            return
        max_e = 1 if degrees[i] % 2 == 1 else remaining // degrees[i]
        for e in range(min(max_e, remaining // degrees[i]) + 1):
            current.append(e)
            extend(i + 1, remaining - e * degrees[i], current)
            current.pop()

    extend(0, degree, [])
    return out


def cdga_cohomology(model: SullivanModel, cutoff: int) -> list[int]:
    """Cohomology dimensions of the model in degrees 0..cutoff.

    Checks ``d o d = 0`` on generators first; then straightforward
    rank-nullity on the monomial bases degree by degree.
    """
    check_square_zero(model)
    bases = [monomial_basis(model, q) for q in range(cutoff + 2)]
    ranks = []
    for q in range(cutoff + 1):
        index = {m: i for i, m in enumerate(bases[q + 1])}
        rows = []
        for mono in bases[q]:
            image = _d_monomial(mono, model)
            row = [Fraction(0)] * len(bases[q + 1])
            for m, c in image.items():
                row[index[m]] = c
            rows.append(row)
        ranks.append(rank(rows) if rows and bases[q + 1] else 0)
    dims = []
    for q in range(cutoff + 1):
        boundaries = ranks[q - 1] if q >= 1 else 0
        cycles = len(bases[q]) - ranks[q]
        dims.append(cycles - boundaries)
    return dims


def model_to_json(model: SullivanModel) -> dict:
    """Schema-stable JSON form of a Sullivan model."""
    return {
        "generators": [
            {"name": name, "degree": degree} for name, degree in model.generators
        ],
        "differential": {
            name: [
                {
                    "coefficient": str(coeff),
                    "exponents": {
                        model.names[i]: e for i, e in enumerate(mono) if e
                    },
                }
                for mono, coeff in sorted(poly.items())
            ]
            for name, poly in sorted(model.differential.items())
        },
    }


def model_from_json(data: Mapping) -> SullivanModel:
    gens = [(g["name"], int(g["degree"])) for g in data["generators"]]
    names = [n for n, _ in gens]
    diff: dict[str, dict[Monomial, Fraction]] = {}
    for name, terms in data.get("differential", {}).items():
        poly: dict[Monomial, Fraction] = {}
        for term in terms:
            mono = [0] * len(gens)
            for gname, e in term["exponents"].items():
                mono[names.index(gname)] = int(e)
            poly[tuple(mono)] = poly.get(tuple(mono), Fraction(0)) + Fraction(
                term["coefficient"]
            )
        diff[name] = poly
    return make_sullivan_model(gens, diff)


def s2_model() -> SullivanModel:
    """Minimal model of the 2-sphere: ``Lambda(a2, b3)`` with ``db = a^2``."""
    return make_sullivan_model(
        [("a", 2), ("b", 3)], {"b": {(2, 0): 1}}
    )


def d1_model(k: Rational = 1) -> SullivanModel:
    """Minimal model of M over a rank-1 base: ``Lambda(c2, a2, b3, x5)``
    with ``db = a^2 + k c^2`` and ``dx = c^3``.

    The cubic term ``dx = c^3`` is the non-coformality witness; the
    cohomology is independent of ``k``.  For a concrete bundle, completing
    the square in the ring identifies ``k`` with ``-p1/4``.
    """
    # generator order: c, a, b, x
    return make_sullivan_model(
        [("c", 2), ("a", 2), ("b", 3), ("x", 5)],
        {
            "b": {(0, 2, 0, 0): 1, (2, 0, 0, 0): Fraction(k)},
            "x": {(3, 0, 0, 0): 1},
        },
    )


def d1_model_parameter(b: BundleData) -> Fraction:
    """The quadratic parameter of the d = 1 model determined by the bundle."""
    return Fraction(-b.p1, 4)


# ---------------------------------------------------------------------------
# Coformality and ellipticity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoformalityReport:
    status: Literal["coformal", "not_coformal"]
    witness: str
    details: dict


def coformality_check(
    N: FourManifold, b: BundleData, cutoff: int = 8
) -> CoformalityReport:
    """Decide coformality of M and produce a checkable witness.

    d >= 2: coformal; the witness is the agreement of the Koszul-dual ranks
    with the decomposition ranks through ``cutoff``.  d = 1: not coformal;
    the witness is the cubic differential ``dx = c^3`` in the explicit
    Sullivan model together with the first divergence (degree 3) between the
    naive dual series and the actual loop homology.
    """
    if N.d < 1:
        raise InputError("coformality_check needs d >= 1")
    presentation = quadratic_presentation(cohomology_ring(N, b))
    if N.d >= 2:
        dual_ranks = lie_dims(presentation, cutoff)
        decomposition_ranks = ranks_from_decomposition(
            loop_factors(N, b, cutoff), cutoff
        )
        if dual_ranks != decomposition_ranks:
            raise KoszulInconsistency(
                "Koszul-dual ranks disagree with decomposition ranks: "
                f"{dual_ranks} vs {decomposition_ranks}"
            )
        return CoformalityReport(
            status="coformal",
            witness=(
                f"dual and decomposition ranks agree through degree {cutoff}: "
                f"{dual_ranks}"
            ),
            details={
                "ranks": list(dual_ranks.dims),
                "checked_through_degree": cutoff,
            },
        )
    naive = koszul_dual_series(presentation, cutoff, check=False)
    actual = loop_homology_series(decompose(N, b), cutoff)
    mismatch_degree = next(
        (n for n in range(cutoff + 1) if naive[n] != actual[n]), None
    )
    model = d1_model(d1_model_parameter(b))
    betti = cdga_cohomology(model, 6)
    return CoformalityReport(
        status="not_coformal",
        witness="dx=c^3",
        details={
            "model_cubic_term": "dx=c^3",
            "model_betti": betti,
            "naive_dual_series": [str(naive[n]) for n in range(cutoff + 1)],
            "loop_homology_series": [str(actual[n]) for n in range(cutoff + 1)],
            "first_mismatch_degree": mismatch_degree,
        },
    )


def is_rationally_elliptic(N: FourManifold, b: BundleData) -> bool:
    """Total rational homotopy is finite-dimensional exactly when d <= 2
    (for d = 0 both rational types, CP^3 and S^2 x S^4, are elliptic)."""
    return N.d <= 2
