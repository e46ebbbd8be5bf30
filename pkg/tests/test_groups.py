import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loopsix.groups import (
    CoverageViolation,
    FGAbelianGroup,
    ParseError,
    TableOutOfRange,
    UnsupportedDegree,
    load_table,
    pi_manifold,
    pi_sphere,
)
from loopsix.homotopy import loop_factors
from loopsix.manifold import bundle_from_classes, new_four_manifold

from conftest import random_pair


@pytest.fixture(scope="module")
def table():
    return load_table()


def factors_for(form, w2, p1, cutoff=10):
    N = new_four_manifold(form)
    return loop_factors(N, bundle_from_classes(N, w2, p1), cutoff)


class TestFGAbelianGroup:
    def test_primary_decomposition_is_canonical(self):
        assert FGAbelianGroup.from_orders(12, 2) == FGAbelianGroup.from_orders(
            4, 3, 2
        )
        assert FGAbelianGroup.from_orders(2, 4) != FGAbelianGroup.from_orders(8)

    def test_invariant_factors(self):
        assert FGAbelianGroup.from_orders(4, 3, 2).invariant_factors() == [12, 2]
        assert FGAbelianGroup.from_orders(3, 5).invariant_factors() == [15]

    def test_text(self):
        assert FGAbelianGroup.from_orders(12, 2).text() == "Z/12 + Z/2"
        assert FGAbelianGroup.free(2).text() == "Z^2"
        assert FGAbelianGroup.free(1).text() == "Z"
        assert FGAbelianGroup.trivial().text() == "0"
        assert FGAbelianGroup.from_orders(24, free_rank=1).text() == "Z + Z/24"

    def test_order(self):
        assert FGAbelianGroup.from_orders(15).order() == 15
        assert FGAbelianGroup.free(1).order() is None

    @given(
        st.lists(st.integers(min_value=0, max_value=24), max_size=4),
        st.lists(st.integers(min_value=0, max_value=24), max_size=4),
        st.lists(st.integers(min_value=0, max_value=24), max_size=4),
    )
    @settings(max_examples=50)
    def test_direct_sum_commutative_associative(self, a, b, c):
        A = FGAbelianGroup.from_orders(*a)
        B = FGAbelianGroup.from_orders(*b)
        C = FGAbelianGroup.from_orders(*c)
        assert A.direct_sum(B) == B.direct_sum(A)
        assert A.direct_sum(B).direct_sum(C) == A.direct_sum(B.direct_sum(C))


class TestSphereTable:
    def test_shipped_values(self, table):
        assert pi_sphere(table, 2, 3) == FGAbelianGroup.free(1)
        assert pi_sphere(table, 4, 5) == FGAbelianGroup.from_orders(2)
        assert pi_sphere(table, 2, 6) == FGAbelianGroup.from_orders(12)
        assert pi_sphere(table, 6, 11) == FGAbelianGroup.free(1)

    def test_forced_values_without_lookup(self, table):
        assert pi_sphere(table, 5, 4) == FGAbelianGroup.trivial()
        assert pi_sphere(table, 7, 7) == FGAbelianGroup.free(1)

    def test_stable_consistency_along_a_stem(self, table):
        # 3-stem: Z/12 at n=3, Z x Z/12 at n=4, Z/24 from n=5 on
        assert pi_sphere(table, 3, 6) == FGAbelianGroup.from_orders(12)
        assert pi_sphere(table, 4, 7) == FGAbelianGroup.from_orders(12, free_rank=1)
        for n in range(5, 13):
            assert pi_sphere(table, n, n + 3) == FGAbelianGroup.from_orders(24)

    def test_out_of_range(self, table):
        with pytest.raises(TableOutOfRange):
            pi_sphere(table, 2, 16)

    def test_hopf_fibration_identities(self, table):
        # S^1 -> S^3 -> S^2 gives pi_k(S^2) = pi_k(S^3) for k >= 4
        for k in range(4, 16):
            assert pi_sphere(table, 2, k) == pi_sphere(table, 3, k)
        # S^3 -> S^7 -> S^4 splits: pi_k(S^4) = pi_k(S^7) + pi_{k-1}(S^3)
        for k in range(4, 16):
            assert pi_sphere(table, 4, k) == pi_sphere(table, 7, k).direct_sum(
                pi_sphere(table, 3, k - 1)
            )
        # S^7 -> S^15 -> S^8 splits likewise
        for k in range(8, 16):
            assert pi_sphere(table, 8, k) == pi_sphere(table, 15, k).direct_sum(
                pi_sphere(table, 7, k - 1)
            )

    def test_stable_range_is_constant(self, table):
        stable = {1: [2], 2: [2], 3: [24], 4: [], 5: [], 6: [2]}
        for stem, orders in stable.items():
            expected = FGAbelianGroup.from_orders(*orders)
            for n in range(stem + 2, 16 - stem):
                assert pi_sphere(table, n, n + stem) == expected, (stem, n)

    def test_parse_error(self, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("2 3 one\n")
        with pytest.raises(ParseError):
            load_table(bad)
        bad.write_text("2 3\n")
        with pytest.raises(ParseError):
            load_table(bad)

    def test_coverage_violations(self, tmp_path):
        below = tmp_path / "below.txt"
        below.write_text("5 4 0 2\n")
        with pytest.raises(CoverageViolation):
            load_table(below)
        diagonal = tmp_path / "diag.txt"
        diagonal.write_text("3 3 0 7\n")
        with pytest.raises(CoverageViolation):
            load_table(diagonal)

    def test_custom_table_overrides(self, tmp_path):
        custom = tmp_path / "table.txt"
        custom.write_text("2 3 0 5\n5 3 0\n")
        t = load_table(custom)
        assert pi_sphere(t, 2, 3) == FGAbelianGroup.from_orders(5)


class TestPiManifold:
    def test_d1_pinned_groups(self, table):
        factors = factors_for([[1]], [1], 5)
        expected = {
            2: FGAbelianGroup.free(2),
            3: FGAbelianGroup.free(1),
            4: FGAbelianGroup.from_orders(2),
            5: FGAbelianGroup.from_orders(2, free_rank=1),
            6: FGAbelianGroup.from_orders(12, 2),
            7: FGAbelianGroup.from_orders(2, 2),
        }
        for k, group in expected.items():
            assert pi_manifold(factors, table, k) == group

    def test_pi2_is_hurewicz_rank(self, table):
        rng = random.Random(31)
        for d in range(1, 7):
            N, b = random_pair(rng, d)
            factors = loop_factors(N, b, 4)
            assert pi_manifold(factors, table, 2) == FGAbelianGroup.free(d + 1)

    def test_d0_torsion(self, table):
        factors = factors_for([], [], 60)
        assert pi_manifold(factors, table, 2) == FGAbelianGroup.free(1)
        pi3 = pi_manifold(factors, table, 3)
        assert pi3 == FGAbelianGroup.from_orders(15)
        assert pi3.order() == 15

    def test_d0_power_of_two_path(self, table):
        factors = factors_for([], [], 32)
        assert pi_manifold(factors, table, 3) == FGAbelianGroup.from_orders(8)

    def test_d0_higher_degrees_unsupported(self, table):
        factors = factors_for([], [], 60)
        with pytest.raises(UnsupportedDegree):
            pi_manifold(factors, table, 4)

    def test_truncation_guard(self, table):
        factors = factors_for([[1, 0, 0], [0, 1, 0], [0, 0, -1]], [1, 0, 0], 9, cutoff=3)
        with pytest.raises(TableOutOfRange):
            pi_manifold(factors, table, 6)

    def test_degree_below_two_rejected(self, table):
        factors = factors_for([[1]], [1], 5)
        with pytest.raises(Exception):
            pi_manifold(factors, table, 1)
