"""Ordered trees, contour duality, fringe statistics, and the exact
expectation formulas."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import pav
from pav import trees
from pav.errors import DomainError, RangeError
from pav.rng import substream


def random_tree(n, seed):
    return trees.from_contour(pav.sample_uniform(n, substream(seed)))


class TestContour:
    def test_single_edge(self):
        t = trees.from_contour(pav.from_text("UD"))
        assert t.size == 2 and t.children() == [[1], []]

    def test_hand_tree(self):
        t = trees.from_contour(pav.from_text("UUDUDD"))
        assert t.children() == [[1], [2, 3], [], []]

    def test_nine_vertex_example(self):
        t = trees.from_contour(pav.from_text("UDUUDUUDDUDDUUDD"))
        kids = t.children()
        assert kids[0] == [1, 2, 7]
        assert kids[2] == [3, 4, 6]
        assert kids[4] == [5]
        assert kids[7] == [8]

    def test_roundtrip_exhaustive(self):
        for n in range(0, 9):
            for p in pav.enumerate_all(n):
                assert trees.to_contour(trees.from_contour(p)) == p

    def test_roundtrip_random(self):
        rng = substream(3)
        for _ in range(300):
            p = pav.sample_uniform(int(rng.integers(1, 150)), rng)
            t = trees.from_contour(p)
            assert trees.to_contour(t) == p
            # tree -> tree the other way round as well
            assert trees.from_contour(trees.to_contour(t)) == t

    def test_heights_match_path(self):
        p = pav.sample_uniform(500, 9)
        t = trees.from_contour(p)
        et = pav.excursions(p)
        assert np.array_equal(t.heights[1:], et.h)

    def test_preorder_validation(self):
        with pytest.raises(ValueError):
            trees.OrderedTree([-1, 0, 0, 1])  # v3 attaches off the rightmost path
        trees.OrderedTree([-1, 0, 1, 0])  # valid: path then sibling


class TestStats:
    def test_single_vertex(self):
        t = trees.OrderedTree([-1])
        st_ = trees.stats(t)
        assert st_.path_length == 0
        assert st_.xi == {1: 1}

    def test_hand_tree(self):
        st_ = trees.stats(trees.from_contour(pav.from_text("UUDUDD")))
        assert list(st_.heights) == [0, 1, 2, 2]
        assert st_.path_length == 5
        assert st_.xi == {1: 2, 3: 1, 4: 1}

    def test_chain(self):
        st_ = trees.stats(trees.from_contour(pav.from_text("UUUDDD")))
        assert st_.path_length == 6
        assert st_.xi == {1: 1, 2: 1, 3: 1, 4: 1}

    @given(st.integers(1, 60), st.integers(0, 10_000))
    @settings(max_examples=50, deadline=None)
    def test_weighted_size_identity(self, n, seed):
        st_ = trees.stats(random_tree(n, seed))
        total = sum(k * c for k, c in st_.xi.items())
        assert total == int(st_.fringe_sizes.sum())

    def test_hat_xi(self):
        t = trees.from_contour(pav.from_text("UUDUDD"))
        assert trees.hat_xi(t, 1) == 3  # every non-root vertex
        assert trees.hat_xi(t, 2) == 1
        assert trees.hat_xi(t, 4) == 0  # k = |t| counts nothing proper
        with pytest.raises(RangeError):
            trees.hat_xi(t, 0)


class TestCatalan:
    def test_values(self):
        assert [trees.catalan(n) for n in range(9)] == [1, 1, 2, 5, 14, 42, 132, 429, 1430]

    def test_recurrence(self):
        cat = [1]
        for n in range(40):
            cat.append(sum(cat[i] * cat[n - i] for i in range(n + 1)))
        assert all(trees.catalan(n) == cat[n] for n in range(41))

    def test_negative(self):
        with pytest.raises(RangeError):
            trees.catalan(-1)


def enumeration_mean_xi(n, k):
    """Oracle: exact mean of xi_k over all trees with n+1 vertices."""
    total = 0
    count = 0
    for p in pav.enumerate_all(n):
        st_ = trees.stats(trees.from_contour(p))
        total += st_.xi.get(k, 0)
        count += 1
    return Fraction(total, count)


class TestExpectedXi:
    def test_spec_values_n2(self):
        assert trees.expected_xi(2, 1) == Fraction(3, 2)
        assert trees.expected_xi(2, 2) == Fraction(1, 2)
        assert trees.expected_xi(2, 3) == Fraction(1)

    def test_against_enumeration(self):
        for n in range(0, 7):
            for k in range(1, n + 2):
                assert trees.expected_xi(n, k) == enumeration_mean_xi(n, k), (n, k)

    def test_whole_tree_always_one(self):
        for n in (0, 1, 5, 30):
            assert trees.expected_xi(n, n + 1) == 1

    def test_range(self):
        with pytest.raises(RangeError):
            trees.expected_xi(4, 0)
        with pytest.raises(RangeError):
            trees.expected_xi(4, 6)


class TestExpectedHatXi:
    def test_spec_values_n2(self):
        assert trees.expected_hat_xi(2, 1) == 2
        assert trees.expected_hat_xi(2, 2) == Fraction(1, 2)

    def test_equals_sum_of_xi(self):
        for n in (1, 2, 5, 9, 23, 60):
            for k in sorted({1, 2, 3, n // 2 + 1, n} & set(range(1, n + 1))):
                direct = sum(
                    (trees.expected_xi(n, j) for j in range(k, n + 1)), Fraction(0)
                )
                assert trees.expected_hat_xi(n, k) == direct, (n, k)

    def test_against_enumeration_n8(self):
        total = 0
        count = 0
        for p in pav.enumerate_all(8):
            total += trees.hat_xi(trees.from_contour(p), 3)
            count += 1
        assert trees.expected_hat_xi(8, 3) == Fraction(total, count)

    def test_k_n_plus_1_is_zero(self):
        assert trees.expected_hat_xi(7, 8) == 0

    def test_float_version_close(self):
        for n, k in ((100, 10), (1000, 31), (2000, 500)):
            exact = float(trees.expected_hat_xi(n, k))
            approx = trees.expected_hat_xi_float(n, k)
            assert abs(approx - exact) <= 1e-10 * exact


class TestSubtreeSizeLimit:
    def test_values(self):
        assert trees.subtree_size_limit(1.0, 0.5) == pytest.approx(1 / math.sqrt(math.pi))
        assert trees.subtree_size_limit(0.5, 1.0) == pytest.approx(1 / math.sqrt(math.pi))
        assert trees.subtree_size_limit(1.0, 1.0) == 0.0

    def test_domain(self):
        with pytest.raises(DomainError):
            trees.subtree_size_limit(2.0, 1.0)
        with pytest.raises(DomainError):
            trees.subtree_size_limit(-1.0, 0.5)
        with pytest.raises(DomainError):
            trees.subtree_size_limit(1.0, 1.5)
        with pytest.raises(DomainError):
            trees.subtree_size_limit(1.0, 0.0)
