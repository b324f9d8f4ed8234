"""Excursion bijection to 231-avoiders: formula values, roundtrips,
order structure, tree formula, pathwise identities."""

from itertools import permutations

import numpy as np
import pytest

import pav
from pav import bij231, trees
from pav.errors import IndexOutOfRange, Not231Avoiding
from pav.perms import (
    Permutation,
    contains_pattern,
    inversions,
    max_deficit,
)
from pav.rng import substream

P231 = Permutation([2, 3, 1])


class TestForward:
    def test_caption_value(self):
        sigma = bij231.forward(pav.from_text("UUUDUUDUUUDDUDDDDUDD"))
        assert sigma(6) == 6

    def test_hand_example(self):
        assert bij231.forward(pav.from_text("UUDUDD")) == Permutation([3, 1, 2])

    def test_sawtooth_identity(self):
        for n in (1, 4, 9):
            assert bij231.forward(pav.from_text("UD" * n)) == Permutation.identity(n)

    def test_single_run_reversal_shape(self):
        assert bij231.forward(pav.from_text("UUUDDD")) == Permutation([3, 2, 1])

    def test_images_avoid_231_exhaustive(self):
        for n in range(1, 7):
            for p in pav.enumerate_all(n):
                assert not contains_pattern(bij231.forward(p), P231)

    def test_injective_onto_class_exhaustive(self):
        for n in range(1, 7):
            images = {bij231.forward(p) for p in pav.enumerate_all(n)}
            assert len(images) == pav.catalan(n)


class TestInverse:
    def test_examples(self):
        assert bij231.inverse(Permutation([3, 1, 2])) == pav.from_text("UUDUDD")
        assert bij231.inverse(Permutation.identity(3)) == pav.from_text("UDUDUD")
        assert bij231.inverse(Permutation([3, 2, 1])) == pav.from_text("UUUDDD")

    def test_rejects_non_avoider(self):
        with pytest.raises(Not231Avoiding):
            bij231.inverse(Permutation([2, 3, 1]))

    def test_roundtrips_exhaustive(self):
        for n in range(1, 7):
            for p in pav.enumerate_all(n):
                assert bij231.inverse(bij231.forward(p)) == p
            for images in permutations(range(1, n + 1)):
                perm = Permutation(images)
                if contains_pattern(perm, P231):
                    continue
                assert bij231.forward(bij231.inverse(perm)) == perm

    def test_roundtrip_random_large(self):
        rng = substream(8)
        for _ in range(25):
            p = pav.sample_uniform(1000, rng)
            assert bij231.inverse(bij231.forward(p)) == p

    def test_peak_reconstruction_agrees(self):
        rng = substream(12)
        for _ in range(100):
            p = pav.sample_uniform(int(rng.integers(1, 200)), rng)
            sigma = bij231.forward(p)
            assert bij231.inverse_via_peaks(sigma) == bij231.inverse(sigma) == p

    def test_peak_reconstruction_rejects(self):
        for n in range(1, 7):
            for images in permutations(range(1, n + 1)):
                perm = Permutation(images)
                bad = contains_pattern(perm, P231)
                try:
                    bij231.inverse_via_peaks(perm)
                    assert not bad
                except Not231Avoiding:
                    assert bad


class TestTreeFormula:
    def test_hand_tree(self):
        t = trees.from_contour(pav.from_text("UUDUDD"))
        assert bij231.tree_formula(t, 1) == 3

    def test_leaf_fixed_point(self):
        # a depth-1 leaf contributes size 1 and height 1
        t = trees.from_contour(pav.from_text("UDUD"))
        assert bij231.tree_formula(t, 1) == 1

    def test_matches_forward_everywhere(self):
        rng = substream(44)
        for _ in range(20):
            p = pav.sample_uniform(int(rng.integers(1, 120)), rng)
            t = trees.from_contour(p)
            sigma = bij231.forward(p)
            for i in range(1, p.n + 1):
                assert bij231.tree_formula(t, i) == sigma(i)

    def test_range_check(self):
        t = trees.from_contour(pav.from_text("UUDD"))
        with pytest.raises(IndexOutOfRange):
            bij231.tree_formula(t, 3)
        with pytest.raises(IndexOutOfRange):
            bij231.tree_formula(t, 0)


class TestOrderStructure:
    def test_examples(self):
        assert bij231.check_order_structure(pav.from_text("UUDUDD"))
        assert bij231.check_order_structure(pav.from_text("UD"))

    def test_exhaustive(self):
        for n in range(1, 8):
            assert all(bij231.check_order_structure(p) for p in pav.enumerate_all(n))

    def test_random(self):
        rng = substream(17)
        assert all(
            bij231.check_order_structure(pav.sample_uniform(int(rng.integers(1, 400)), rng))
            for _ in range(50)
        )


class TestPathwiseIdentities:
    def identities_hold(self, p):
        sigma = bij231.forward(p)
        t = trees.from_contour(p)
        st = trees.stats(t)
        n = p.n
        # max height = 1 + max deficit
        assert pav.max_height(p) == 1 + max_deficit(sigma)
        # i - sigma(i) = height - fringe size, per vertex
        lhs = np.arange(1, n + 1) - sigma.images
        assert np.array_equal(lhs, st.heights[1:] - st.fringe_sizes[1:])
        # inversions = path length - |t| + 1
        assert inversions(sigma) == st.path_length - (n + 1) + 1

    def test_exhaustive(self):
        for n in range(1, 7):
            for p in pav.enumerate_all(n):
                self.identities_hold(p)

    def test_random(self):
        rng = substream(23)
        for _ in range(50):
            self.identities_hold(pav.sample_uniform(int(rng.integers(1, 500)), rng))
