"""Core path machinery: validation, enumeration, sampling, runs,
excursions, scaling."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import pav
from pav.errors import (
    BadStep,
    EmptySet,
    NegativeExcursion,
    NotBalanced,
    OddLength,
    TooLarge,
)
from pav.rng import substream

# Catalan numbers from the convolution recurrence, independent of the library.
CATALAN = [1]
for _n in range(16):
    CATALAN.append(sum(CATALAN[i] * CATALAN[_n - i] for i in range(_n + 1)))


def random_path(n, seed):
    return pav.sample_uniform(n, substream(seed))


class TestValidate:
    def test_smallest(self):
        p = pav.validate("UD")
        assert p.n == 1
        assert list(p.heights) == [0, 1, 0]

    def test_uudd(self):
        assert list(pav.validate("UUDD").heights) == [0, 1, 2, 1, 0]

    def test_dips_below_zero(self):
        with pytest.raises(NegativeExcursion):
            pav.validate("UDDU")

    def test_unbalanced(self):
        with pytest.raises(NotBalanced):
            pav.validate("UDUU")

    def test_odd_length(self):
        with pytest.raises(OddLength):
            pav.validate("UDU")

    def test_bad_char(self):
        with pytest.raises(BadStep):
            pav.validate("UX")

    def test_bad_step_value(self):
        with pytest.raises(BadStep):
            pav.validate([1, 2, -1, -1])

    def test_steps_from_numbers(self):
        assert pav.validate([1, 1, -1, -1]) == pav.from_text("UUDD")

    def test_empty_path_is_valid(self):
        assert pav.validate("").n == 0

    def test_immutability(self):
        p = pav.from_text("UUDD")
        with pytest.raises(ValueError):
            p.steps[0] = -1


class TestEnumerate:
    def test_n0(self):
        assert [p.n for p in pav.enumerate_all(0)] == [0]

    def test_counts_match_catalan(self):
        for n in range(9):
            paths = list(pav.enumerate_all(n))
            assert len(paths) == CATALAN[n]
            assert len(set(paths)) == CATALAN[n]

    def test_lexicographic_order_u_before_d(self):
        texts = [p.to_text() for p in pav.enumerate_all(3)]
        assert texts[0] == "UUUDDD"
        assert texts[-1] == "UDUDUD"
        key = [t.replace("U", "0").replace("D", "1") for t in texts]
        assert key == sorted(key)

    def test_all_valid(self):
        for p in pav.enumerate_all(6):
            pav.validate(p.steps)

    def test_guard(self):
        with pytest.raises(TooLarge):
            next(pav.enumerate_all(17))


class TestSampleUniform:
    def test_n1_only_path(self):
        for seed in range(5):
            assert pav.sample_uniform(1, seed).to_text() == "UD"

    def test_deterministic(self):
        a = pav.sample_uniform(50, 1234)
        b = pav.sample_uniform(50, 1234)
        assert a == b

    def test_distinct_seeds_differ(self):
        assert pav.sample_uniform(200, 1) != pav.sample_uniform(200, 2)

    def test_validity_bulk(self):
        rng = substream(3)
        for _ in range(200):
            p = pav.sample_uniform(int(rng.integers(1, 80)), rng)
            pav.validate(p.steps)

    def test_n2_frequency(self):
        rng = substream(99)
        hits = sum(pav.sample_uniform(2, rng).to_text() == "UUDD" for _ in range(10_000))
        assert abs(hits / 10_000 - 0.5) < 0.02

    def test_requires_positive_n(self):
        with pytest.raises(ValueError):
            pav.sample_uniform(0, 1)


FIG5_HEIGHTS = [0, 1, 0, 1, 2, 3, 4, 3, 2, 3, 4, 5, 6, 5, 4, 5, 4, 3, 2, 1, 0]


def fig5_path():
    return pav.validate(np.diff(FIG5_HEIGHTS))


class TestRuns:
    def test_20_step_example(self):
        rd = pav.runs(fig5_path())
        assert list(rd.a) == [1, 4, 4, 1]
        assert list(rd.d) == [1, 2, 2, 5]
        assert list(rd.A) == [1, 5, 9, 10]
        assert list(rd.D) == [1, 3, 5, 10]

    def test_single_run(self):
        rd = pav.runs(pav.from_text("UUUDDD"))
        assert rd.m == 1
        assert list(rd.A) == [3] and list(rd.D) == [3]
        assert rd.set_D().size == 0

    def test_sawtooth(self):
        rd = pav.runs(pav.from_text("UDUDUD"))
        assert list(rd.A) == [1, 2, 3]
        assert list(rd.D) == [1, 2, 3]
        assert list(rd.y) == [0, 0, 0]

    def test_complements(self):
        rd = pav.runs(fig5_path())
        assert list(rd.complement_A()) == [1, 3, 4, 5, 7, 8, 9]
        assert list(rd.complement_D()) == [2, 4, 6, 7, 8, 9, 10]

    def test_empty_path_rejected(self):
        with pytest.raises(EmptySet):
            pav.runs(pav.validate(""))

    @given(st.integers(1, 60), st.integers(0, 10_000))
    @settings(max_examples=60, deadline=None)
    def test_reconstruction_and_height_identity(self, n, seed):
        p = random_path(n, seed)
        rd = pav.runs(p)
        assert np.array_equal(rd.reconstruct_steps(), p.steps)
        assert np.array_equal(rd.y, p.heights[rd.A + rd.D])
        assert rd.A[-1] == rd.D[-1] == n
        assert np.all(rd.A >= rd.D)


class TestExcursions:
    def test_20_step_caption_values(self):
        et = pav.excursions(pav.from_text("UUUDUUDUUUDDUDDDDUDD"))
        assert (et.v[5], et.h[5], et.l[5]) == (8, 4, 8)

    def test_hand_evaluation(self):
        et = pav.excursions(pav.from_text("UUDUDD"))
        assert list(zip(et.v, et.h, et.l)) == [(1, 1, 6), (2, 2, 2), (4, 2, 2)]

    def test_sawtooth_all_trivial(self):
        et = pav.excursions(pav.from_text("UDUDUD"))
        assert np.all(et.l == 2) and np.all(et.h == 1)

    @given(st.integers(1, 50), st.integers(0, 10_000))
    @settings(max_examples=60, deadline=None)
    def test_defining_conditions(self, n, seed):
        p = random_path(n, seed)
        h = p.heights
        et = pav.excursions(p)
        start, end = et.intervals()
        assert np.array_equal(h[start], et.h - 1)
        assert np.array_equal(h[end], et.h - 1)
        for i in range(et.n):  # interior stays at or above the height
            seg = h[start[i] + 1 : end[i]]
            assert np.all(seg >= et.h[i])
            assert h[start[i] + 1] == et.h[i] and h[end[i] - 1] == et.h[i]

    @given(st.integers(1, 40), st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_laminar_and_total_length(self, n, seed):
        p = random_path(n, seed)
        et = pav.excursions(p)
        start, end = et.intervals()
        depth1 = et.h == 1
        assert int(et.l[depth1].sum()) == 2 * n
        for i in range(et.n):
            for j in range(i + 1, et.n):
                nested = start[i] < start[j] and end[j] <= end[i]
                disjoint = start[j] >= end[i]
                assert nested or disjoint


class TestMaxHeightAndScaling:
    def test_examples(self):
        assert pav.max_height(pav.from_text("UUUDDD")) == 3
        assert pav.max_height(pav.from_text("UDUDUD")) == 1
        assert pav.max_height(fig5_path()) == 6

    def test_scaled_knots_smallest(self):
        f = pav.scaled_path(pav.from_text("UD"))
        assert list(f.t_num) == [0, 1, 2] and f.t_den == 2
        assert f.y[1] == 1 / np.sqrt(2)
        assert f.y[0] == f.y[2] == 0.0

    def test_scaled_peak(self):
        f = pav.scaled_path(pav.from_text("UUDD"))
        assert f(0.5) == 1.0

    @given(st.integers(1, 40), st.integers(0, 10_000))
    @settings(max_examples=30, deadline=None)
    def test_boundary_zeros(self, n, seed):
        f = pav.scaled_path(random_path(n, seed))
        assert f(0.0) == 0.0 and f(1.0) == 0.0
