"""Piecewise-linear functions on [0,1] with exact rational knot abscissae.

Knot positions are stored as integer numerators over a single shared
denominator, so knots coming from different grids (x/(2n) for scaled
paths, a/n for exceedance interpolations) never collide or drift when
two functions are compared: the union grid is formed in integer
arithmetic and only the ordinates are floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np


class ScaledFunction:
    """Linear interpolation through knots (t_num[i]/t_den, y[i]).

    Invariants: t_num is strictly increasing, starts at 0 and ends at
    t_den, so the function is total on [0,1].
    """

    __slots__ = ("t_num", "t_den", "y")

    def __init__(self, t_num, t_den: int, y):
        t_num = np.asarray(t_num, dtype=np.int64)
        y = np.asarray(y, dtype=np.float64)
        if t_den <= 0:
            raise ValueError("denominator must be positive")
        if t_num.ndim != 1 or t_num.shape != y.shape:
            raise ValueError("knot arrays must be 1-d and of equal length")
        if t_num.size < 2:
            raise ValueError("need at least the two endpoint knots")
        if t_num[0] != 0 or t_num[-1] != t_den:
            raise ValueError("knots must span [0,1] exactly")
        if np.any(np.diff(t_num) <= 0):
            raise ValueError("knot abscissae must be strictly increasing")
        t_num.setflags(write=False)
        y.setflags(write=False)
        self.t_num = t_num
        self.t_den = int(t_den)
        self.y = y

    @property
    def knots(self) -> list[tuple[Fraction, float]]:
        """Knots as (exact abscissa, ordinate) pairs."""
        return [
            (Fraction(int(num), self.t_den), float(val))
            for num, val in zip(self.t_num, self.y)
        ]

    def __len__(self) -> int:
        return int(self.t_num.size)

    def __neg__(self) -> "ScaledFunction":
        return ScaledFunction(self.t_num, self.t_den, -self.y)

    def __call__(self, t):
        """Evaluate at float t (scalar or array) by linear interpolation."""
        return np.interp(t, self.t_num / self.t_den, self.y)

    def eval_rational(self, nums, den: int):
        """Evaluate at exact rationals nums[i]/den, den a multiple of t_den.

        Interpolation weights are formed from integer differences, so a
        query that lands exactly on a knot returns the stored ordinate
        bit-for-bit.
        """
        if den % self.t_den != 0:
            raise ValueError("den must be a multiple of the knot denominator")
        scale = den // self.t_den
        own = self.t_num * scale
        nums = np.asarray(nums, dtype=np.int64)
        if np.any(nums < 0) or np.any(nums > den):
            raise ValueError("query points must lie in [0,1]")
        idx = np.searchsorted(own, nums, side="right") - 1
        idx = np.clip(idx, 0, own.size - 2)
        t0 = own[idx]
        t1 = own[idx + 1]
        w = (nums - t0) / (t1 - t0)
        return self.y[idx] * (1.0 - w) + self.y[idx + 1] * w

    def __repr__(self):
        return f"ScaledFunction({len(self)} knots, den={self.t_den})"


def sup_distance(f: ScaledFunction, g: ScaledFunction) -> float:
    """Exact sup-norm distance sup_t |f(t) - g(t)| over [0,1].

    For piecewise-linear f and g the difference is piecewise linear with
    breakpoints contained in the union of the two knot sets, so the
    supremum is attained at a union knot; no grid discretization enters.
    """
    lcm = math.lcm(f.t_den, g.t_den)
    grid = np.union1d(f.t_num * (lcm // f.t_den), g.t_num * (lcm // g.t_den))
    fv = f.eval_rational(grid, lcm)
    gv = g.eval_rational(grid, lcm)
    return float(np.max(np.abs(fv - gv)))


def sup_sum(f: ScaledFunction, g: ScaledFunction) -> float:
    """sup_t |f(t) + g(t)|, the coupling statistic for mirrored limits."""
    return sup_distance(f, -g)
