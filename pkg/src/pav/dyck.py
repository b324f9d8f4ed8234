"""Dyck paths: validation, enumeration, exact uniform sampling, and the
run/excursion decompositions consumed by the bijections.

A path of semilength n is a sequence of 2n steps in {+1,-1} whose height
profile starts and ends at 0 and never goes negative.  Positions x are
0-indexed (0..2n); run and excursion indices are 1-indexed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BadStep,
    EmptySet,
    NegativeExcursion,
    NotBalanced,
    OddLength,
    TooLarge,
)
from .rng import as_generator
from .scaled import ScaledFunction

_STEP_CHARS = {"U": 1, "D": -1}


class DyckPath:
    """Immutable Dyck path.

    Steps are held as a read-only int8 array of +1/-1; the height profile
    gamma(0..2n) is computed once on demand and cached.
    """

    __slots__ = ("_steps", "_heights")

    def __init__(self, steps, validated: bool = False):
        if isinstance(steps, DyckPath):
            arr = steps._steps
        elif isinstance(steps, str):
            arr = _steps_from_text(steps)
        else:
            arr = np.asarray(steps, dtype=np.int8)
        if not validated:
            _check_steps(arr)
        arr = np.ascontiguousarray(arr, dtype=np.int8)
        arr.setflags(write=False)
        self._steps = arr
        self._heights = None

    @property
    def steps(self) -> np.ndarray:
        return self._steps

    @property
    def n(self) -> int:
        """Semilength: number of up-steps."""
        return self._steps.size // 2

    @property
    def heights(self) -> np.ndarray:
        """gamma(x) for x = 0..2n (int64, read-only)."""
        if self._heights is None:
            h = np.zeros(self._steps.size + 1, dtype=np.int64)
            np.cumsum(self._steps, out=h[1:])
            h.setflags(write=False)
            self._heights = h
        return self._heights

    def to_text(self) -> str:
        return "".join("U" if s == 1 else "D" for s in self._steps)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        t = self.to_text()
        return f"DyckPath({t!r})" if len(t) <= 40 else f"DyckPath(n={self.n})"

    def __eq__(self, other):
        if not isinstance(other, DyckPath):
            return NotImplemented
        return self._steps.size == other._steps.size and bool(
            np.all(self._steps == other._steps)
        )

    def __hash__(self):
        return hash(self._steps.tobytes())


def _steps_from_text(text: str) -> np.ndarray:
    bad = set(text) - set(_STEP_CHARS)
    if bad:
        raise BadStep(f"unexpected step characters: {sorted(bad)!r}")
    return np.array([_STEP_CHARS[c] for c in text], dtype=np.int8)


def _check_steps(arr: np.ndarray) -> None:
    if arr.ndim != 1:
        raise BadStep("steps must be a 1-d sequence")
    if arr.size % 2 != 0:
        raise OddLength(f"length {arr.size} is odd")
    if arr.size and not np.all(np.abs(arr) == 1):
        raise BadStep("steps must be +1 or -1")
    heights = np.cumsum(arr, dtype=np.int64)
    if arr.size and heights[-1] != 0:
        raise NotBalanced(f"endpoint height {int(heights[-1])} != 0")
    if arr.size and heights.min() < 0:
        x = int(np.argmax(heights < 0)) + 1
        raise NegativeExcursion(f"gamma({x}) = {int(heights[x - 1])} < 0")


def validate(steps) -> DyckPath:
    """Check the three defining conditions and wrap the steps.

    Raises OddLength, BadStep, NotBalanced, or NegativeExcursion.
    """
    return DyckPath(steps)


def from_text(text: str) -> DyckPath:
    """Parse a U/D string such as 'UUDUDD'."""
    return DyckPath(text)


ENUMERATE_LIMIT = 16


def enumerate_all(n: int):
    """Yield every Dyck path of semilength n exactly once.

    Order is lexicographic on the step string with U < D, so U^nD^n comes
    first and (UD)^n last.  Guarded at n <= 16: the count is the n-th
    Catalan number, ~35M at the limit.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > ENUMERATE_LIMIT:
        raise TooLarge(f"n={n} exceeds enumeration guard {ENUMERATE_LIMIT}")

    buf = np.empty(2 * n, dtype=np.int8)

    def rec(pos: int, height: int):
        if pos == 2 * n:
            yield DyckPath(buf.copy(), validated=True)
            return
        ups = (pos + height) // 2
        if ups < n:
            buf[pos] = 1
            yield from rec(pos + 1, height + 1)
        if height > 0:
            buf[pos] = -1
            yield from rec(pos + 1, height - 1)

    yield from rec(0, 0)


def sample_uniform(n: int, seed) -> DyckPath:
    """Draw an exactly uniform Dyck path of semilength n.

    Cycle-lemma construction: shuffle n up-steps and n+1 down-steps,
    rotate to just after the first prefix-sum minimum (the unique
    rotation that stays nonnegative until the final step lands at -1),
    and drop that final down-step.  Single O(n) pass, no rejection.

    ``seed`` may be a 64-bit int (an independent substream is derived
    from it) or a numpy Generator to draw from an existing stream.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = as_generator(seed)
    arr = np.empty(2 * n + 1, dtype=np.int8)
    arr[:n] = 1
    arr[n:] = -1
    rng.shuffle(arr)
    prefix = np.cumsum(arr, dtype=np.int64)
    k = int(np.argmin(prefix))  # first position attaining the minimum
    rotated = np.roll(arr, -(k + 1))
    assert rotated[-1] == -1
    path = DyckPath(rotated[:-1], validated=True)
    assert _steps_ok(path)
    return path


def _steps_ok(path: DyckPath) -> bool:
    h = path.heights
    return bool(h[-1] == 0 and h.min() >= 0)


@dataclass(frozen=True)
class RunDecomposition:
    """Maximal runs of a path: a_i up-run lengths, d_i down-run lengths,
    prefix sums A_i, D_i, and the run heights y_i = A_i - D_i.

    Arrays are 0-based storage for the 1-indexed quantities: a[i-1] is
    a_i, etc.  The identity y_i = gamma(A_i + D_i) is verified on
    construction; position A_i + D_i is where the i-th down-run ends.
    """

    n: int
    a: np.ndarray
    d: np.ndarray
    A: np.ndarray
    D: np.ndarray

    @property
    def m(self) -> int:
        """Number of up-runs (equals number of down-runs)."""
        return int(self.a.size)

    @property
    def y(self) -> np.ndarray:
        """y_i = A_i - D_i for i = 1..m."""
        return self.A - self.D

    def set_A(self) -> np.ndarray:
        """The index set {A_1, ..., A_{m-1}} (excludes A_m = n)."""
        return self.A[:-1]

    def set_D(self) -> np.ndarray:
        """The index set {D_1, ..., D_{m-1}} (excludes D_m = n)."""
        return self.D[:-1]

    def complement_A(self) -> np.ndarray:
        """{1..n} minus the shifted set 1 + {A_1..A_{m-1}}, ascending."""
        mask = np.ones(self.n + 1, dtype=bool)
        mask[0] = False
        mask[self.set_A() + 1] = False
        return np.nonzero(mask)[0]

    def complement_D(self) -> np.ndarray:
        """{1..n} minus {D_1..D_{m-1}}, ascending."""
        mask = np.ones(self.n + 1, dtype=bool)
        mask[0] = False
        mask[self.set_D()] = False
        return np.nonzero(mask)[0]

    def reconstruct_steps(self) -> np.ndarray:
        """Rebuild the step sequence U^{a_1}D^{d_1}...U^{a_m}D^{d_m}."""
        lengths = np.empty(2 * self.m, dtype=np.int64)
        lengths[0::2] = self.a
        lengths[1::2] = self.d
        vals = np.tile(np.array([1, -1], dtype=np.int8), self.m)
        return np.repeat(vals, lengths)


def runs(path: DyckPath) -> RunDecomposition:
    """Run-length decomposition of a nonempty path."""
    steps = path.steps
    if steps.size == 0:
        raise EmptySet("runs are undefined for the empty path")
    change = np.nonzero(np.diff(steps))[0]
    bounds = np.concatenate(([0], change + 1, [steps.size]))
    lengths = np.diff(bounds)
    # A valid path starts with an up-run and ends with a down-run, so the
    # runs strictly alternate U,D,U,D,... with an even count.
    a = lengths[0::2]
    d = lengths[1::2]
    A = np.cumsum(a)
    D = np.cumsum(d)
    rd = RunDecomposition(n=path.n, a=a, d=d, A=A, D=D)
    assert np.array_equal(rd.y, path.heights[A + D])
    return rd


@dataclass(frozen=True)
class ExcursionTable:
    """Per-up-step excursion parameters.

    v[i-1] is the position after the i-th up-step, h[i-1] the height
    there, l[i-1] the (even) length of the excursion it opens.  The
    excursion occupies positions [v_i - 1, v_i - 1 + l_i].
    """

    n: int
    v: np.ndarray
    h: np.ndarray
    l: np.ndarray

    def intervals(self) -> tuple[np.ndarray, np.ndarray]:
        """(start, end) position arrays of each excursion."""
        start = self.v - 1
        return start, start + self.l

    def fringe_sizes(self) -> np.ndarray:
        """l_i / 2: vertex count of the fringe subtree rooted at v_i."""
        return self.l >> 1


def excursions(path: DyckPath) -> ExcursionTable:
    """Compute (v_i, h_i, l_i) for all n excursions in O(n log n).

    Matching rule: inside height level h, the k-th up-step into the level
    closes with the k-th down-step out of it, since entries and exits of
    a level strictly alternate.  Grouping both step families by level
    with one stable argsort matches every excursion at once.
    """
    steps = path.steps
    n = path.n
    if n == 0:
        raise EmptySet("excursions are undefined for the empty path")
    after = path.heights[1:]  # gamma(x) for x = 1..2n
    up = steps == 1
    pos = np.arange(1, steps.size + 1, dtype=np.int64)
    up_pos = pos[up]
    up_level = after[up]
    down_pos = pos[~up]
    down_level = after[~up] + 1
    order_u = np.argsort(up_level, kind="stable")
    order_d = np.argsort(down_level, kind="stable")
    close = np.empty(n, dtype=np.int64)
    close[order_u] = down_pos[order_d]
    table = ExcursionTable(n=n, v=up_pos, h=up_level.astype(np.int64),
                           l=close - up_pos + 1)
    assert np.all(table.l % 2 == 0)
    return table


def max_height(path: DyckPath) -> int:
    """M(gamma) = max_x gamma(x)."""
    if path.n == 0:
        return 0
    return int(path.heights.max())


def scaled_path(path: DyckPath) -> ScaledFunction:
    """t -> gamma(2nt)/sqrt(2n) as a piecewise-linear function on [0,1],
    with knots at every lattice abscissa x/(2n)."""
    n = path.n
    if n < 1:
        raise ValueError("n must be >= 1")
    two_n = 2 * n
    return ScaledFunction(
        np.arange(two_n + 1, dtype=np.int64),
        two_n,
        path.heights / np.sqrt(two_n),
    )
