"""Permutations: pattern containment, exceedance process, interpolated
exceedance functions, and scalar statistics (inversions, max deficit).

Permutations are 1-indexed bijections on {1..n}; the text format is the
space-separated image list, e.g. "2 1 6 3 10 4 5 7 8 9".
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .errors import EmptySet, IndexOutOfRange
from .scaled import ScaledFunction, sup_distance  # re-exported  # noqa: F401


class Permutation:
    """Immutable permutation of {1..n}, n >= 1."""

    __slots__ = ("_images",)

    def __init__(self, images):
        if isinstance(images, Permutation):
            arr = images._images
        elif isinstance(images, str):
            arr = np.array([int(tok) for tok in images.split()], dtype=np.int64)
        else:
            arr = np.asarray(images, dtype=np.int64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("need a nonempty 1-d image sequence")
        seen = np.zeros(arr.size + 1, dtype=bool)
        if arr.min() < 1 or arr.max() > arr.size:
            raise ValueError("images must be a bijection on 1..n")
        seen[arr] = True
        if not seen[1:].all():
            raise ValueError("images must be a bijection on 1..n")
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        self._images = arr

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(np.arange(1, n + 1))

    @property
    def images(self) -> np.ndarray:
        return self._images

    @property
    def n(self) -> int:
        return int(self._images.size)

    def __call__(self, i: int) -> int:
        """pi(i) for 1 <= i <= n."""
        if not 1 <= i <= self.n:
            raise IndexOutOfRange(f"position {i} not in 1..{self.n}")
        return int(self._images[i - 1])

    def to_text(self) -> str:
        return " ".join(str(int(v)) for v in self._images)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Permutation([{self.to_text()}])"

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.n == other.n and bool(np.all(self._images == other._images))

    def __hash__(self):
        return hash(self._images.tobytes())


def contains_pattern(perm: Permutation, pattern: Permutation) -> bool:
    """Brute-force pattern containment for patterns of size <= 4.

    True iff some index subsequence of perm is order-isomorphic to the
    pattern.  O(n^k); this is the reference implementation the fast
    checkers are tested against.
    """
    k = pattern.n
    if k > 4:
        raise ValueError("brute-force checker accepts patterns of size <= 4")
    rel = [
        (r, s, pattern(r + 1) < pattern(s + 1))
        for r, s in combinations(range(k), 2)
    ]
    vals = perm.images
    for idx in combinations(range(perm.n), k):
        if all((vals[idx[r]] < vals[idx[s]]) == want for r, s, want in rel):
            return True
    return False


def avoids_321(perm: Permutation) -> bool:
    """O(n) 321-avoidance test (longest decreasing subsequence <= 2).

    A position is a candidate middle when some earlier value exceeds it;
    the permutation contains 321 iff a later value drops below the
    largest middle seen so far.
    """
    v = perm.images
    n = v.size
    prefix_max = np.empty(n, dtype=np.int64)
    prefix_max[0] = 0
    np.maximum.accumulate(v[:-1], out=prefix_max[1:])
    middle = v < prefix_max  # positions that can serve as the middle of a 321
    mid_max = np.maximum.accumulate(np.where(middle, v, 0))
    return not bool(np.any(v[1:] < mid_max[:-1]))


def avoids_231(perm: Permutation) -> bool:
    """Single-stack scan: perm avoids 231 iff it is sortable by one stack.

    Popped values (those with a later larger element) are exactly the
    candidate '2's; any subsequent smaller value completes a 231.
    """
    stack: list[int] = []
    best = 0  # largest popped value so far
    for x in perm.images.tolist():
        if x < best:
            return False
        while stack and stack[-1] < x:
            best = stack.pop()
        stack.append(x)
    return True


def exceedance(perm: Permutation, i: int) -> int:
    """E(i) = pi(i) - i for 1 <= i <= n, and E(0) = 0."""
    if i == 0:
        return 0
    if not 1 <= i <= perm.n:
        raise IndexOutOfRange(f"index {i} not in 0..{perm.n}")
    return int(perm.images[i - 1]) - i


def exceedance_process(perm: Permutation) -> np.ndarray:
    """The full vector (E(0), E(1), ..., E(n))."""
    n = perm.n
    out = np.empty(n + 1, dtype=np.int64)
    out[0] = 0
    out[1:] = perm.images - np.arange(1, n + 1)
    return out


def exceedance_sets(perm: Permutation) -> tuple[np.ndarray, np.ndarray]:
    """(E_plus, E_minus): indices in 0..n with E(i) >= 0 resp. E(i) <= 0.

    Both contain 0; n always lands in E_minus since pi(n) <= n.
    """
    e = exceedance_process(perm)
    idx = np.arange(perm.n + 1)
    return idx[e >= 0], idx[e <= 0]


def scaled_function(perm: Permutation, indices) -> ScaledFunction:
    """Linear interpolation through {(a/n, E(a)/sqrt(2n)) : a in indices}.

    Anchor knots (0,0) and (1,0) are added when 0 or n is absent, making
    the function total on [0,1] and matching the zero boundary of the
    limit object.
    """
    n = perm.n
    a = np.unique(np.asarray(indices, dtype=np.int64))
    if a.size == 0:
        raise EmptySet("index set must be nonempty")
    if a.min() < 0 or a.max() > n:
        raise IndexOutOfRange("indices must lie in 0..n")
    e = exceedance_process(perm)
    y = e[a] / np.sqrt(2 * n)
    if a[0] != 0:
        a = np.concatenate(([0], a))
        y = np.concatenate(([0.0], y))
    if a[-1] != n:
        a = np.concatenate((a, [n]))
        y = np.concatenate((y, [0.0]))
    return ScaledFunction(a, n, y)


def inversions(perm: Permutation) -> int:
    """Number of pairs i < j with pi(j) < pi(i), by merge counting.

    Bottom-up merges; cross counts come from searchsorted against the
    sorted left half, and numpy's stable sort merges the presorted
    halves in linear time.  O(n log n).
    """
    return _merge_count_sorting(perm.images.astype(np.int64))


_LEAF = 128
_triu_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _merge_count_sorting(a: np.ndarray) -> int:
    """Count inversions of a and sort it in place (helper of inversions)."""
    if a.size <= _LEAF:
        c = _brute_count(a)
        a.sort()
        return c
    mid = a.size // 2
    left, right = a[:mid], a[mid:]
    c = _merge_count_sorting(left) + _merge_count_sorting(right)
    c += int(np.sum(left.size - np.searchsorted(left, right, side="right")))
    a[:] = np.sort(a, kind="stable")  # timsort: merges the two sorted runs
    return c


def _brute_count(a: np.ndarray) -> int:
    pair = _triu_cache.get(a.size)
    if pair is None:
        pair = np.triu_indices(a.size, k=1)
        if len(_triu_cache) < 256:
            _triu_cache[a.size] = pair
    i, j = pair
    return int(np.sum(a[i] > a[j]))


def inversions_bruteforce(perm: Permutation) -> int:
    """O(n^2) oracle for inversions."""
    return _brute_count(perm.images)


def max_deficit(perm: Permutation) -> int:
    """m(pi) = max_i (i - pi(i)); zero for the identity, never negative."""
    n = perm.n
    return int(np.max(np.arange(1, n + 1) - perm.images))
