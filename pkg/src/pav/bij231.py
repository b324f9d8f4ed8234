"""The excursion bijection between Dyck paths and 231-avoiding
permutations: sigma(i) = i + l_i/2 - h_i, where (v_i, h_i, l_i) describe
the excursion opened by the i-th up-step.

Equivalently, reading the path as the contour of an ordered tree,
sigma(i) = i + |subtree of v_i| - depth(v_i).  The inverse goes through
that tree: the parent of v_j is the nearest previous index whose sigma
value is larger, which is exactly the ancestry order of the tree.
"""

from __future__ import annotations

import numpy as np

from .dyck import DyckPath, excursions
from .errors import IndexOutOfRange, Not231Avoiding
from .perms import Permutation, avoids_231
from .trees import OrderedTree, stats, to_contour


def forward(path: DyckPath) -> Permutation:
    """Map a Dyck path of semilength n >= 1 to its 231-avoiding image."""
    et = excursions(path)
    if np.any(et.l & 1):
        raise AssertionError("odd excursion length: corrupted path state")
    sigma = np.arange(1, et.n + 1, dtype=np.int64) + (et.l >> 1) - et.h
    return Permutation(sigma)


def inverse(perm: Permutation) -> DyckPath:
    """Recover the unique path with sigma_gamma = perm.

    Builds the ordered tree from the ancestry rule (parent = nearest
    previous larger value, the root if none) and returns its contour.
    Raises Not231Avoiding when the input contains a 231 pattern.
    """
    if not avoids_231(perm):
        raise Not231Avoiding(f"input contains a 231 pattern: {perm}")
    return to_contour(ancestry_tree(perm))


def ancestry_tree(perm: Permutation) -> OrderedTree:
    """The ordered tree whose preorder sigma-order matches the perm.

    parent(v_j) = v_i with i = max{i < j : sigma(i) > sigma(j)}, or the
    root v_0 when no such i exists; children attach in index order.
    One stack pass, O(n).
    """
    sigma = perm.images.tolist()
    n = len(sigma)
    parent = np.empty(n + 1, dtype=np.int64)
    parent[0] = -1
    stack_label = [0]
    stack_value = [n + 1]  # sentinel above every sigma value
    for j, val in enumerate(sigma, start=1):
        while stack_value[-1] < val:
            stack_value.pop()
            stack_label.pop()
        parent[j] = stack_label[-1]
        stack_label.append(j)
        stack_value.append(val)
    return OrderedTree(parent, validated=True)


def inverse_via_peaks(perm: Permutation) -> DyckPath:
    """Alternative inverse through the path's local maxima (cross-check).

    sigma(i) - i has a weak local minimum exactly at the length-2
    excursions, where the path peaks at position 2i - h_i with height
    h_i = 1 - (sigma(i) - i); a Dyck path is determined by its peaks.
    Fully vectorized; validity is confirmed by mapping forward again.
    """
    sigma = perm.images
    n = perm.n
    delta = sigma - np.arange(1, n + 1, dtype=np.int64)
    is_peak = np.empty(n, dtype=bool)
    is_peak[-1] = True
    is_peak[:-1] = delta[1:] >= delta[:-1]
    i_pk = np.nonzero(is_peak)[0] + 1
    h_pk = 1 - delta[i_pk - 1]
    x_pk = 2 * i_pk - h_pk
    if h_pk.min() < 1 or np.any(np.diff(x_pk) <= 0) or x_pk[0] != h_pk[0]:
        raise Not231Avoiding(f"no path has these peaks: {perm}")
    gaps = x_pk[1:] - x_pk[:-1]
    valley2 = h_pk[:-1] + h_pk[1:] - gaps
    if np.any(valley2 < 0) or np.any(valley2 & 1):
        raise Not231Avoiding(f"no path has these peaks: {perm}")
    valley = valley2 >> 1
    if np.any(valley >= h_pk[:-1]) or np.any(valley >= h_pk[1:]):
        raise Not231Avoiding(f"no path has these peaks: {perm}")
    ups = np.concatenate(([h_pk[0]], h_pk[1:] - valley))
    downs = np.concatenate((h_pk[:-1] - valley, [h_pk[-1]]))
    lengths = np.empty(2 * ups.size, dtype=np.int64)
    lengths[0::2] = ups
    lengths[1::2] = downs
    vals = np.tile(np.array([1, -1], dtype=np.int8), ups.size)
    steps = np.repeat(vals, lengths)
    if steps.size != 2 * n:
        raise Not231Avoiding(f"no path has these peaks: {perm}")
    path = DyckPath(steps)
    if forward(path) != perm:
        raise Not231Avoiding(f"input contains a 231 pattern: {perm}")
    return path


def tree_formula(tree: OrderedTree, i: int) -> int:
    """sigma(i) = i + |fringe subtree of v_i| - depth(v_i), 1 <= i < N."""
    if not 1 <= i <= tree.size - 1:
        raise IndexOutOfRange(f"i={i} outside 1..{tree.size - 1}")
    st = stats(tree)
    return i + int(st.fringe_sizes[i]) - int(st.heights[i])


def check_order_structure(path: DyckPath, pair_limit: int = 4000) -> bool:
    """Verify the excursion-order dichotomy pairwise.

    For i < j: Exc(j) nested in Exc(i) iff j - i < l_i/2, and then
    sigma(j) < sigma(i); disjoint excursions give sigma(i) < sigma(j).
    Quadratic in n, guarded by pair_limit.
    """
    n = path.n
    if n > pair_limit:
        raise ValueError(f"n={n} exceeds the O(n^2) guard {pair_limit}")
    et = excursions(path)
    sigma = forward(path).images
    i = np.arange(1, n + 1, dtype=np.int64)
    gap = i[None, :] - i[:, None]  # gap[i-1, j-1] = j - i
    nested = gap < (et.l >> 1)[:, None]
    sig_less = sigma[None, :] < sigma[:, None]  # sigma(j) < sigma(i)
    upper = gap > 0
    return bool(np.all((nested == sig_less)[upper]))
