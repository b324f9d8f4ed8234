"""The Billey-Jockusch-Stanley bijection between Dyck paths and
321-avoiding permutations, with its deterministic sign and coupling
diagnostics.

Forward rule: with run prefix sums A_i, D_i of the path, tau sends each
D_i (i < m) to 1 + A_i and maps the remaining positions increasingly
onto the remaining values.  D_m = n is deliberately excluded: tau(n)
would otherwise be n+1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dyck import DyckPath, RunDecomposition, runs, validate
from .errors import Not321Avoiding, NotReconstructible
from .perms import Permutation, avoids_321


def forward(path: DyckPath) -> Permutation:
    """Map a Dyck path of semilength n >= 1 to its 321-avoiding image."""
    rd = runs(path)
    return _forward_from_runs(rd)


def _forward_from_runs(rd: RunDecomposition) -> Permutation:
    n = rd.n
    tau = np.zeros(n, dtype=np.int64)
    d_set = rd.set_D()
    a_vals = 1 + rd.set_A()
    tau[d_set - 1] = a_vals
    value_used = np.zeros(n + 2, dtype=bool)
    value_used[a_vals] = True
    free_values = np.nonzero(~value_used[1 : n + 1])[0] + 1
    tau[tau == 0] = free_values  # both position and value order ascending
    return Permutation(tau)


def inverse(perm: Permutation) -> DyckPath:
    """Recover the unique Dyck path mapping to a 321-avoiding perm.

    The exceedance positions {j : tau(j) > j} are exactly D_1..D_{m-1}
    and their images recover 1 + A_i; closing with A_m = D_m = n yields
    the run lengths.  Raises Not321Avoiding on bad input, and
    NotReconstructible if the rebuilt step sequence fails validation
    (which would signal internal inconsistency, not bad input).
    """
    if not avoids_321(perm):
        raise Not321Avoiding(f"input contains a 321 pattern: {perm}")
    n = perm.n
    images = perm.images
    idx = np.arange(1, n + 1, dtype=np.int64)
    d_set = idx[images > idx]
    big_d = np.concatenate((d_set, [n]))
    big_a = np.concatenate((images[d_set - 1] - 1, [n]))
    a = np.diff(big_a, prepend=0)
    d = np.diff(big_d, prepend=0)
    lengths = np.empty(2 * a.size, dtype=np.int64)
    lengths[0::2] = a
    lengths[1::2] = d
    if lengths.min() <= 0:
        raise NotReconstructible("nonpositive run length from exceedance data")
    vals = np.tile(np.array([1, -1], dtype=np.int8), a.size)
    try:
        return validate(np.repeat(vals, lengths))
    except ValueError as exc:
        raise NotReconstructible(str(exc)) from exc


def check_exceedance_sign(path: DyckPath) -> bool:
    """True iff tau(j) > j exactly on {D_1..D_{m-1}} and tau(j) <= j off it.

    This dichotomy holds for every Dyck path.
    """
    rd = runs(path)
    tau = _forward_from_runs(rd).images
    idx = np.arange(1, rd.n + 1, dtype=np.int64)
    exceed = idx[tau > idx]
    return bool(np.array_equal(exceed, rd.set_D()))


@dataclass(frozen=True)
class CouplingReport:
    """Worst-case deviations between tau and the path heights.

    max_d_error:    max over j in {D_i} of |tau(j) - j - gamma(2j)|
    max_notd_error: max over j outside of |tau(j) - j + gamma(2j)|
    max_run_error:  max over j outside of |tau(j) - j + y_i|, where i is
                    the run with D_{i-1} < j <= D_i
    petrov_held:    whether the path satisfies the moderate-deviation
                    conditions; when it does, the first two maxima must
                    stay below 10 n^0.4 and the third below 7 n^0.4.
    """

    n: int
    max_d_error: int
    max_notd_error: int
    max_run_error: int
    petrov_held: bool
    d_within_bound: bool
    notd_within_bound: bool
    run_within_bound: bool

    @property
    def bounds_hold(self) -> bool:
        return self.d_within_bound and self.notd_within_bound and self.run_within_bound


def coupling_bounds(path: DyckPath, petrov_report=None) -> CouplingReport:
    """Evaluate the conditional coupling inequalities on one path.

    The bound comparisons are exact: v < 10 n^{2/5} iff v^5 < 10^5 n^2
    in integer arithmetic, and similarly for 7 n^{2/5}.
    """
    from .petrov import check_petrov  # local import to keep modules acyclic

    rd = runs(path)
    n = rd.n
    tau = _forward_from_runs(rd).images
    gamma = path.heights
    idx = np.arange(1, n + 1, dtype=np.int64)
    in_d = np.zeros(n + 1, dtype=bool)
    in_d[rd.set_D()] = True
    mask_d = in_d[1:]
    diff = tau - idx

    g2 = gamma[2 * idx]
    max_d = int(np.max(np.abs(diff[mask_d] - g2[mask_d]))) if mask_d.any() else 0
    max_notd = int(np.max(np.abs(diff[~mask_d] + g2[~mask_d])))

    # run index i with D_{i-1} < j <= D_i for each j outside the D-set
    j_out = idx[~mask_d]
    run_idx = np.searchsorted(rd.D, j_out, side="left")
    y_out = rd.y[run_idx]
    max_run = int(np.max(np.abs(diff[~mask_d] + y_out)))

    if petrov_report is None:
        petrov_report = check_petrov(path)
    held = petrov_report.all_hold
    return CouplingReport(
        n=n,
        max_d_error=max_d,
        max_notd_error=max_notd,
        max_run_error=max_run,
        petrov_held=held,
        d_within_bound=_below_power_bound(max_d, 10, n),
        notd_within_bound=_below_power_bound(max_notd, 10, n),
        run_within_bound=_below_power_bound(max_run, 7, n),
    )


def _below_power_bound(v: int, coef: int, n: int) -> bool:
    """Exact test of v < coef * n^(2/5) for nonnegative integers."""
    return v**5 < coef**5 * n**2
