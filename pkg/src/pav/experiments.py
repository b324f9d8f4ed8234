"""Monte Carlo and exact-formula experiments that turn the asymptotic
statements into finite-n convergence measurements.

Each replicate is a pure function of (master seed, n, replicate index),
so reports are bitwise reproducible at any worker count.  Sup distances
between the scaled path and the interpolated exceedance functions are
evaluated exactly at knot unions; reference constants for the limiting
functionals enter only through the exact dynamic-programming oracle and
the acceptance tests, never through library code.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import bij231, bij321
from ._version import __version__
from .dyck import DyckPath, excursions, max_height, sample_uniform, scaled_path
from .errors import BadConfig, EmptySample, TooLarge
from .parallel import replicate_map
from .perms import (
    exceedance_sets,
    inversions,
    max_deficit,
    scaled_function,
)
from .rng import as_generator, substream
from .scaled import ScaledFunction, sup_distance, sup_sum
from .trees import catalan, expected_hat_xi, subtree_size_limit

THEOREMS = ("thm321", "thm231", "height", "subtree", "random_index", "moments")


# ---------------------------------------------------------------------------
# pathwise statistics


def coupling_321(path: DyckPath) -> tuple[float, float, float]:
    """Sup distances between the scaled path and the two exceedance
    interpolations of its 321-avoiding image.

    Returns (sup|G - F_plus|, sup|G + F_minus|, sup|F_plus + F_minus|);
    all three tend to zero in probability for uniform paths.
    """
    tau = bij321.forward(path)
    g = scaled_path(path)
    e_plus, e_minus = exceedance_sets(tau)
    f_plus = scaled_function(tau, e_plus)
    f_minus = scaled_function(tau, e_minus)
    return (
        sup_distance(g, f_plus),
        sup_sum(g, f_minus),
        sup_sum(f_plus, f_minus),
    )


def se_set(path: DyckPath, c: float, alpha: float) -> np.ndarray:
    """Indices i in 1..n whose fringe subtree has at most c*n^alpha
    vertices (the "short excursion" set)."""
    sizes = excursions(path).fringe_sizes()
    bound = c * path.n**alpha
    return np.nonzero(sizes <= bound)[0] + 1


def coupling_231(path: DyckPath, index_set) -> float:
    """sup over [0,1] of |scaled path + interpolation of the 231-image's
    exceedance over the given index set|.

    An empty index set degenerates to the anchor-only zero function.
    """
    sigma = bij231.forward(path)
    index_set = np.asarray(index_set, dtype=np.int64)
    if index_set.size == 0:
        f = ScaledFunction(np.array([0, path.n]), path.n, np.zeros(2))
    else:
        f = scaled_function(sigma, index_set)
    return sup_sum(scaled_path(path), f)


def random_index_set(n: int, count: int, seed) -> np.ndarray:
    """count i.i.d. uniform draws from {1..n}, deduplicated and sorted."""
    if count == 0:
        return np.empty(0, dtype=np.int64)
    rng = as_generator(seed)
    return np.unique(rng.integers(1, n + 1, size=count))


def height_vs_contour(path: DyckPath) -> float:
    """max_i |gamma(2i) - depth(v_i)| / sqrt(n) over i = 0..n."""
    n = path.n
    et = excursions(path)
    gamma = path.heights
    diffs = np.abs(gamma[2 * np.arange(1, n + 1)] - et.h)
    return float(diffs.max() / math.sqrt(n))


# ---------------------------------------------------------------------------
# moment estimates and their exact oracle


def moment_replicate(n: int, seed) -> tuple[float, float]:
    """(inversions/n^1.5, max height/sqrt(2n)) for one uniform path.

    The pathwise identity max = 1 + max-deficit is asserted on every
    draw; a violation would mean corrupted bijection state.
    """
    path = sample_uniform(n, seed)
    sigma = bij231.forward(path)
    m_path = max_height(path)
    if m_path != 1 + max_deficit(sigma):
        raise AssertionError("max height != 1 + max deficit on a sampled path")
    return inversions(sigma) / n**1.5, m_path / math.sqrt(2 * n)


def _moment_item(args):
    n, seed, r = args
    return moment_replicate(n, substream(seed, n, r))


def moment_experiments(n: int, replicates: int, seed: int, workers: int = 1) -> dict:
    """Estimate the scaled inversion count and scaled maximum over
    uniform paths of semilength n."""
    if replicates < 1:
        raise EmptySample("replicates must be >= 1")
    rows = replicate_map(_moment_item, [(n, seed, r) for r in range(replicates)], workers)
    arr = np.asarray(rows, dtype=np.float64)
    return {
        "n": n,
        "replicates": replicates,
        "inversions_scaled": arr[:, 0],
        "max_scaled": arr[:, 1],
        "mean_inversions_scaled": float(arr[:, 0].mean()),
        "mean_max_scaled": float(arr[:, 1].mean()),
    }


ORACLE_LIMIT = 256


def exact_moment_oracle(n: int) -> tuple[Fraction, Fraction]:
    """Exact (E[sum_x gamma(x)], E[max gamma]) over uniform paths of
    semilength n, by dynamic programming with unbounded integers.

    The area expectation comes from a forward DP carrying (path count,
    accumulated height sum) per lattice point; the maximum from exact
    strip counts N(h) = #paths staying within [0, h], via double
    reflection.  Guarded at n <= 256.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > ORACLE_LIMIT:
        raise TooLarge(f"n={n} exceeds oracle guard {ORACLE_LIMIT}")
    c_n = catalan(n)

    # area DP
    counts = {0: 1}
    sums = {0: 0}
    for _ in range(2 * n):
        new_counts: dict[int, int] = {}
        new_sums: dict[int, int] = {}
        for y, cnt in counts.items():
            s = sums[y]
            for y2 in (y - 1, y + 1):
                if y2 < 0:
                    continue
                new_counts[y2] = new_counts.get(y2, 0) + cnt
                new_sums[y2] = new_sums.get(y2, 0) + s + y2 * cnt
        counts, sums = new_counts, new_sums
    assert counts[0] == c_n
    e_area = Fraction(sums[0], c_n)

    # max via strip counts
    prev = _paths_within(n, 0)
    total_max = 0
    for h in range(1, n + 1):
        cur = _paths_within(n, h)
        total_max += h * (cur - prev)
        prev = cur
    assert prev == c_n
    e_max = Fraction(total_max, c_n)
    return e_area, e_max


def _paths_within(n: int, h: int) -> int:
    """Number of Dyck paths of semilength n with max height <= h.

    Double-reflection count for walks 0 -> 0 confined to [0, h]:
    sum_k [ binom(2n, n - k(h+2)) - binom(2n, n - k(h+2) - (h+1)) ].
    """
    period = h + 2
    total = 0
    k = -(n // period) - 1
    while k * period <= n + period:
        a = n - k * period
        total += math.comb(2 * n, a) if 0 <= a <= 2 * n else 0
        b = a - (h + 1)
        total -= math.comb(2 * n, b) if 0 <= b <= 2 * n else 0
        k += 1
    return total


# ---------------------------------------------------------------------------
# experiment harness


@dataclass(frozen=True)
class ExperimentConfig:
    """Declarative description of one experiment run."""

    theorem_id: str
    n_grid: tuple[int, ...]
    replicates: int
    seed: int
    c: float = 1.0
    alpha: float = 0.4
    epsilon: float = 0.05
    keep_raw: bool = False
    output: str | None = None

    def validated(self) -> "ExperimentConfig":
        if self.theorem_id not in THEOREMS:
            raise BadConfig(f"unknown theorem_id {self.theorem_id!r}")
        grid = tuple(int(v) for v in self.n_grid)
        if not grid or any(v < 1 for v in grid):
            raise BadConfig("n_grid must be nonempty positive integers")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise BadConfig("n_grid must be strictly increasing")
        if self.theorem_id != "subtree" and self.replicates < 1:
            raise BadConfig("replicates must be >= 1")
        return ExperimentConfig(
            theorem_id=self.theorem_id,
            n_grid=grid,
            replicates=int(self.replicates),
            seed=int(self.seed),
            c=float(self.c),
            alpha=float(self.alpha),
            epsilon=float(self.epsilon),
            keep_raw=bool(self.keep_raw),
            output=self.output,
        )

    def as_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "n_grid": list(self.n_grid),
            "replicates": self.replicates,
            "seed": self.seed,
            "c": self.c,
            "alpha": self.alpha,
            "epsilon": self.epsilon,
            "keep_raw": self.keep_raw,
            "output": self.output,
        }


@dataclass
class ExperimentReport:
    """Aggregated statistics plus the raw values when retained."""

    config: ExperimentConfig
    results: list = field(default_factory=list)
    raw: list = field(default_factory=list)  # (n, replicate, statistic, value)
    wall_seconds: float = 0.0

    def rows(self, statistic: str | None = None, n: int | None = None) -> list:
        out = self.results
        if statistic is not None:
            out = [r for r in out if r["statistic"] == statistic]
        if n is not None:
            out = [r for r in out if r["n"] == n]
        return out

    def as_dict(self, include_timing: bool = True) -> dict:
        return {
            "config": self.config.as_dict(),
            "results": self.results,
            "meta": {
                "seed": self.config.seed,
                "version": __version__,
                "wall_seconds": self.wall_seconds if include_timing else 0.0,
            },
        }

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.as_dict(include_timing), sort_keys=True, indent=2)

    def save(self, path, include_timing: bool = True) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_json(include_timing))
            fh.write("\n")

    def save_raw_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write("n,replicate,statistic,value\n")
            for n, r, stat, val in self.raw:
                fh.write(f"{n},{r},{stat},{val!r}\n")


def _replicate_statistics(args) -> dict[str, float]:
    theorem_id, n, seed, r, c, alpha, epsilon = args
    stream = substream(seed, n, r)
    if theorem_id == "thm321":
        path = sample_uniform(n, stream)
        d_plus, d_minus, d_mirror = coupling_321(path)
        return {"d_plus": d_plus, "d_minus": d_minus, "d_mirror": d_mirror}
    if theorem_id == "thm231":
        path = sample_uniform(n, stream)
        b = se_set(path, c, alpha)
        large = 1.0 if b.size > n - n ** (0.75 + epsilon) else 0.0
        return {
            "coupling": coupling_231(path, b),
            "excluded_count": float(n - b.size),
            "se_large": large,
        }
    if theorem_id == "random_index":
        path = sample_uniform(n, stream)
        count = max(1, int(c * n**alpha))
        b = random_index_set(n, count, stream)
        return {"coupling": coupling_231(path, b), "index_count": float(b.size)}
    if theorem_id == "height":
        path = sample_uniform(n, stream)
        return {"height_vs_contour": height_vs_contour(path)}
    if theorem_id == "moments":
        inv_scaled, max_scaled = moment_replicate(n, stream)
        return {"inversions_scaled": inv_scaled, "max_scaled": max_scaled}
    raise BadConfig(f"unknown theorem_id {theorem_id!r}")


def _subtree_rows(config: ExperimentConfig) -> list:
    rows = []
    limit = subtree_size_limit(config.c, config.alpha)
    for n in config.n_grid:
        k = int(config.c * n**config.alpha)
        if k < 1:
            raise BadConfig(f"threshold floor(c*n^alpha) = {k} < 1 at n={n}")
        ratio = float(expected_hat_xi(n, k)) / n ** (1.0 - config.alpha / 2.0)
        for stat, val in (
            ("hat_xi_ratio", ratio),
            ("limit_value", limit),
            ("abs_error", abs(ratio - limit)),
        ):
            rows.append(_aggregate_row(n, stat, [val]))
    return rows


def _aggregate_row(n: int, statistic: str, values) -> dict:
    arr = np.asarray(values, dtype=np.float64)
    q25, med, q75 = np.quantile(arr, [0.25, 0.5, 0.75])
    return {
        "n": int(n),
        "statistic": statistic,
        "mean": float(arr.mean()),
        "sd": float(arr.std(ddof=1)) if arr.size > 1 else 0.0,
        "median": float(med),
        "q25": float(q25),
        "q75": float(q75),
        "count": int(arr.size),
    }


def run_experiment(config: ExperimentConfig, workers: int | None = 1) -> ExperimentReport:
    """Run the configured experiment over n_grid x replicates.

    Replicates run in parallel (deterministic per-replicate substreams,
    aggregation in replicate order), so the report content is identical
    at any worker count; wall_seconds is the only volatile field.
    """
    config = config.validated()
    start = time.perf_counter()
    report = ExperimentReport(config=config)

    if config.theorem_id == "subtree":
        report.results = _subtree_rows(config)
        report.wall_seconds = time.perf_counter() - start
        return report

    for n in config.n_grid:
        items = [
            (config.theorem_id, n, config.seed, r, config.c, config.alpha, config.epsilon)
            for r in range(config.replicates)
        ]
        per_rep = replicate_map(_replicate_statistics, items, workers)
        stats_names = sorted(per_rep[0].keys())
        for stat in stats_names:
            values = [d[stat] for d in per_rep]
            report.results.append(_aggregate_row(n, stat, values))
            if config.keep_raw:
                report.raw.extend(
                    (n, r, stat, float(v)) for r, v in enumerate(values)
                )
    report.wall_seconds = time.perf_counter() - start
    return report
