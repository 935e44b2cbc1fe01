"""Monte Carlo runs of the gluing solver under the random right-hand side model.

Matrices stay fixed; every trial draws fresh right-hand sides from its own
substream, so results do not depend on scheduling or worker count.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .deficit import Growth, VectorFamily, min_deficit_exact, min_deficit_greedy
from .errors import DimensionMismatch
from .linalg import Mat
from .mrhs import MrhsSystem, check_order, make_equation, random_rhs, rank_profile, solve_system
from .rng import make_rng, substream

ORDER_STRATEGIES = ("given", "greedy", "exact", "random")
ORDER_STREAM = 0xFFFFFFFF


def matrices_family(mats: Sequence[Mat]) -> VectorFamily:
    """Row sets of the matrices as a rank-mode family."""
    return VectorFamily(mats[0].ncols, mats[0].field, tuple(m.rows for m in mats),
                        max(m.nrows for m in mats))


def choose_order(mats: Sequence[Mat], strategy: str = "given", seed=None) -> list[int]:
    m = len(mats)
    if strategy == "given":
        return list(range(m))
    if strategy == "random":
        rng = substream(seed, ORDER_STREAM) if isinstance(seed, int) else make_rng(seed)
        return [int(i) for i in rng.permutation(m)]
    fam = matrices_family(mats)
    if strategy == "greedy":
        return list(min_deficit_greedy(fam, Growth.RANK).permutation)
    if strategy == "exact":
        return list(min_deficit_exact(fam, Growth.RANK).permutation)
    raise ValueError(f"unknown order strategy {strategy!r}; pick one of {ORDER_STRATEGIES}")


@dataclass(frozen=True)
class ExperimentRow:
    trial: int
    cost: int
    max_excess: int
    predicted: float
    ratio: float
    final_size: int
    solutions: int
    sizes: tuple[int, ...]


def draw_system(mats: Sequence[Mat], rng) -> MrhsSystem:
    eqs = tuple(make_equation(a, random_rhs(a, rng)) for a in mats)
    return MrhsSystem(mats[0].ncols, mats[0].field, eqs)


def run_trial(mats: Sequence[Mat], order: Sequence[int], seed: int, trial: int) -> ExperimentRow:
    sys = draw_system(mats, substream(seed, trial))
    final, trace = solve_system(sys, order)
    q = sys.field.q
    ranks = trace.ranks
    excess = max(r - k for k, r in enumerate(ranks, start=1))
    predicted = sys.m * float(q) ** excess
    cost = trace.total
    return ExperimentRow(
        trial=trial,
        cost=cost,
        max_excess=excess,
        predicted=predicted,
        ratio=cost / predicted,
        final_size=len(final.s),
        solutions=len(final.s) * q ** (sys.n - final.t),
        sizes=tuple(trace.sizes),
    )


def _run_chunk(args):
    mats, order, seed, trials = args
    return [run_trial(mats, order, seed, i) for i in trials]


@dataclass
class Simulation:
    order: list[int]
    q: int
    ranks: list[int]
    rows: list[ExperimentRow]

    @property
    def m(self) -> int:
        return len(self.ranks)

    @property
    def predicted_sizes(self) -> list[float]:
        return [float(self.q) ** (r - k) for k, r in enumerate(self.ranks, start=1)]

    @property
    def predicted_bound(self) -> float:
        return self.m * max(self.predicted_sizes)

    @property
    def mean_sizes(self) -> list[float]:
        return np.mean([r.sizes for r in self.rows], axis=0).tolist()

    @property
    def mean_cost(self) -> float:
        return float(np.mean([r.cost for r in self.rows]))

    @property
    def mean_ratio(self) -> float:
        return float(np.mean([r.ratio for r in self.rows]))

    @property
    def max_ratio(self) -> float:
        return max(r.ratio for r in self.rows)

    def size_errors(self, min_predicted: float = 0.0) -> list[tuple[int, float, float, float]]:
        """``(k, predicted, mean, relative error)`` for steps with
        ``predicted >= min_predicted``."""
        out = []
        for k, (p, s) in enumerate(zip(self.predicted_sizes, self.mean_sizes), start=1):
            if p >= min_predicted:
                out.append((k, p, s, abs(s - p) / p))
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS + [f"size_{k}" for k in range(1, self.m + 1)])
        for r in self.rows:
            w.writerow([r.trial, r.cost, r.max_excess, repr(r.predicted), repr(r.ratio),
                        r.final_size, r.solutions, ""] + list(r.sizes))
        w.writerow(["summary", repr(self.mean_cost), self.rows[0].max_excess,
                    repr(self.predicted_bound), repr(self.mean_ratio),
                    repr(float(np.mean([r.final_size for r in self.rows]))),
                    repr(float(np.mean([r.solutions for r in self.rows]))),
                    repr(self.max_ratio)] + [repr(s) for s in self.mean_sizes])
        return buf.getvalue()


CSV_COLUMNS = ["trial", "cost", "max_excess", "predicted_bound", "ratio",
               "final_size", "solutions", "max_ratio"]
CSV_HELP = (
    "CSV columns: trial, cost (sum over glue steps of |S_left|+|S_right|+|S_out|), "
    "max_excess (max_k r_k - k), predicted_bound (m * q^max_excess), ratio (cost / "
    "predicted_bound), final_size (|S| at the end), solutions (final_size * "
    "q^(n - rank)), max_ratio (summary row only), size_1..size_m (|S| after absorbing "
    "k equations). The last row has trial=summary and holds means, with ratio the "
    "mean ratio and max_ratio the largest."
)


def simulate(mats: Sequence[Mat], trials: int, seed: int, order: Sequence[int] | None = None,
             workers: int = 1) -> Simulation:
    """Run ``trials`` independent solves of the fixed matrices ``mats``."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not mats:
        raise DimensionMismatch("no matrices")
    order = check_order(range(len(mats)) if order is None else order, len(mats))
    mats = list(mats)
    if workers > 1:
        chunks = [range(i, trials, workers) for i in range(workers)]
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_run_chunk, [(mats, order, seed, c) for c in chunks]))
        rows = sorted((r for p in parts for r in p), key=lambda r: r.trial)
    else:
        rows = [run_trial(mats, order, seed, i) for i in range(trials)]
    probe = MrhsSystem(mats[0].ncols, mats[0].field,
                       tuple(make_equation(a, ()) for a in mats))
    return Simulation(order, mats[0].field.q, rank_profile(probe, order), rows)
