"""Exact samplers for the spectral-radius statistic of each ensemble.

None of these build a matrix.  Each ensemble's set of eigenvalue moduli is
distributionally a set of independent scalar variables:

    spherical:   |z_(j)|^2 ~ B_j/(1-B_j),  B_j ~ Beta(j, n-j+1)
    truncated:   |z_(j)|^2 ~ Beta(j, n-p)
    product:     |z_(j)|^2 ~ prod_{r=1}^k s_{j,r},  s_{j,r} ~ Gamma(j)

so the radius is a max over n (or p) independent draws, O(n*k) work per
replicate, exact in distribution.

Randomness is counter-based: replicate i of a run with master seed s draws
from a Philox stream keyed (s, i).  Parallel execution partitions replicate
indices across workers; since every replicate owns its own stream, the
assembled batch is bit-identical for any worker count or schedule.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import WorkBudgetError
from .norming import EnsembleSpec, GinibreProduct, Spherical, TruncatedUnitary

__all__ = [
    "DEFAULT_WORK_BUDGET",
    "RandomStream",
    "SampleBatch",
    "sample_gamma",
    "sample_spherical_radius",
    "sample_truncated_radius",
    "sample_product_log_radius",
    "run_monte_carlo",
]

DEFAULT_WORK_BUDGET = 1e9

_UINT64_MAX = 2**64 - 1

# row block for the product sampler's (n, k) gamma matrix; blocks of rows
# preserve the element order of the full C-order fill, so results do not
# depend on the block size
_PRODUCT_BLOCK_ELEMS = 4_000_000


def _require_u64(name: str, value) -> int:
    if int(value) != value:
        raise ValueError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if not (0 <= value <= _UINT64_MAX):
        raise ValueError(f"{name} must fit in an unsigned 64-bit integer, got {value}")
    return value


@dataclass
class RandomStream:
    """One replicate's private random stream.

    Philox is a counter-based generator: the pair (master_seed, stream_index)
    is its key, so stream identity is a pure function of the two integers and
    streams with distinct pairs are independent.
    """

    master_seed: int
    stream_index: int
    _generator: np.random.Generator | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.master_seed = _require_u64("master_seed", self.master_seed)
        self.stream_index = _require_u64("stream_index", self.stream_index)

    @property
    def generator(self) -> np.random.Generator:
        if self._generator is None:
            key = np.array([self.master_seed, self.stream_index], dtype=np.uint64)
            self._generator = np.random.Generator(np.random.Philox(key=key))
        return self._generator


@dataclass
class SampleBatch:
    """Raw Monte Carlo output: one statistic per replicate, in replicate
    order.  For GinibreProduct the statistics are natural-log radii."""

    spec: EnsembleSpec
    statistics: np.ndarray
    seed: int
    reps: int

    def __post_init__(self):
        self.statistics = np.asarray(self.statistics, dtype=float)
        if self.statistics.shape != (self.reps,):
            raise ValueError(
                f"statistics must have shape ({self.reps},), got {self.statistics.shape}"
            )
        if not np.all(np.isfinite(self.statistics)):
            raise ValueError("statistics must all be finite")


def sample_gamma(shape: float, rng: RandomStream) -> float:
    """One Gamma(shape, 1) variate.

    Marsaglia-Tsang rejection with the squeeze step for shape >= 1 and the
    standard U^(1/shape) boost below 1 (the generator's native method).
    """
    shape = float(shape)
    if not (math.isfinite(shape) and shape > 0.0):
        raise ValueError(f"shape must be a positive finite real, got {shape}")
    return float(rng.generator.standard_gamma(shape))


def sample_spherical_radius(n: int, rng: RandomStream) -> float:
    """max_j sqrt(B_j/(1-B_j)) over j = 1..n with B_j ~ Beta(j, n-j+1).

    B_j/(1-B_j) is formed as G1/G2 from the two defining Gamma variates;
    1-B_j is never computed, so j near n (B_j near 1) loses no precision.
    """
    g = rng.generator
    g1 = g.standard_gamma(np.arange(1.0, n + 1.0))
    g2 = g.standard_gamma(np.arange(float(n), 0.0, -1.0))
    return float(np.sqrt(np.max(g1 / g2)))


def sample_truncated_radius(n: int, p: int, rng: RandomStream) -> float:
    """max_j sqrt(Beta(j, n-p)) over j = 1..p; always in [0, 1]."""
    g = rng.generator
    g1 = g.standard_gamma(np.arange(1.0, p + 1.0))
    g2 = g.standard_gamma(np.full(p, float(n - p)))
    return float(np.sqrt(np.max(g1 / (g1 + g2))))


def _truncated_radii_coupled(n: int, ps: list[int], rng: RandomStream) -> list[float]:
    """Radii for several p values from one coupled construction.

    Writes every Gamma as a sum of unit exponentials: G1_j = sum of j draws
    E[j, :j], G2_j(m) = sum of the first m draws of a second row-indexed
    array.  Shrinking m = n - p (larger p) can only shrink G2_j, so each
    Beta draw B_j = G1_j/(G1_j + G2_j) grows, and the max over a larger j
    range grows again: the returned radii are a.s. nondecreasing in p.

    This coupling is the construction under which the monotonicity property
    of the truncated radius is meaningful; the production sampler draws each
    Gamma directly and therefore cannot share them across different p.
    """
    p_max = max(ps)
    m_max = n - min(ps)
    g = rng.generator
    e1 = g.standard_exponential((p_max, p_max))
    e2 = g.standard_exponential((p_max, m_max))
    g1 = np.array([e1[j, : j + 1].sum() for j in range(p_max)])
    out = []
    for p in ps:
        m = n - p
        g2 = e2[:p, :m].sum(axis=1)
        b = g1[:p] / (g1[:p] + g2)
        out.append(float(np.sqrt(np.max(b))))
    return out


def sample_product_log_radius(n: int, k: int, rng: RandomStream) -> float:
    """(1/2) max_j sum_{r=1}^k log s_{j,r} with s_{j,r} ~ Gamma(j).

    Accumulates in log space; the product itself (over k factors) would
    overflow double precision at k of a few hundred.  Rows are drawn in
    blocks to bound memory, which leaves the draw order (row-major) and
    hence the result unchanged.
    """
    g = rng.generator
    block = max(1, _PRODUCT_BLOCK_ELEMS // k)
    best = -np.inf
    for j0 in range(0, n, block):
        j1 = min(n, j0 + block)
        shapes = np.arange(j0 + 1.0, j1 + 1.0)[:, None]
        draws = g.standard_gamma(np.broadcast_to(shapes, (j1 - j0, k)))
        row_sums = np.sum(np.log(draws), axis=1)
        best = max(best, float(np.max(row_sums)))
    return 0.5 * best


def _sample_one(spec: EnsembleSpec, rng: RandomStream) -> float:
    if isinstance(spec, Spherical):
        return sample_spherical_radius(spec.n, rng)
    if isinstance(spec, TruncatedUnitary):
        return sample_truncated_radius(spec.n, spec.p, rng)
    if isinstance(spec, GinibreProduct):
        return sample_product_log_radius(spec.n, spec.k, rng)
    raise ValueError(f"unknown ensemble spec: {spec!r}")


def _replicate_range(spec: EnsembleSpec, master_seed: int, start: int, stop: int) -> np.ndarray:
    out = np.empty(stop - start)
    for i in range(start, stop):
        out[i - start] = _sample_one(spec, RandomStream(master_seed, i))
    return out


def run_monte_carlo(
    spec: EnsembleSpec,
    reps: int,
    master_seed: int,
    workers: int = 1,
    budget: float = DEFAULT_WORK_BUDGET,
) -> SampleBatch:
    """reps independent replicates of the radius statistic.

    Replicate i always draws from the stream keyed (master_seed, i), so the
    assembled batch is bit-identical for every workers value; workers only
    controls how the index range is partitioned across processes.

    Raises WorkBudgetError before doing any sampling if reps times the
    per-replicate work (n*k for products, 2n / 2p otherwise) exceeds
    ``budget``.
    """
    if int(reps) != reps or reps < 1:
        raise ValueError(f"reps must be a positive integer, got {reps}")
    reps = int(reps)
    if int(workers) != workers or workers < 1:
        raise ValueError(f"workers must be a positive integer, got {workers}")
    workers = int(workers)
    master_seed = _require_u64("master_seed", master_seed)

    required = spec.work_per_replicate * reps
    if budget is not None and required > budget:
        raise WorkBudgetError(
            f"requested work {required:.3g} draw-units exceeds budget {budget:.3g}; "
            "raise the budget explicitly to run this",
            required=required,
            budget=budget,
        )

    if workers == 1:
        stats = _replicate_range(spec, master_seed, 0, reps)
    else:
        n_chunks = min(workers * 4, reps)
        bounds = np.linspace(0, reps, n_chunks + 1, dtype=int)
        pieces = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_replicate_range, spec, master_seed, int(a), int(b))
                for a, b in zip(bounds[:-1], bounds[1:])
                if b > a
            ]
            for fut in futures:
                pieces.append(fut.result())
        stats = np.concatenate(pieces)
    return SampleBatch(spec=spec, statistics=stats, seed=master_seed, reps=reps)
