"""End-to-end motif analysis: real census, null ensemble, significance.

Replica generation and the census of each replica are embarrassingly
parallel: replica ``i`` derives its entire random stream from
``(config.seed, i)``, so any worker can produce any replica. Worker
results are reduced strictly in replica-index order, which makes the
output identical for every worker count.

Seed derivation paths (see ``_rng.derive_seed``):
  - replica graph i:      ("replica", seed, i)
  - sampled census of i:  ("rand-esu", derive_seed(seed, "census", i))
  - sampled real census:  ("rand-esu", derive_seed(seed, "census", "real"))
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._rng import derive_seed
from .census import CensusResult, enumerate_full, enumerate_sampled
from .graph import DirectedGraph
from .nullmodel import RandomizeConfig, SwapReport, randomize
from .significance import (EnsembleAccumulator, EnsembleStats,
                           SignificanceProfile, build_profile)


@dataclass
class AnalysisResult:
    dataset: str
    real: CensusResult
    stats: EnsembleStats
    profile: SignificanceProfile
    swaps: SwapReport  # summed over all replicas


def _census(g: DirectedGraph, k: int, probs, seed) -> CensusResult:
    if probs is None:
        return enumerate_full(g, k)
    return enumerate_sampled(g, k, probs, seed=seed)


def _replica_counts(g: DirectedGraph, k: int, probs,
                    config: RandomizeConfig, index: int):
    replica, report = randomize(g, config, index)
    result = _census(replica, k, probs,
                     seed=derive_seed(config.seed, "census", index))
    return result.counts, report


_WORKER = {}


def _worker_init(n, arcs, k, probs, config):
    _WORKER["graph"] = DirectedGraph(n, arcs)
    _WORKER["args"] = (k, probs, config)


def _worker_run(indices: Sequence[int]):
    g = _WORKER["graph"]
    k, probs, config = _WORKER["args"]
    out = []
    for i in indices:
        counts, report = _replica_counts(g, k, probs, config, i)
        out.append((i, counts, report.attempted, report.successful))
    return out


def run_analysis(
    g: DirectedGraph,
    *,
    k: int = 3,
    config: RandomizeConfig = RandomizeConfig(),
    sample_probs: Sequence[float] | None = None,
    dataset: str = "dataset",
    workers: int = 1,
) -> AnalysisResult:
    """Census the graph, build the null ensemble, compute significance."""
    probs = list(sample_probs) if sample_probs is not None else None
    real = _census(g, k, probs, seed=derive_seed(config.seed, "census", "real"))
    acc = EnsembleAccumulator(real)
    m = config.num_networks

    attempted = 0
    successful = 0
    if workers <= 1:
        for i in range(m):
            counts, report = _replica_counts(g, k, probs, config, i)
            acc.add(counts)
            attempted += report.attempted
            successful += report.successful
    else:
        chunk = max(1, -(-m // (workers * 4)))
        batches = [list(range(start, min(start + chunk, m)))
                   for start in range(0, m, chunk)]
        results: dict[int, np.ndarray] = {}
        with ProcessPoolExecutor(
                max_workers=workers, initializer=_worker_init,
                initargs=(g.n, g.arcs, k, probs, config)) as pool:
            for batch_out in pool.map(_worker_run, batches):
                for i, counts, att, suc in batch_out:
                    results[i] = counts
                    attempted += att
                    successful += suc
        for i in range(m):
            acc.add(results[i])

    stats = acc.result()
    profile = build_profile(real, stats, dataset)
    return AnalysisResult(dataset=dataset, real=real, stats=stats,
                          profile=profile,
                          swaps=SwapReport(attempted, successful))
