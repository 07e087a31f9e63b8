"""Degree-preserving randomization by arc swaps.

A swap round picks two arcs ``a->b`` and ``c->d`` and rewires them to
``a->d`` and ``c->b``, which preserves every vertex's in- and out-degree.
A round is retried up to ``exchange_attempts`` times when the rewire would
create a self-loop or a duplicate arc.

With ``preserve_reciprocal`` on (the default), arcs are partitioned into
reciprocal pairs and single arcs: single arcs swap only with single arcs
(and may not create an arc whose reverse exists), reciprocal pairs swap
only with reciprocal pairs, moving both directions together. The number of
mutual dyads is then invariant. Each round targets one partition, chosen
with probability proportional to its share of the arcs.

The interpretation of the two knobs: ``exchanges_per_edge`` is the number
of attempted swap rounds per arc (total rounds = value * K), and
``exchange_attempts`` is the number of retries within a round.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from ._rng import derive_rng
from .graph import DirectedGraph

LOW_SUCCESS_THRESHOLD = 0.5


@dataclass(frozen=True)
class RandomizeConfig:
    num_networks: int = 1000
    exchanges_per_edge: int = 3
    exchange_attempts: int = 3
    preserve_reciprocal: bool = True
    seed: int = 0

    def __post_init__(self):
        for name in ("num_networks", "exchanges_per_edge", "exchange_attempts"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


@dataclass(frozen=True)
class SwapReport:
    attempted: int
    successful: int

    @property
    def success_ratio(self) -> float:
        return self.successful / self.attempted if self.attempted else 0.0


def _try_single_swap(rand, singles, arc_set, check_reverse):
    ns = len(singles)
    if ns < 2:
        return False
    # int(rand()*ns) floors strictly below ns; bias is negligible here
    i = int(rand() * ns)
    j = int(rand() * ns)
    if i == j:
        return False
    a, b = singles[i]
    c, d = singles[j]
    if a == d or c == b:
        return False
    if (a, d) in arc_set or (c, b) in arc_set:
        return False
    if check_reverse and ((d, a) in arc_set or (b, c) in arc_set):
        return False
    arc_set.discard((a, b))
    arc_set.discard((c, d))
    arc_set.add((a, d))
    arc_set.add((c, b))
    singles[i] = (a, d)
    singles[j] = (c, b)
    return True


def _try_mutual_swap(rand, mutuals, arc_set):
    nm = len(mutuals)
    if nm < 2:
        return False
    i = int(rand() * nm)
    j = int(rand() * nm)
    if i == j:
        return False
    a, b = mutuals[i]
    if rand() < 0.5:
        a, b = b, a
    c, d = mutuals[j]
    if rand() < 0.5:
        c, d = d, c
    if a == d or c == b:
        return False
    if ((a, d) in arc_set or (d, a) in arc_set
            or (c, b) in arc_set or (b, c) in arc_set):
        return False
    for arc in ((a, b), (b, a), (c, d), (d, c)):
        arc_set.discard(arc)
    for arc in ((a, d), (d, a), (c, b), (b, c)):
        arc_set.add(arc)
    mutuals[i] = (a, d)
    mutuals[j] = (c, b)
    return True


def randomize(
    g: DirectedGraph,
    config: RandomizeConfig,
    replica_index: int = 0,
) -> tuple[DirectedGraph, SwapReport]:
    """One randomized replica with the same degree sequences as ``g``.

    The random stream is fully determined by ``(config.seed,
    replica_index)``; see ``_rng.derive_rng``.
    """
    if g.num_arcs < 2:
        raise ValueError("randomization needs at least 2 arcs to swap")
    rng = derive_rng("replica", config.seed, replica_index)
    arc_set = set(g.arc_set)

    if config.preserve_reciprocal:
        mutuals = [(u, v) for (u, v) in g.arcs.tolist() if u < v and (v, u) in arc_set]
        singles = [(u, v) for (u, v) in g.arcs.tolist() if (v, u) not in arc_set]
        single_share = len(singles) / g.num_arcs
    else:
        mutuals = []
        singles = [tuple(arc) for arc in g.arcs.tolist()]
        single_share = 1.0

    rounds = config.exchanges_per_edge * g.num_arcs
    attempts = config.exchange_attempts
    reciprocal = config.preserve_reciprocal
    split_classes = reciprocal and mutuals and singles
    rand = rng.random
    successful = 0
    for _ in range(rounds):
        for _attempt in range(attempts):
            if mutuals and (not singles or
                            (split_classes and rand() >= single_share)):
                ok = _try_mutual_swap(rand, mutuals, arc_set)
            else:
                ok = _try_single_swap(rand, singles, arc_set,
                                      check_reverse=reciprocal)
            if ok:
                successful += 1
                break

    report = SwapReport(attempted=rounds, successful=successful)
    if report.success_ratio < LOW_SUCCESS_THRESHOLD:
        warnings.warn(
            f"only {successful}/{rounds} swap rounds succeeded "
            f"(ratio {report.success_ratio:.3f}); the network may be too "
            f"dense or too constrained to randomize")
    arcs = np.array(sorted(arc_set), dtype=np.int64)
    replica = DirectedGraph(g.n, arcs, original_ids=g.original_ids)
    return replica, report


def generate_ensemble(
    g: DirectedGraph,
    config: RandomizeConfig,
) -> Iterator[tuple[DirectedGraph, SwapReport]]:
    """Stream ``num_networks`` replicas; replica i depends only on (seed, i)."""
    for i in range(config.num_networks):
        yield randomize(g, config, i)
