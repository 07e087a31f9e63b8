"""Canonical classes of small connected digraphs, and their census.

A pattern on ``k`` labeled vertices is encoded as an adjacency bitmask with
bit ``i*k + j`` set iff the arc ``i -> j`` is present (diagonal unused). The
canonical code of a pattern is the minimum mask over all ``k!`` relabelings;
two patterns are isomorphic iff their codes match. For k=3 there are 13
weakly connected classes, for k=4 there are 199.

Triad classes (k=3) carry the conventional census ids 1..13; the id table
ships as package data (``data/triad_ids.json``) so it can be corrected
without touching code. Tetrad classes are numbered 1..199 by ascending
canonical code.

``enumerate_full`` visits every weakly connected induced k-subgraph exactly
once with the ESU recursion (grow a vertex set from each root, extending
only through exclusive neighbors with larger ids). ``enumerate_sampled``
descends each recursion level ``d`` with probability ``p_d`` and weights
each completed subgraph by ``1 / prod(p)``, an unbiased estimator of the
full counts.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import IO, Iterable

import numpy as np

from .graph import DirectedGraph

SUPPORTED_SIZES = (3, 4)


def _compact_positions(k: int) -> list[tuple[int, int]]:
    """Off-diagonal (i, j) slots in row-major order; index = compact bit."""
    return [(i, j) for i in range(k) for j in range(k) if i != j]


def _compact_to_full(mask: int, k: int) -> int:
    full = 0
    for c, (i, j) in enumerate(_compact_positions(k)):
        if mask >> c & 1:
            full |= 1 << (i * k + j)
    return full


def _full_to_compact(mask: int, k: int) -> int:
    compact = 0
    for c, (i, j) in enumerate(_compact_positions(k)):
        if mask >> (i * k + j) & 1:
            compact |= 1 << c
    return compact


def _connected_mask(mask: int, k: int) -> bool:
    """Weak connectivity of the compact-encoded pattern (union-find)."""
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c, (i, j) in enumerate(_compact_positions(k)):
        if mask >> c & 1:
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    return len({find(x) for x in range(k)}) == 1


def _canonicalize_all(k: int) -> tuple[np.ndarray, np.ndarray]:
    """For every compact mask: its canonical compact mask, and connectivity."""
    positions = _compact_positions(k)
    index = {p: c for c, p in enumerate(positions)}
    nbits = len(positions)
    masks = np.arange(1 << nbits, dtype=np.int64)
    canon = masks.copy()
    for perm in itertools.permutations(range(k)):
        remapped = np.zeros_like(masks)
        for c, (i, j) in enumerate(positions):
            dest = index[(perm[i], perm[j])]
            remapped |= ((masks >> c) & 1) << dest
        np.minimum(canon, remapped, out=canon)
    connected = np.fromiter(
        (_connected_mask(m, k) for m in range(1 << nbits)),
        dtype=bool, count=1 << nbits)
    return canon, connected


@dataclass(frozen=True)
class SubgraphClass:
    """One isomorphism class of weakly connected k-vertex digraphs."""

    k: int
    export_id: int
    canonical_code: int
    arc_count: int
    name: str

    @property
    def adjacency_string(self) -> str:
        """Row-major 0/1 matrix string: char ``i*k+j`` is the arc i->j."""
        return "".join(
            "1" if self.canonical_code >> m & 1 else "0"
            for m in range(self.k * self.k))


class SubgraphClassTable:
    """All connected k-vertex classes, ordered by export id."""

    def __init__(self, k: int, classes: list[SubgraphClass], lut: np.ndarray):
        self.k = k
        self.classes = tuple(classes)
        self._lut = lut
        self._by_code = {c.canonical_code: c for c in classes}
        self._by_export = {c.export_id: c for c in classes}

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def class_by_export_id(self, export_id: int) -> SubgraphClass:
        return self._by_export[export_id]

    def class_by_code(self, code: int) -> SubgraphClass:
        return self._by_code[code]

    def classify_lut(self) -> np.ndarray:
        """compact mask -> class index in table order; -1 for disconnected."""
        return self._lut

    def export_ids(self) -> np.ndarray:
        return np.array([c.export_id for c in self.classes], dtype=np.int64)


def _load_triad_ids() -> dict[int, tuple[int, str]]:
    payload = json.loads(
        resources.files("wordmotifs.data").joinpath("triad_ids.json")
        .read_text(encoding="utf-8"))
    return {
        entry["canonical_code"]: (entry["export_id"], entry["name"])
        for entry in payload["classes"]
    }


@lru_cache(maxsize=None)
def build_class_table(k: int) -> SubgraphClassTable:
    """Enumerate every connected pattern, canonicalize, attach export ids."""
    if k not in SUPPORTED_SIZES:
        raise ValueError(f"subgraph size must be one of {SUPPORTED_SIZES}")
    canon, connected = _canonicalize_all(k)
    codes = np.unique(canon[connected])
    expected = {3: 13, 4: 199}[k]
    if len(codes) != expected:
        raise AssertionError(
            f"class enumeration for k={k} found {len(codes)} classes, "
            f"expected {expected}")

    if k == 3:
        id_map = _load_triad_ids()
        full_codes = [_compact_to_full(int(c), k) for c in codes]
        if set(full_codes) != set(id_map):
            raise AssertionError("triad id table does not match enumeration")
        labeled = sorted(
            (id_map[fc][0], fc, id_map[fc][1]) for fc in full_codes)
    else:
        labeled = [
            (rank, _compact_to_full(int(c), k), str(rank))
            for rank, c in enumerate(codes, start=1)
        ]

    classes = [
        SubgraphClass(k=k, export_id=eid, canonical_code=fc,
                      arc_count=bin(fc).count("1"), name=name)
        for eid, fc, name in labeled
    ]
    index_of_code = {
        _full_to_compact(c.canonical_code, k): i
        for i, c in enumerate(classes)
    }
    lut = np.full(canon.shape, -1, dtype=np.int16)
    conn_idx = np.nonzero(connected)[0]
    for m in conn_idx.tolist():
        lut[m] = index_of_code[int(canon[m])]
    lut.setflags(write=False)
    return SubgraphClassTable(k, classes, lut)


def canonical_class(mask: int, k: int) -> SubgraphClass:
    """Classify a full-encoding adjacency bitmask of a connected pattern."""
    table = build_class_table(k)
    if mask < 0 or mask >= 1 << (k * k):
        raise ValueError(f"mask out of range for k={k}")
    diagonal = sum(1 << (i * k + i) for i in range(k))
    if mask & diagonal:
        raise ValueError("mask has self-loop bits set")
    idx = int(table.classify_lut()[_full_to_compact(mask, k)])
    if idx < 0:
        raise ValueError("pattern is not weakly connected")
    return table.classes[idx]


@dataclass
class CensusResult:
    """Per-class induced-subgraph counts for one graph."""

    k: int
    counts: np.ndarray  # aligned with build_class_table(k).classes

    def __post_init__(self):
        table = build_class_table(self.k)
        self.counts = np.asarray(self.counts)
        if self.counts.shape != (len(table),):
            raise ValueError("counts length does not match the class table")

    @property
    def table(self) -> SubgraphClassTable:
        return build_class_table(self.k)

    @property
    def total(self):
        return self.counts.sum()

    @property
    def frequencies(self) -> np.ndarray:
        total = self.counts.sum()
        if total == 0:
            return np.zeros(len(self.counts))
        return self.counts / total


def _require_size(k: int) -> None:
    if k not in SUPPORTED_SIZES:
        raise ValueError(f"subgraph size must be one of {SUPPORTED_SIZES}")


def enumerate_full(g: DirectedGraph, k: int) -> CensusResult:
    """Exact census of weakly connected induced k-subgraphs (ESU)."""
    from ._esu import esu_census

    _require_size(k)
    table = build_class_table(k)
    counts = np.zeros(len(table), dtype=np.int64)
    if g.n >= k:
        und_indptr, und_indices, out_indptr, out_indices = g.csr_arrays()
        esu_census(g.n, und_indptr, und_indices, out_indptr, out_indices,
                   k, table.classify_lut(), counts,
                   np.ones(k), np.uint64(0), False)
    return CensusResult(k=k, counts=counts)


def enumerate_sampled(
    g: DirectedGraph,
    k: int,
    probabilities: Iterable[float],
    seed: int,
) -> CensusResult:
    """RAND-ESU census: unbiased estimated counts (float-valued).

    Each recursion level ``d`` is entered with probability ``p_d``; every
    subgraph that survives contributes ``1 / prod(p)`` to its class. With
    all probabilities 1 the result equals ``enumerate_full`` exactly.

    Per-root randomness is derived by mixing ``seed`` with the root vertex
    id (splitmix64), so results are reproducible and independent of any
    parallel scheduling of roots.
    """
    from ._esu import esu_census
    from ._rng import derive_seed

    _require_size(k)
    probs = np.asarray(list(probabilities), dtype=np.float64)
    if probs.shape != (k,):
        raise ValueError(f"need exactly {k} probabilities")
    if (probs <= 0).any() or (probs > 1).any():
        raise ValueError("probabilities must lie in (0, 1]")
    table = build_class_table(k)
    raw = np.zeros(len(table), dtype=np.int64)
    if g.n >= k:
        und_indptr, und_indices, out_indptr, out_indices = g.csr_arrays()
        esu_census(g.n, und_indptr, und_indices, out_indptr, out_indices,
                   k, table.classify_lut(), raw,
                   probs, np.uint64(derive_seed("rand-esu", seed)), True)
    weight = 1.0 / float(np.prod(probs))
    return CensusResult(k=k, counts=raw * weight)


def write_census_tsv(result: CensusResult, target: str | Path | IO[str]) -> None:
    """TSV: one row per class, ordered by export id, full float precision."""
    fh, close = _open_for_write(target)
    try:
        fh.write(f"# k={result.k}\n")
        fh.write("class_export_id\tcanonical_code\tadjacency_string\t"
                 "arc_count\tcount\tfrequency\n")
        freqs = result.frequencies
        for i, cls in enumerate(result.table.classes):
            count = result.counts[i]
            count_str = str(int(count)) if float(count).is_integer() else repr(float(count))
            fh.write(f"{cls.export_id}\t{cls.canonical_code}\t"
                     f"{cls.adjacency_string}\t{cls.arc_count}\t"
                     f"{count_str}\t{repr(float(freqs[i]))}\n")
    finally:
        if close:
            fh.close()


def read_census_tsv(source: str | Path | IO[str]) -> CensusResult:
    lines = _read_lines(source)
    k = None
    rows = {}
    for line in lines:
        line = line.rstrip("\n")
        if line.startswith("# k="):
            k = int(line.split("=", 1)[1])
            continue
        if not line or line.startswith("#") or line.startswith("class_export_id"):
            continue
        fields = line.split("\t")
        count = float(fields[4])
        rows[int(fields[0])] = count
    if k is None:
        raise ValueError("census TSV is missing its '# k=' header")
    table = build_class_table(k)
    counts = np.array([rows[c.export_id] for c in table.classes])
    if np.all(counts == np.floor(counts)):
        counts = counts.astype(np.int64)
    return CensusResult(k=k, counts=counts)


def _open_for_write(target):
    if hasattr(target, "write"):
        return target, False
    return open(target, "w", encoding="utf-8"), True


def _read_lines(source) -> list[str]:
    if hasattr(source, "read"):
        return source.read().splitlines()
    return Path(source).read_text(encoding="utf-8").splitlines()
