"""Immutable simple directed graphs and edge-list I/O.

Vertices are dense integers ``0..n-1``. Graphs loaded from edge-list files
keep a remap table (``original_ids``) so output can refer to the labels the
file used. Adjacency is exposed both directed (``out_neighbors`` /
``in_neighbors``) and undirected (``neighbors``, the deduplicated union),
because subgraph enumeration treats connectivity as undirected.
"""
from __future__ import annotations

import warnings
from pathlib import Path
from typing import IO, Iterable, Sequence

import numpy as np


class EdgeListError(ValueError):
    """Malformed edge-list input (bad token count or non-integer field)."""


def _csr(n: int, src: np.ndarray, dst: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sorted CSR adjacency (indptr, indices) from parallel endpoint arrays."""
    order = np.lexsort((dst, src))
    indices = np.ascontiguousarray(dst[order], dtype=np.int64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return indptr, indices


class DirectedGraph:
    """Simple directed graph: no self-loops, no parallel arcs.

    Immutable after construction; cheap to share across worker processes
    (all state lives in numpy arrays).
    """

    def __init__(
        self,
        n: int,
        arcs: Sequence[tuple[int, int]] | np.ndarray,
        original_ids: np.ndarray | None = None,
    ):
        arr = np.asarray(arcs, dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("arcs must be a sequence of (u, v) pairs")
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise ValueError("arc endpoint out of range")
        if arr.size and (arr[:, 0] == arr[:, 1]).any():
            raise ValueError("self-loops are not allowed")
        arr = arr[np.lexsort((arr[:, 1], arr[:, 0]))]
        if arr.shape[0] > 1 and (np.diff(arr, axis=0) == 0).all(axis=1).any():
            raise ValueError("duplicate arcs are not allowed")
        self.n = int(n)
        self._arcs = arr
        self._arcs.setflags(write=False)
        if original_ids is None:
            original_ids = np.arange(n, dtype=np.int64)
        self.original_ids = np.asarray(original_ids, dtype=np.int64)
        if self.original_ids.shape != (n,):
            raise ValueError("original_ids must have one entry per vertex")

        src, dst = arr[:, 0], arr[:, 1]
        self._out_indptr, self._out_indices = _csr(n, src, dst)
        both = np.concatenate([arr, arr[:, ::-1]], axis=0)
        und = np.unique(both, axis=0) if both.size else both.reshape(0, 2)
        self._und_indptr, self._und_indices = _csr(n, und[:, 0], und[:, 1])
        # in-adjacency and the arc hash set are built on first use
        self._in_csr = None
        self._arc_set_cache = None

    @property
    def num_arcs(self) -> int:
        return self._arcs.shape[0]

    @property
    def arcs(self) -> np.ndarray:
        """All arcs as a (K, 2) array, sorted lexicographically."""
        return self._arcs

    @property
    def arc_set(self) -> frozenset:
        if self._arc_set_cache is None:
            self._arc_set_cache = frozenset(map(tuple, self._arcs.tolist()))
        return self._arc_set_cache

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arc_set

    def out_neighbors(self, v: int) -> np.ndarray:
        return self._out_indices[self._out_indptr[v]:self._out_indptr[v + 1]]

    def in_neighbors(self, v: int) -> np.ndarray:
        if self._in_csr is None:
            self._in_csr = _csr(self.n, self._arcs[:, 1], self._arcs[:, 0])
        indptr, indices = self._in_csr
        return indices[indptr[v]:indptr[v + 1]]

    def neighbors(self, v: int) -> np.ndarray:
        """Undirected neighborhood: union of in- and out-neighbors, sorted."""
        return self._und_indices[self._und_indptr[v]:self._und_indptr[v + 1]]

    def csr_arrays(self) -> tuple[np.ndarray, ...]:
        """(und_indptr, und_indices, out_indptr, out_indices) for kernels."""
        return (self._und_indptr, self._und_indices,
                self._out_indptr, self._out_indices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._arcs, other._arcs)

    def __hash__(self):
        return hash((self.n, self._arcs.tobytes()))

    def __repr__(self) -> str:
        return f"DirectedGraph(n={self.n}, arcs={self.num_arcs})"


def degrees(g: DirectedGraph) -> np.ndarray:
    """Per-vertex (in-degree, out-degree) table of shape (n, 2)."""
    table = np.zeros((g.n, 2), dtype=np.int64)
    if g.num_arcs:
        table[:, 0] = np.bincount(g.arcs[:, 1], minlength=g.n)
        table[:, 1] = np.bincount(g.arcs[:, 0], minlength=g.n)
    return table


def neighbors_exclusive(g: DirectedGraph, subset: Iterable[int]) -> set[int]:
    """Vertices adjacent (either direction) to `subset` and not in it."""
    sub = set(subset)
    if not sub:
        raise ValueError("subset must be non-empty")
    out: set[int] = set()
    for v in sub:
        out.update(g.neighbors(v).tolist())
    return out - sub


def load_edgelist(source: str | Iterable[str]) -> DirectedGraph:
    """Parse edge-list text into a DirectedGraph.

    Each data line holds 2-5 whitespace-separated integers; the first two
    are the arc, extra columns (FANMOD color columns) are ignored with a
    warning. ``#`` starts a comment line; blank lines are skipped. Duplicate
    arcs collapse; self-loop lines are dropped with a warning. Vertex ids
    are compacted to ``0..n-1`` preserving numeric order, with the original
    ids kept on the graph.
    """
    lines = source.splitlines() if isinstance(source, str) else source
    pairs: list[tuple[int, int]] = []
    self_loops = 0
    extra_cols = 0
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = stripped.split()
        if not 2 <= len(fields) <= 5:
            raise EdgeListError(
                f"line {lineno}: expected 2-5 integer fields, got {len(fields)}")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise EdgeListError(
                f"line {lineno}: non-integer field in {stripped!r}") from None
        if len(fields) > 2:
            extra_cols += 1
        if u == v:
            self_loops += 1
            continue
        pairs.append((u, v))
    if extra_cols:
        warnings.warn(f"ignored extra columns on {extra_cols} line(s)")
    if self_loops:
        warnings.warn(f"dropped {self_loops} self-loop line(s)")

    if not pairs:
        return DirectedGraph(0, [])
    arr = np.unique(np.asarray(pairs, dtype=np.int64), axis=0)
    ids = np.unique(arr)
    remap = {int(orig): new for new, orig in enumerate(ids.tolist())}
    compact = np.empty_like(arr)
    for row, (u, v) in enumerate(arr.tolist()):
        compact[row, 0] = remap[u]
        compact[row, 1] = remap[v]
    return DirectedGraph(len(ids), compact, original_ids=ids)


def read_edgelist(path: str | Path) -> DirectedGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return load_edgelist(fh)


def save_edgelist(g: DirectedGraph, target: str | Path | IO[str]) -> None:
    """Write arcs as ``u v`` lines using the graph's original vertex ids."""
    if hasattr(target, "write"):
        fh = target
        close = False
    else:
        fh = open(target, "w", encoding="utf-8")
        close = True
    try:
        ids = g.original_ids
        for u, v in g.arcs.tolist():
            fh.write(f"{ids[u]} {ids[v]}\n")
    finally:
        if close:
            fh.close()
