"""Numba kernel for (RAND-)ESU subgraph enumeration.

The recursion is unrolled onto explicit per-depth stacks so the whole walk
is a single nopython loop. A stamp array tracks the closure
``V_sub + N(V_sub)`` for the exclusive-neighbor test; only vertices with id
greater than the root ever need stamps beyond the root's own neighborhood,
which keeps backtracking O(new marks).

Sampling uses a splitmix64 stream per root vertex (state = seed mixed with
the root id), so sampled results do not depend on how roots are scheduled.
"""
from __future__ import annotations

import numpy as np
from numba import njit

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_ROOT_MIX = np.uint64(0xD1B54A32D192ED03)
_INV_2_53 = 1.0 / 9007199254740992.0


@njit(cache=True, nogil=True)
def _has_arc(indptr, indices, u, v):
    lo = indptr[u]
    hi = indptr[u + 1]
    while lo < hi:
        mid = (lo + hi) >> 1
        x = indices[mid]
        if x == v:
            return True
        if x < v:
            lo = mid + 1
        else:
            hi = mid
    return False


@njit(cache=True, nogil=True)
def _rand01(state):
    state = state + _GOLDEN
    z = state
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    z = z ^ (z >> np.uint64(31))
    return state, float(z >> np.uint64(11)) * _INV_2_53


@njit(cache=True, nogil=True)
def esu_census(n, und_indptr, und_indices, out_indptr, out_indices,
               k, lut, counts, probs, seed, sample):
    """Count connected induced k-subgraphs per class into ``counts``.

    ``lut`` maps the compact off-diagonal bitmask of a pattern (bits in
    row-major (i, j) order, i != j, labeled by insertion order) to the
    class index. Returns the number of subgraphs visited.
    """
    mark = np.zeros(n, dtype=np.uint8)
    sub = np.empty(k, dtype=np.int64)
    ext = np.empty((k, n if n > 0 else 1), dtype=np.int64)
    ext_len = np.zeros(k, dtype=np.int64)
    ext_ptr = np.zeros(k, dtype=np.int64)
    ext_new = np.zeros(k, dtype=np.int64)  # first index marked at this depth
    total = 0

    for v in range(n):
        state = seed ^ (np.uint64(v) * _ROOT_MIX)
        if sample and probs[0] < 1.0:
            state, r = _rand01(state)
            if r >= probs[0]:
                continue

        mark[v] = 1
        for idx in range(und_indptr[v], und_indptr[v + 1]):
            mark[und_indices[idx]] = 1
        m1 = 0
        for idx in range(und_indptr[v], und_indptr[v + 1]):
            u = und_indices[idx]
            if u > v:
                ext[1, m1] = u
                m1 += 1
        sub[0] = v
        d = 1
        ext_len[1] = m1
        ext_ptr[1] = 0
        ext_new[1] = m1

        while d >= 1:
            if ext_ptr[d] < ext_len[d]:
                w = ext[d, ext_ptr[d]]
                ext_ptr[d] += 1
                if sample and probs[d] < 1.0:
                    state, r = _rand01(state)
                    if r >= probs[d]:
                        continue
                if d + 1 == k:
                    sub[d] = w
                    mask = 0
                    bit = 0
                    for i in range(k):
                        ui = sub[i]
                        for j in range(k):
                            if i == j:
                                continue
                            if _has_arc(out_indptr, out_indices, ui, sub[j]):
                                mask |= 1 << bit
                            bit += 1
                    counts[lut[mask]] += 1
                    total += 1
                else:
                    sub[d] = w
                    m2 = 0
                    for t in range(ext_ptr[d], ext_len[d]):
                        ext[d + 1, m2] = ext[d, t]
                        m2 += 1
                    first_new = m2
                    for idx in range(und_indptr[w], und_indptr[w + 1]):
                        u = und_indices[idx]
                        if u > v and mark[u] == 0:
                            mark[u] = 1
                            ext[d + 1, m2] = u
                            m2 += 1
                    d += 1
                    ext_len[d] = m2
                    ext_ptr[d] = 0
                    ext_new[d] = first_new
            else:
                for t in range(ext_new[d], ext_len[d]):
                    mark[ext[d, t]] = 0
                d -= 1

        mark[v] = 0
        for idx in range(und_indptr[v], und_indptr[v + 1]):
            mark[und_indices[idx]] = 0

    return total
