"""Bit-parallel kernels for the two hot scans.

Both scans work on packed bitsets: each row of a (n, W) uint64 array is one
separation's cover set (vertices, or edges, of its small-side subgraph),
W = ceil(bits / 64).

* ``maximal_mask``   -- which rows are <=-maximal under (small subset,
                        big superset) containment.
* ``find_covering_triple`` -- first i <= j <= l whose three rows OR to the
                        full vertex- and edge-mask (the tangle-breaking
                        pattern).

The numba versions compile tight nested loops; set TANGLEKIT_NO_NUMBA=1 to
force the pure-numpy broadcasting fallbacks (used automatically when numba
is unavailable).  benchmarks/bench_kernels.py compares the two.
"""

from __future__ import annotations

import os

import numpy as np

_FORCE_NUMPY = os.environ.get("TANGLEKIT_NO_NUMBA", "") not in ("", "0")

try:  # pragma: no cover - import guard
    if _FORCE_NUMPY:
        raise ImportError
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        if args and callable(args[0]):
            return args[0]
        return wrap


def pack_masks(masks, nbits):
    """Pack python-int bitmasks into a (n, W) uint64 array."""
    W = max(1, (nbits + 63) // 64)
    out = np.zeros((len(masks), W), dtype=np.uint64)
    for i, m in enumerate(masks):
        for w in range(W):
            out[i, w] = (m >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
    return out


def unpack_row(row) -> int:
    m = 0
    for w in range(len(row)):
        m |= int(row[w]) << (64 * w)
    return m


# -- numba path ----------------------------------------------------------


@njit(cache=True)
def _maximal_mask_nb(small, big):
    n, W = small.shape
    out = np.ones(n, dtype=np.bool_)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            # strictly below j: small_i subset small_j, big_i superset big_j
            le = True
            eq = True
            for w in range(W):
                if small[i, w] & ~small[j, w] or big[j, w] & ~big[i, w]:
                    le = False
                    break
                if small[i, w] != small[j, w] or big[i, w] != big[j, w]:
                    eq = False
            if le and not eq:
                out[i] = False
                break
    return out


@njit(cache=True)
def _find_triple_nb(vcov, ecov, vfull, efull):
    n, Wv = vcov.shape
    We = ecov.shape[1]
    for i in range(n):
        for j in range(i, n):
            # prune: the pair must at least cover once the third row is free
            for l in range(j, n):
                ok = True
                for w in range(Wv):
                    if (vcov[i, w] | vcov[j, w] | vcov[l, w]) != vfull[w]:
                        ok = False
                        break
                if ok:
                    for w in range(We):
                        if (ecov[i, w] | ecov[j, w] | ecov[l, w]) != efull[w]:
                            ok = False
                            break
                if ok:
                    return i, j, l
    return -1, -1, -1


# -- numpy fallback ------------------------------------------------------


def _maximal_mask_np(small, big):
    n = small.shape[0]
    if n == 0:
        return np.zeros(0, dtype=bool)
    # le[i,j]: row i <= row j
    s_sub = ~np.any(small[:, None, :] & ~small[None, :, :], axis=2)
    b_sup = ~np.any(big[None, :, :] & ~big[:, None, :], axis=2)
    le = s_sub & b_sup
    eq = np.all(small[:, None, :] == small[None, :, :], axis=2) & np.all(
        big[:, None, :] == big[None, :, :], axis=2
    )
    dominated = np.any(le & ~eq, axis=1)
    return ~dominated


def _find_triple_np(vcov, ecov, vfull, efull):
    n = vcov.shape[0]
    for i in range(n):
        pv = vcov[i] | vcov[i:]  # pair covers, rows j >= i
        pe = ecov[i] | ecov[i:]
        for jo in range(pv.shape[0]):
            j = i + jo
            tv = np.all((pv[jo] | vcov[j:]) == vfull, axis=1)
            te = np.all((pe[jo] | ecov[j:]) == efull, axis=1)
            hits = np.flatnonzero(tv & te)
            if hits.size:
                return i, j, j + int(hits[0])
    return -1, -1, -1


def maximal_mask(small, big):
    """Boolean mask of rows not strictly below any other row."""
    small = np.ascontiguousarray(small, dtype=np.uint64)
    big = np.ascontiguousarray(big, dtype=np.uint64)
    if HAS_NUMBA:
        return _maximal_mask_nb(small, big)
    return _maximal_mask_np(small, big)


def find_covering_triple(vcov, ecov, vfull, efull):
    """First (i, j, l), i<=j<=l, with rows OR-ing to both full masks.

    Returns (-1, -1, -1) if no such triple exists.
    """
    vcov = np.ascontiguousarray(vcov, dtype=np.uint64)
    ecov = np.ascontiguousarray(ecov, dtype=np.uint64)
    vfull = np.ascontiguousarray(vfull, dtype=np.uint64)
    efull = np.ascontiguousarray(efull, dtype=np.uint64)
    if vcov.shape[0] == 0:
        # a triple needs at least one row unless nothing must be covered
        if np.any(vfull) or np.any(efull):
            return (-1, -1, -1)
        return (-1, -1, -1)
    if HAS_NUMBA:
        i, j, l = _find_triple_nb(vcov, ecov, vfull, efull)
        return int(i), int(j), int(l)
    return _find_triple_np(vcov, ecov, vfull, efull)
