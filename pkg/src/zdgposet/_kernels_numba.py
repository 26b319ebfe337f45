"""Numba-compiled backtracking kernel; see _kernels_py for the reference."""

import numpy as np
from numba import njit

MAX_COLORS = 63


@njit(cache=True)
def _solve(nbr_flat, nbr_off, k, fixed, max_nodes, value_desc):
    n = nbr_off.shape[0] - 1
    colors = np.full(n, -1, dtype=np.int64)
    empty = np.empty(0, dtype=np.int64)
    if n == 0:
        return 1, colors
    if k <= 0:
        return 0, empty

    cnt = np.zeros((n, k), dtype=np.int32)
    sat = np.zeros(n, dtype=np.int32)
    deg = np.zeros(n, dtype=np.int64)
    for v in range(n):
        deg[v] = nbr_off[v + 1] - nbr_off[v]
    max_used = 0
    nfree = 0

    for v in range(n):
        fv = fixed[v]
        if fv < 0:
            nfree += 1
            continue
        if fv >= k or cnt[v, fv] != 0:
            return 0, empty
        colors[v] = fv
        for i in range(nbr_off[v], nbr_off[v + 1]):
            u = nbr_flat[i]
            if cnt[u, fv] == 0:
                sat[u] += 1
            cnt[u, fv] += 1
        if fv + 1 > max_used:
            max_used = fv + 1

    sel = np.full(nfree + 1, -1, dtype=np.int64)
    tried = np.zeros(nfree + 1, dtype=np.int64)
    mu = np.zeros(nfree + 1, dtype=np.int64)
    nodes = 0
    depth = 0

    while 0 <= depth < nfree:
        if sel[depth] == -1:
            best = -1
            bs = -1
            bd = -1
            for v in range(n):
                if colors[v] >= 0:
                    continue
                if sat[v] > bs or (sat[v] == bs and deg[v] > bd):
                    best = v
                    bs = sat[v]
                    bd = deg[v]
            sel[depth] = best
            tried[depth] = 0
            mu[depth] = max_used
        v = sel[depth]
        if colors[v] >= 0:
            c_old = colors[v]
            colors[v] = -1
            for i in range(nbr_off[v], nbr_off[v + 1]):
                u = nbr_flat[i]
                cnt[u, c_old] -= 1
                if cnt[u, c_old] == 0:
                    sat[u] -= 1
            max_used = mu[depth]
        limit = mu[depth] + 1
        if limit > k:
            limit = k
        c = limit - 1
        while c >= 0 and (cnt[v, c] != 0 or tried[depth] >> c & 1):
            c -= 1
        if c >= 0:
            nodes += 1
            if max_nodes > 0 and nodes > max_nodes:
                return -1, empty
            colors[v] = c
            tried[depth] |= 1 << c
            for i in range(nbr_off[v], nbr_off[v + 1]):
                u = nbr_flat[i]
                if cnt[u, c] == 0:
                    sat[u] += 1
                cnt[u, c] += 1
            if c + 1 > max_used:
                max_used = c + 1
            depth += 1
            if depth < nfree:
                sel[depth] = -1
        else:
            sel[depth] = -1
            depth -= 1

    if depth == nfree:
        return 1, colors
    return 0, empty


def solve_coloring(nbr_flat, nbr_off, k, fixed, max_nodes):
    if k > MAX_COLORS:
        raise ValueError(f"kernel supports at most {MAX_COLORS} colors")
    status, colors = _solve(nbr_flat, nbr_off, np.int64(k), fixed,
                            np.int64(max_nodes))
    return int(status), colors
