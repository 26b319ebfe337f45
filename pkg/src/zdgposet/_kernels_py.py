"""Pure-Python backtracking kernel, reference implementation of the numba one.

Used when the env flag ZDGPOSET_PURE_PYTHON=1 is set or numba is unavailable.
Must explore the exact same search tree as the numba kernel so that results
(including returned assignments) are identical across backends.
"""

import numpy as np

MAX_COLORS = 63  # tried-color sets live in an int64 bitmask


def solve_coloring(nbr_flat, nbr_off, k, fixed, max_nodes):
    """Exhaustive k-coloring search over a CSR adjacency structure.

    Vertices with fixed[v] >= 0 are precolored (callers pass a clique). The
    branching vertex is chosen by saturation, then degree, then lowest index.
    Colors are introduced in increasing order (color c+1 becomes available
    only once c is in use, killing color permutations) but tried newest
    first, which spreads color classes and finds tight packings quickly.

    Returns (status, colors): 1 = found, 0 = proven infeasible,
    -1 = node budget exhausted. max_nodes <= 0 means unlimited.
    """
    n = len(nbr_off) - 1
    colors = np.full(n, -1, dtype=np.int64)
    if n == 0:
        return 1, colors
    if k <= 0:
        return 0, np.empty(0, dtype=np.int64)
    if k > MAX_COLORS:
        raise ValueError(f"kernel supports at most {MAX_COLORS} colors")

    cnt = [[0] * k for _ in range(n)]
    sat = [0] * n
    deg = [nbr_off[v + 1] - nbr_off[v] for v in range(n)]
    max_used = 0
    nfree = 0

    def paint(v, c):
        nonlocal max_used
        colors[v] = c
        for i in range(nbr_off[v], nbr_off[v + 1]):
            u = nbr_flat[i]
            if cnt[u][c] == 0:
                sat[u] += 1
            cnt[u][c] += 1
        if c + 1 > max_used:
            max_used = c + 1

    def unpaint(v):
        c = int(colors[v])
        colors[v] = -1
        for i in range(nbr_off[v], nbr_off[v + 1]):
            u = nbr_flat[i]
            cnt[u][c] -= 1
            if cnt[u][c] == 0:
                sat[u] -= 1

    for v in range(n):
        fv = int(fixed[v])
        if fv < 0:
            nfree += 1
            continue
        if fv >= k or cnt[v][fv] != 0:
            return 0, np.empty(0, dtype=np.int64)
        paint(v, fv)

    sel = [-1] * (nfree + 1)
    tried = [0] * (nfree + 1)
    mu = [0] * (nfree + 1)
    nodes = 0
    depth = 0

    while 0 <= depth < nfree:
        if sel[depth] == -1:
            best = -1
            bs = bd = -1
            for v in range(n):
                if colors[v] >= 0:
                    continue
                if sat[v] > bs or (sat[v] == bs and deg[v] > bd):
                    best, bs, bd = v, sat[v], deg[v]
            sel[depth] = best
            tried[depth] = 0
            mu[depth] = max_used
        v = sel[depth]
        if colors[v] >= 0:
            unpaint(v)
            max_used = mu[depth]
        limit = min(mu[depth] + 1, k)
        c = limit - 1
        while c >= 0 and (cnt[v][c] != 0 or tried[depth] >> c & 1):
            c -= 1
        if c >= 0:
            nodes += 1
            if max_nodes > 0 and nodes > max_nodes:
                return -1, np.empty(0, dtype=np.int64)
            paint(v, c)
            tried[depth] |= 1 << c
            depth += 1
            if depth < nfree:
                sel[depth] = -1
        else:
            sel[depth] = -1
            depth -= 1

    if depth == nfree:
        return 1, colors
    return 0, np.empty(0, dtype=np.int64)
