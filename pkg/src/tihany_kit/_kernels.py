"""Hot search loops.

Everything here takes and returns numpy arrays / scalars only, so the same
source runs under ``numba.njit`` or as plain Python (see :mod:`._accel`).
Bitmasks are int64, which caps palettes and clique-oracle graphs at 62.
"""

from __future__ import annotations

import numpy as np

from ._accel import jit

FOUND = 0
EXHAUSTED = 1
BUDGET = 2


@jit
def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@jit
def edge_coloring_search(n, eu, ev, parallel_prev, k, node_limit):
    """Backtracking proper ``k``-edge-colouring of edges given in search order.

    ``parallel_prev[i]`` marks edge ``i`` as parallel to edge ``i - 1``;
    parallel classes must be contiguous.  Symmetry breaking: colours rise
    strictly inside a parallel class and a colour index never exceeds the
    number of colours used so far.  Forward checking rejects a node when
    some uncoloured edge next to the change has fewer common free colours
    than uncoloured parallels, or a vertex has fewer reachable free colours
    than uncoloured incident edges.

    Returns ``(status, colours, nodes)``.
    """
    m = eu.shape[0]
    col = -np.ones(m, dtype=np.int64)
    if m == 0:
        return FOUND, col, 0
    if k <= 0:
        return EXHAUSTED, col, 0
    full = (np.int64(1) << k) - 1
    used = np.zeros(n, dtype=np.int64)
    left = np.zeros(n, dtype=np.int64)
    pair_left = np.zeros((n, n), dtype=np.int64)
    for i in range(m):
        left[eu[i]] += 1
        left[ev[i]] += 1
        pair_left[eu[i], ev[i]] += 1
        pair_left[ev[i], eu[i]] += 1
    for x in range(n):
        if left[x] > k:
            return EXHAUSTED, col, 0
    # neighbour lists (distinct vertices) for forward checks
    nbr_cnt = np.zeros(n, dtype=np.int64)
    nbr = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        for y in range(n):
            if pair_left[x, y] > 0:
                nbr[x, nbr_cnt[x]] = y
                nbr_cnt[x] += 1

    cand = np.zeros(m + 1, dtype=np.int64)
    nused = np.zeros(m + 1, dtype=np.int64)
    nodes = 0
    i = 0
    while True:
        if i == m:
            return FOUND, col, nodes
        u = eu[i]
        v = ev[i]
        start = cand[i]
        if parallel_prev[i] and col[i - 1] + 1 > start:
            start = col[i - 1] + 1
        top = nused[i] + 1
        if top > k:
            top = k
        busy = used[u] | used[v]
        chosen = -1
        for c in range(start, top):
            bit = np.int64(1) << c
            if busy & bit:
                continue
            nodes += 1
            if nodes > node_limit:
                return BUDGET, col, nodes
            used[u] |= bit
            used[v] |= bit
            left[u] -= 1
            left[v] -= 1
            pair_left[u, v] -= 1
            pair_left[v, u] -= 1
            ok = True
            for side in range(2):
                x = u if side == 0 else v
                if left[x] == 0:
                    continue
                free_x = full & ~used[x]
                reach = np.int64(0)
                for j in range(nbr_cnt[x]):
                    y = nbr[x, j]
                    r = pair_left[x, y]
                    if r == 0:
                        continue
                    common = free_x & ~used[y]
                    if popcount(common) < r:
                        ok = False
                        break
                    reach |= common
                if not ok:
                    break
                if popcount(reach) < left[x]:
                    ok = False
                    break
            if ok:
                chosen = c
                break
            used[u] &= ~bit
            used[v] &= ~bit
            left[u] += 1
            left[v] += 1
            pair_left[u, v] += 1
            pair_left[v, u] += 1
        if chosen >= 0:
            col[i] = chosen
            cand[i] = chosen + 1
            nused[i + 1] = nused[i] if nused[i] > chosen + 1 else chosen + 1
            i += 1
            cand[i] = 0
            continue
        cand[i] = 0
        if i == 0:
            return EXHAUSTED, col, nodes
        i -= 1
        c = col[i]
        bit = np.int64(1) << c
        u = eu[i]
        v = ev[i]
        used[u] &= ~bit
        used[v] &= ~bit
        left[u] += 1
        left[v] += 1
        pair_left[u, v] += 1
        pair_left[v, u] += 1
        col[i] = -1


@jit
def max_clique_size(adj):
    """Exact clique number of a graph given as int64 adjacency bitmasks."""
    n = adj.shape[0]
    if n == 0:
        return 0
    all_mask = (np.int64(1) << n) - 1
    stack_p = np.zeros(2 * n + 2, dtype=np.int64)
    stack_s = np.zeros(2 * n + 2, dtype=np.int64)
    top = 0
    stack_p[0] = all_mask
    stack_s[0] = 0
    top = 1
    best = 0
    while top > 0:
        top -= 1
        p = stack_p[top]
        size = stack_s[top]
        if p == 0:
            if size > best:
                best = size
            continue
        if size + popcount(p) <= best:
            continue
        low = p & -p
        j = 0
        while (np.int64(1) << j) != low:
            j += 1
        stack_p[top] = p & ~low
        stack_s[top] = size
        top += 1
        stack_p[top] = p & adj[j]
        stack_s[top] = size + 1
        top += 1
    return best


@jit
def chromatic_number_exhaustive(adj):
    """Chromatic number by enumerating every proper colouring in restricted-growth form.

    No bounds, no ordering heuristics: each vertex in index order tries every
    colour already opened plus one new colour, and the fewest colours over all
    complete proper assignments is returned.
    """
    n = adj.shape[0]
    if n == 0:
        return 0
    col = -np.ones(n, dtype=np.int64)
    opened = np.zeros(n + 1, dtype=np.int64)
    best = n
    i = 0
    col[0] = -1
    while i >= 0:
        col[i] += 1
        if col[i] > opened[i]:
            col[i] = -1
            i -= 1
            continue
        c = col[i]
        clash = False
        for j in range(i):
            if col[j] == c and (adj[i] >> j) & 1:
                clash = True
                break
        if clash:
            continue
        opened[i + 1] = opened[i] if opened[i] > c + 1 else c + 1
        if i == n - 1:
            if opened[i + 1] < best:
                best = opened[i + 1]
            continue
        i += 1
        col[i] = -1
    return best
