"""Pure-Python / NumPy implementations of the hot kernels.

These mirror ``_kernels.pyx`` function for function and are used when the
compiled extension is unavailable (or ``DRGRICCI_PURE=1`` is set).

Distance rows use ``-1`` for unreachable vertices; the public graph API turns
that into ``math.inf``.
"""

from collections import deque

import numpy as np


def bfs_distances(indptr, indices, source):
    """Breadth-first distances from ``source`` over a CSR adjacency."""
    n = len(indptr) - 1
    dist = [-1] * n
    dist[source] = 0
    queue = deque([source])
    ptr = indptr.tolist()
    idx = indices.tolist()
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for e in range(ptr[u], ptr[u + 1]):
            w = idx[e]
            if dist[w] < 0:
                dist[w] = du
                queue.append(w)
    return np.asarray(dist, dtype=np.int32)


def all_pairs_distances(indptr, indices):
    n = len(indptr) - 1
    out = np.empty((n, n), dtype=np.int32)
    for s in range(n):
        out[s] = bfs_distances(indptr, indices, s)
    return out


def shell_counts(indptr, indices, dist_row):
    """For every vertex y, count neighbours of y one step closer, level, farther.

    Returns an ``(n, 3)`` int32 array with columns ``(C, A, B)`` measured
    against the distances in ``dist_row``. Rows of unreachable vertices are 0.
    """
    n = len(indptr) - 1
    deg = np.diff(indptr)
    owner = np.repeat(np.arange(n), deg)
    dy = dist_row[owner]
    dz = dist_row[indices]
    delta = dz - dy
    valid = dy >= 0
    out = np.zeros((n, 3), dtype=np.int32)
    for col, step in enumerate((-1, 0, 1)):
        hit = valid & (delta == step)
        out[:, col] = np.bincount(owner[hit], minlength=n)
    return out


def transport(supply, demand, cost):
    """Integer transportation problem by successive shortest paths.

    Parameters
    ----------
    supply, demand : sequence of int
        Positive integer masses with equal totals.
    cost : 2-D sequence of int
        Non-negative transport cost per unit from supply ``i`` to demand ``j``.

    Returns
    -------
    flow : list of list of int
    u, v : list of int
        Dual potentials with ``u[i] + v[j] <= cost[i][j]`` everywhere and
        equality wherever ``flow[i][j] > 0``.
    """
    m, n = len(supply), len(demand)
    cost = [[int(c) for c in row] for row in cost]
    rem_s = [int(s) for s in supply]
    rem_d = [int(d) for d in demand]
    flow = [[0] * n for _ in range(m)]
    # potentials: supply nodes 0..m-1, demand nodes m..m+n-1, sink last
    pot = [0] * (m + n + 1)
    sink = m + n
    left = sum(rem_s)
    while left > 0:
        dist = [None] * (m + n + 1)
        prev = [-1] * (m + n + 1)
        done = [False] * (m + n + 1)
        for i in range(m):
            if rem_s[i] > 0:
                dist[i] = -pot[i]
        while True:
            best = None
            node = -1
            for v in range(m + n + 1):
                if not done[v] and dist[v] is not None and (best is None or dist[v] < best):
                    best = dist[v]
                    node = v
            if node < 0 or node == sink:
                break
            done[node] = True
            if node < m:
                i = node
                row = cost[i]
                base = best + pot[i]
                for j in range(n):
                    w = m + j
                    if done[w]:
                        continue
                    nd = base + row[j] - pot[w]
                    if dist[w] is None or nd < dist[w]:
                        dist[w] = nd
                        prev[w] = i
            else:
                j = node - m
                base = best + pot[node]
                for i in range(m):
                    if flow[i][j] > 0 and not done[i]:
                        nd = base - cost[i][j] - pot[i]
                        if dist[i] is None or nd < dist[i]:
                            dist[i] = nd
                            prev[i] = node
                if rem_d[j] > 0 and not done[sink]:
                    nd = base - pot[sink]
                    if dist[sink] is None or nd < dist[sink]:
                        dist[sink] = nd
                        prev[sink] = node
        d_sink = dist[sink]
        for v in range(m + n + 1):
            if dist[v] is not None and dist[v] < d_sink:
                pot[v] += dist[v]
            else:
                pot[v] += d_sink
        # bottleneck along sink <- j <- i <- j' <- i' ... <- source
        j_last = prev[sink]
        amount = rem_d[j_last - m]
        v = j_last
        while True:
            i = prev[v]
            p = prev[i]
            if p < 0:
                amount = min(amount, rem_s[i])
                break
            amount = min(amount, flow[i][p - m])
            v = p
        v = j_last
        while True:
            i = prev[v]
            flow[i][v - m] += amount
            p = prev[i]
            if p < 0:
                rem_s[i] -= amount
                break
            flow[i][p - m] -= amount
            v = p
        rem_d[j_last - m] -= amount
        left -= amount
    u = [-pot[i] for i in range(m)]
    v = [pot[m + j] for j in range(n)]
    return flow, u, v


def perfect_matching(n, adj_edges, edge_right, alive):
    """One perfect matching of a bipartite multigraph with ``n`` vertices per side.

    ``adj_edges[l]`` lists edge ids at left vertex ``l`` in preference order,
    ``edge_right[e]`` is the right endpoint and ``alive[e]`` masks removed
    edges. Returns the edge id matched at each left vertex, or ``None`` if no
    perfect matching exists.
    """
    match_right = [-1] * n  # right vertex -> edge id
    match_left = [-1] * n   # left vertex -> edge id
    edge_left = {}
    for left, edges in enumerate(adj_edges):
        for e in edges:
            edge_left[e] = left
    for root in range(n):
        # iterative augmenting-path DFS, deterministic order
        seen = [False] * n
        stack = [(root, iter(adj_edges[root]))]
        path = []
        found = False
        while stack and not found:
            left, it = stack[-1]
            advanced = False
            for e in it:
                if not alive[e]:
                    continue
                r = edge_right[e]
                if seen[r]:
                    continue
                seen[r] = True
                path.append(e)
                if match_right[r] < 0:
                    found = True
                else:
                    nxt = edge_left[match_right[r]]
                    stack.append((nxt, iter(adj_edges[nxt])))
                advanced = True
                break
            if not advanced:
                stack.pop()
                if path:
                    path.pop()
        if not found:
            return None
        for e in path:
            r = edge_right[e]
            left = edge_left[e]
            match_right[r] = e
            match_left[left] = e
    return match_left
