# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: BFS rows, shell counts, integer transport, bipartite matching.

Same call signatures and results as ``_pykernels``; the two are checked
against each other in the test suite.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, int32_t

cnp.import_array()


cdef void _bfs(const int64_t[:] indptr, const int32_t[:] indices, int source,
               int32_t[:] dist, int32_t[:] queue) noexcept nogil:
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t head = 0, tail = 0, e, i
    cdef int u, w
    cdef int32_t du
    for i in range(n):
        dist[i] = -1
    dist[source] = 0
    queue[tail] = source
    tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u] + 1
        for e in range(indptr[u], indptr[u + 1]):
            w = indices[e]
            if dist[w] < 0:
                dist[w] = du
                queue[tail] = w
                tail += 1


def bfs_distances(indptr, indices, int source):
    cdef const int64_t[:] ptr = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const int32_t[:] idx = np.ascontiguousarray(indices, dtype=np.int32)
    cdef Py_ssize_t n = ptr.shape[0] - 1
    out = np.empty(n, dtype=np.int32)
    queue = np.empty(max(n, 1), dtype=np.int32)
    cdef int32_t[:] o = out
    cdef int32_t[:] q = queue
    with nogil:
        _bfs(ptr, idx, source, o, q)
    return out


def all_pairs_distances(indptr, indices):
    cdef const int64_t[:] ptr = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const int32_t[:] idx = np.ascontiguousarray(indices, dtype=np.int32)
    cdef Py_ssize_t n = ptr.shape[0] - 1
    out = np.empty((n, n), dtype=np.int32)
    queue = np.empty(max(n, 1), dtype=np.int32)
    cdef int32_t[:, :] o = out
    cdef int32_t[:] q = queue
    cdef int s
    with nogil:
        for s in range(n):
            _bfs(ptr, idx, s, o[s], q)
    return out


def shell_counts(indptr, indices, dist_row):
    cdef const int64_t[:] ptr = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const int32_t[:] idx = np.ascontiguousarray(indices, dtype=np.int32)
    cdef const int32_t[:] d = np.ascontiguousarray(dist_row, dtype=np.int32)
    cdef Py_ssize_t n = ptr.shape[0] - 1
    out = np.zeros((n, 3), dtype=np.int32)
    cdef int32_t[:, :] o = out
    cdef Py_ssize_t y, e
    cdef int32_t dy, delta
    with nogil:
        for y in range(n):
            dy = d[y]
            if dy < 0:
                continue
            for e in range(ptr[y], ptr[y + 1]):
                delta = d[idx[e]] - dy
                if delta == -1:
                    o[y, 0] += 1
                elif delta == 0:
                    o[y, 1] += 1
                elif delta == 1:
                    o[y, 2] += 1
    return out


def transport(supply, demand, cost):
    """Successive-shortest-path transportation solver on int64 data."""
    cdef Py_ssize_t m = len(supply), n = len(demand)
    cdef Py_ssize_t N = m + n + 1, sink = m + n
    c_arr = np.ascontiguousarray(np.asarray(cost, dtype=np.int64).reshape(m, n))
    cdef int64_t[:, :] c = c_arr
    rs_arr = np.asarray(supply, dtype=np.int64).copy()
    rd_arr = np.asarray(demand, dtype=np.int64).copy()
    cdef int64_t[:] rem_s = rs_arr
    cdef int64_t[:] rem_d = rd_arr
    flow_arr = np.zeros((m, n), dtype=np.int64)
    cdef int64_t[:, :] flow = flow_arr
    pot_arr = np.zeros(N, dtype=np.int64)
    cdef int64_t[:] pot = pot_arr
    dist_arr = np.zeros(N, dtype=np.int64)
    cdef int64_t[:] dist = dist_arr
    has_arr = np.zeros(N, dtype=np.uint8)
    cdef unsigned char[:] has = has_arr
    done_arr = np.zeros(N, dtype=np.uint8)
    cdef unsigned char[:] done = done_arr
    prev_arr = np.zeros(N, dtype=np.int64)
    cdef int64_t[:] prev = prev_arr
    cdef int64_t left = 0, best, nd, base, d_sink, amount
    cdef Py_ssize_t i, j, v, node, w, j_last, p
    for i in range(m):
        left += rem_s[i]
    with nogil:
        while left > 0:
            for v in range(N):
                has[v] = 0
                done[v] = 0
                prev[v] = -1
            for i in range(m):
                if rem_s[i] > 0:
                    dist[i] = -pot[i]
                    has[i] = 1
            while True:
                node = -1
                best = 0
                for v in range(N):
                    if not done[v] and has[v] and (node < 0 or dist[v] < best):
                        best = dist[v]
                        node = v
                if node < 0 or node == sink:
                    break
                done[node] = 1
                if node < m:
                    base = best + pot[node]
                    for j in range(n):
                        w = m + j
                        if done[w]:
                            continue
                        nd = base + c[node, j] - pot[w]
                        if not has[w] or nd < dist[w]:
                            dist[w] = nd
                            has[w] = 1
                            prev[w] = node
                else:
                    j = node - m
                    base = best + pot[node]
                    for i in range(m):
                        if flow[i, j] > 0 and not done[i]:
                            nd = base - c[i, j] - pot[i]
                            if not has[i] or nd < dist[i]:
                                dist[i] = nd
                                has[i] = 1
                                prev[i] = node
                    if rem_d[j] > 0 and not done[sink]:
                        nd = base - pot[sink]
                        if not has[sink] or nd < dist[sink]:
                            dist[sink] = nd
                            has[sink] = 1
                            prev[sink] = node
            d_sink = dist[sink]
            for v in range(N):
                if has[v] and dist[v] < d_sink:
                    pot[v] += dist[v]
                else:
                    pot[v] += d_sink
            j_last = prev[sink]
            amount = rem_d[j_last - m]
            v = j_last
            while True:
                i = prev[v]
                p = prev[i]
                if p < 0:
                    if rem_s[i] < amount:
                        amount = rem_s[i]
                    break
                if flow[i, p - m] < amount:
                    amount = flow[i, p - m]
                v = p
            v = j_last
            while True:
                i = prev[v]
                flow[i, v - m] += amount
                p = prev[i]
                if p < 0:
                    rem_s[i] -= amount
                    break
                flow[i, p - m] -= amount
                v = p
            rem_d[j_last - m] -= amount
            left -= amount
    u = [-int(pot_arr[i]) for i in range(m)]
    vv = [int(pot_arr[m + j]) for j in range(n)]
    return flow_arr.tolist(), u, vv


def perfect_matching(int n, adj_edges, edge_right, alive):
    """Augmenting-path perfect matching; see ``_pykernels.perfect_matching``."""
    cdef Py_ssize_t n_edges = len(edge_right)
    ptr_arr = np.zeros(n + 1, dtype=np.int64)
    for l in range(n):
        ptr_arr[l + 1] = ptr_arr[l] + len(adj_edges[l])
    flat_arr = np.empty(max(int(ptr_arr[n]), 1), dtype=np.int64)
    left_of_arr = np.zeros(max(n_edges, 1), dtype=np.int64)
    k = 0
    for l in range(n):
        for e in adj_edges[l]:
            flat_arr[k] = e
            left_of_arr[e] = l
            k += 1
    cdef int64_t[:] ptr = ptr_arr
    cdef int64_t[:] flat = flat_arr
    cdef int64_t[:] left_of = left_of_arr
    right_arr = np.asarray(edge_right, dtype=np.int64) if n_edges else np.zeros(1, dtype=np.int64)
    alive_arr = np.asarray(alive, dtype=np.uint8) if n_edges else np.zeros(1, dtype=np.uint8)
    cdef int64_t[:] er = right_arr
    cdef unsigned char[:] al = alive_arr
    mr_arr = np.full(max(n, 1), -1, dtype=np.int64)
    ml_arr = np.full(max(n, 1), -1, dtype=np.int64)
    cdef int64_t[:] match_right = mr_arr
    cdef int64_t[:] match_left = ml_arr
    seen_arr = np.zeros(max(n, 1), dtype=np.uint8)
    cdef unsigned char[:] seen = seen_arr
    stack_arr = np.zeros(max(n, 1) + 1, dtype=np.int64)
    cursor_arr = np.zeros(max(n, 1) + 1, dtype=np.int64)
    path_arr = np.zeros(max(n, 1) + 1, dtype=np.int64)
    cdef int64_t[:] stack = stack_arr
    cdef int64_t[:] cursor = cursor_arr
    cdef int64_t[:] path = path_arr
    cdef Py_ssize_t root, depth, plen, t, r, e2, lv
    cdef bint found, advanced
    cdef int ok = 1
    with nogil:
        for root in range(n):
            for t in range(n):
                seen[t] = 0
            depth = 1
            stack[0] = root
            cursor[0] = ptr[root]
            plen = 0
            found = False
            while depth > 0 and not found:
                lv = stack[depth - 1]
                advanced = False
                while cursor[depth - 1] < ptr[lv + 1]:
                    e2 = flat[cursor[depth - 1]]
                    cursor[depth - 1] += 1
                    if not al[e2]:
                        continue
                    r = er[e2]
                    if seen[r]:
                        continue
                    seen[r] = 1
                    path[plen] = e2
                    plen += 1
                    if match_right[r] < 0:
                        found = True
                    else:
                        lv = left_of[match_right[r]]
                        stack[depth] = lv
                        cursor[depth] = ptr[lv]
                        depth += 1
                    advanced = True
                    break
                if not advanced:
                    depth -= 1
                    if plen > 0:
                        plen -= 1
            if not found:
                ok = 0
                break
            for t in range(plen):
                e2 = path[t]
                match_right[er[e2]] = e2
                match_left[left_of[e2]] = e2
    if not ok:
        return None
    return [int(ml_arr[t]) for t in range(n)]
