"""Immutable simple graphs with memoised BFS distances and local A/B/C profiles."""

from __future__ import annotations

import math
import threading
from bisect import bisect_left
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError, InputError

INF = math.inf


class Graph:
    """Finite simple undirected graph on vertices ``0 .. n-1``.

    Instances are immutable. Distance rows are computed on demand and cached
    behind a lock, so a graph can be shared between threads.
    """

    __slots__ = ("_n", "_adj", "_indptr", "_indices", "_rows", "_matrix", "_memo", "_lock")

    def __init__(self, n: int, adjacency):
        self._n = n
        self._adj = tuple(tuple(nbrs) for nbrs in adjacency)
        deg = np.fromiter((len(a) for a in self._adj), dtype=np.int64, count=n)
        self._indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(deg, out=self._indptr[1:])
        flat = [v for nbrs in self._adj for v in nbrs]
        self._indices = np.asarray(flat, dtype=np.int32)
        self._indptr.setflags(write=False)
        self._indices.setflags(write=False)
        self._rows = {}
        self._matrix = None
        self._memo = {}
        self._lock = threading.RLock()

    # -- basic structure -------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    def __len__(self):
        return self._n

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    @property
    def csr(self):
        """``(indptr, indices)`` arrays of the adjacency structure (read-only)."""
        return self._indptr, self._indices

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self._adj[u]
        i = bisect_left(nbrs, v)
        return i < len(nbrs) and nbrs[i] == v

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self._n) for v in self._adj[u] if u < v]

    @property
    def edge_count(self) -> int:
        return int(self._indptr[-1]) // 2

    def __eq__(self, other):
        return isinstance(other, Graph) and self._n == other._n and self._adj == other._adj

    def __hash__(self):
        return hash((self._n, self._adj))

    def __repr__(self):
        return f"Graph(n={self._n}, edges={self.edge_count})"

    # -- distances -------------------------------------------------------

    def _check_vertex(self, v):
        if not (isinstance(v, (int, np.integer)) and 0 <= v < self._n):
            raise InputError(f"vertex {v!r} is not in range [0, {self._n})")

    def distance_row(self, x: int) -> np.ndarray:
        """Read-only int32 BFS row from ``x``; ``-1`` marks unreachable vertices."""
        if self._matrix is not None:
            self._check_vertex(x)
            return self._matrix[x]
        row = self._rows.get(x)
        if row is None:
            self._check_vertex(x)
            row = kernels.bfs_distances(self._indptr, self._indices, int(x))
            row.setflags(write=False)
            with self._lock:
                row = self._rows.setdefault(x, row)
        return row

    def distance_matrix(self) -> np.ndarray:
        """Full all-pairs table (int32, ``-1`` = unreachable), materialised once."""
        if self._matrix is None:
            with self._lock:
                if self._matrix is None:
                    mat = kernels.all_pairs_distances(self._indptr, self._indices)
                    mat.setflags(write=False)
                    self._matrix = mat
                    self._rows.clear()
        return self._matrix

    def distance(self, x: int, y: int):
        d = int(self.distance_row(x)[y])
        return INF if d < 0 else d

    def is_connected(self) -> bool:
        if self._n == 0:
            return True
        return bool((self.distance_row(0) >= 0).all())

    def diameter(self):
        """Largest finite distance; ``INF`` when disconnected."""
        if not self.is_connected():
            return INF
        if self._n == 0:
            return 0
        return int(self.distance_matrix().max())

    def shell_counts(self, x: int) -> np.ndarray:
        """``(n, 3)`` counts ``|C|, |A|, |B|`` of every vertex's neighbourhood relative to ``x``."""
        return kernels.shell_counts(self._indptr, self._indices, self.distance_row(x))

    def memo(self, key, compute):
        """Cache a derived quantity (intersection array and friends) on the graph."""
        try:
            return self._memo[key]
        except KeyError:
            pass
        value = compute()
        with self._lock:
            return self._memo.setdefault(key, value)


def build_graph(n: int, edges) -> Graph:
    """Simple graph on ``n`` vertices with the given edges.

    Duplicate and reversed pairs collapse to a single edge. Self-loops and
    endpoints outside ``[0, n)`` raise :class:`InputError`.
    """
    if n < 0:
        raise InputError(f"vertex count must be non-negative, got {n}")
    nbrs = [set() for _ in range(n)]
    for pair in edges:
        u, v = pair
        for w in (u, v):
            if not (isinstance(w, (int, np.integer)) and 0 <= w < n):
                raise InputError(f"endpoint {w!r} of edge {tuple(pair)} is outside [0, {n})")
        if u == v:
            raise InputError(f"self-loop at vertex {u}")
        nbrs[u].add(int(v))
        nbrs[v].add(int(u))
    return Graph(n, [sorted(s) for s in nbrs])


def distances_from(g: Graph, x: int) -> list:
    """BFS distances from ``x``; unreachable vertices get ``INF``."""
    return [INF if d < 0 else int(d) for d in g.distance_row(x)]


def shell(g: Graph, x: int, h: int) -> frozenset[int]:
    """Vertices at distance exactly ``h`` from ``x`` (empty past the eccentricity)."""
    if h < 0:
        return frozenset()
    row = g.distance_row(x)
    return frozenset(np.flatnonzero(row == h).tolist())


@dataclass(frozen=True)
class LocalProfile:
    """Split of ``y``'s neighbourhood by distance to ``x`` (with ``h = d(x, y)``).

    ``C`` holds neighbours at distance ``h-1``, ``A`` at ``h``, ``B`` at ``h+1``.
    """

    x: int
    y: int
    h: int
    A: frozenset
    B: frozenset
    C: frozenset

    @property
    def a(self):
        return len(self.A)

    @property
    def b(self):
        return len(self.B)

    @property
    def c(self):
        return len(self.C)


def local_profile(g: Graph, x: int, y: int) -> LocalProfile:
    g._check_vertex(y)
    row = g.distance_row(x)
    h = int(row[y])
    if h < 0:
        raise DomainError(f"vertices {x} and {y} are in different components")
    parts = {-1: [], 0: [], 1: []}
    for z in g.neighbors(y):
        parts[int(row[z]) - h].append(z)
    return LocalProfile(x, y, h, A=frozenset(parts[0]), B=frozenset(parts[1]), C=frozenset(parts[-1]))


def girth(g: Graph):
    """Length of a shortest cycle, ``INF`` for forests.

    From every root, a vertex with two neighbours one level closer closes a
    walk of length ``2h`` and an edge inside level ``h`` closes one of length
    ``2h + 1``; both contain a cycle at most that long, and a root lying on a
    shortest cycle attains it.
    """
    if g.n == 0:
        return INF
    return g.memo("girth", lambda: _girth(g))


def _girth(g):
    best = INF
    mat = g.distance_matrix()
    for r in range(g.n):
        row = mat[r]
        counts = kernels.shell_counts(*g.csr, row)
        even = np.flatnonzero(counts[:, 0] >= 2)
        if even.size:
            best = min(best, 2 * int(row[even].min()))
        odd = np.flatnonzero(counts[:, 1] >= 1)
        if odd.size:
            best = min(best, 2 * int(row[odd].min()) + 1)
        if best == 3:
            break
    return best
