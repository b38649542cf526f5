"""Deterministic generators for named graphs, and the edge-list text format.

Edge-list format: the first content line is the vertex count ``n``; every
further content line holds two integers ``u v``. Blank lines and lines whose
first non-blank character is ``#`` are ignored. Saved files list edges with
``u < v`` in lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Optional

from .errors import InputError
from .graph import Graph, build_graph
from .regularity import IntersectionArray


class ConstructionError(RuntimeError):
    """A generator's built-in self-check failed."""


# --- elementary families -------------------------------------------------


def cycle(n: int) -> Graph:
    if n < 3:
        raise InputError("a cycle needs at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise InputError("complete graph needs at least 1 vertex")
    return build_graph(n, combinations(range(n), 2))


def complete_bipartite(m: int, n: int) -> Graph:
    if m < 1 or n < 1:
        raise InputError("both sides of a complete bipartite graph must be non-empty")
    return build_graph(m + n, [(i, m + j) for i in range(m) for j in range(n)])


def hypercube(n: int) -> Graph:
    """Q_n: n-bit strings, adjacent at Hamming distance 1."""
    if n < 1:
        raise InputError("hypercube dimension must be positive")
    return build_graph(1 << n, [(v, v ^ (1 << i)) for v in range(1 << n) for i in range(n) if v < v ^ (1 << i)])


def hamming(d: int, q: int) -> Graph:
    """H(d, q): words of length d over a q-letter alphabet, adjacent when differing in one place."""
    if d < 1 or q < 2:
        raise InputError("Hamming graph needs d >= 1 and q >= 2")
    words = list(product(range(q), repeat=d))
    index = {w: i for i, w in enumerate(words)}
    edges = []
    for w in words:
        for pos in range(d):
            for sym in range(w[pos] + 1, q):
                other = w[:pos] + (sym,) + w[pos + 1:]
                edges.append((index[w], index[other]))
    return build_graph(len(words), edges)


def johnson(n: int, m: int) -> Graph:
    """J(n, m): m-subsets of an n-set, adjacent when they share m - 1 points."""
    if not 1 <= m < n:
        raise InputError("Johnson graph needs 1 <= m < n")
    subsets = [frozenset(s) for s in combinations(range(n), m)]
    edges = [(i, j) for (i, s), (j, t) in combinations(enumerate(subsets), 2) if len(s & t) == m - 1]
    return build_graph(len(subsets), edges)


def petersen() -> Graph:
    """Kneser graph K(5, 2): 2-subsets of a 5-set, adjacent when disjoint."""
    subsets = [frozenset(s) for s in combinations(range(5), 2)]
    edges = [(i, j) for (i, s), (j, t) in combinations(enumerate(subsets), 2) if not s & t]
    return build_graph(10, edges)


# Double cover of the folded 5-cube (Clebsch graph) in which every 4-cycle
# lifts to an 8-cycle. Checked against {5,4,1,1; 1,1,4,5} in the test suite.
_WELLS_EDGES = (
    (0, 3), (0, 5), (0, 8), (0, 17), (0, 30), (1, 2), (1, 4), (1, 9), (1, 16), (1, 31),
    (2, 7), (2, 10), (2, 19), (2, 28), (3, 6), (3, 11), (3, 18), (3, 29), (4, 6), (4, 13),
    (4, 20), (4, 26), (5, 7), (5, 12), (5, 21), (5, 27), (6, 15), (6, 22), (6, 24), (7, 14),
    (7, 23), (7, 25), (8, 10), (8, 13), (8, 23), (8, 24), (9, 11), (9, 12), (9, 22), (9, 25),
    (10, 15), (10, 21), (10, 26), (11, 14), (11, 20), (11, 27), (12, 15), (12, 18), (12, 28),
    (13, 14), (13, 19), (13, 29), (14, 16), (14, 30), (15, 17), (15, 31), (16, 18), (16, 21),
    (16, 24), (17, 19), (17, 20), (17, 25), (18, 23), (18, 26), (19, 22), (19, 27), (20, 23),
    (20, 28), (21, 22), (21, 29), (22, 30), (23, 31), (24, 27), (24, 28), (25, 26), (25, 29),
    (26, 30), (27, 31), (28, 30), (29, 31),
)


def wells() -> Graph:
    return build_graph(32, _WELLS_EDGES)


# --- binary Golay code and its coset graphs ------------------------------

# x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1, bit i = coefficient of x^i.
# The reciprocal polynomial generates an equivalent code.
GOLAY_GENERATOR = 0b110001110101
GOLAY_LENGTH = 23
GOLAY_DIMENSION = 12


def _polymul_gf2(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def golay_codewords() -> list[int]:
    """All 4096 words of the cyclic [23, 12] binary Golay code as 23-bit ints.

    Raises :class:`ConstructionError` unless the minimum distance is 7.
    """
    words = [_polymul_gf2(m, GOLAY_GENERATOR) for m in range(1 << GOLAY_DIMENSION)]
    if len(set(words)) != 1 << GOLAY_DIMENSION or max(words) >> GOLAY_LENGTH:
        raise ConstructionError("Golay generator does not span a 12-dimensional code of length 23")
    weight = min(bin(w).count("1") for w in words if w)
    if weight != 7:
        raise ConstructionError(f"Golay code minimum distance is {weight}, expected 7")
    return words


def shorten(words, length, coord=0):
    """Keep words that vanish at ``coord`` and delete that coordinate."""
    low = (1 << coord) - 1
    return [(w & low) | ((w >> (coord + 1)) << coord) for w in words if not (w >> coord) & 1], length - 1


def truncate(words, length, coord=0):
    """Delete coordinate ``coord`` from every word (puncturing)."""
    low = (1 << coord) - 1
    return sorted({(w & low) | ((w >> (coord + 1)) << coord) for w in words}), length - 1


def shorten_pair(words, length, i=0, j=1):
    """Keep words whose coordinates ``i < j`` agree, then delete both."""

    def drop(w):
        w = (w & ((1 << j) - 1)) | ((w >> (j + 1)) << j)
        return (w & ((1 << i) - 1)) | ((w >> (i + 1)) << i)

    return [drop(w) for w in words if ((w >> i) ^ (w >> j)) & 1 == 0], length - 2


def _basis(words):
    """Reduced echelon basis as ``{pivot_bit: vector}``."""
    basis = {}
    for w in words:
        for bit, vec in basis.items():
            if (w >> bit) & 1:
                w ^= vec
        if w:
            bit = w.bit_length() - 1
            for b2 in list(basis):
                if (basis[b2] >> bit) & 1:
                    basis[b2] ^= w
            basis[bit] = w
    return basis


def coset_graph(words, length) -> Graph:
    """Cosets of the linear code ``words``, adjacent when they differ by a weight-1 word."""
    basis = _basis(words)
    free = [i for i in range(length) if i not in basis]

    def reduce(v):
        for bit, vec in basis.items():
            if (v >> bit) & 1:
                v ^= vec
        return v

    def index(v):
        out = 0
        for pos, bit in enumerate(free):
            out |= ((v >> bit) & 1) << pos
        return out

    n = 1 << len(free)
    reps = [0] * n
    for i in range(n):
        v = 0
        for pos, bit in enumerate(free):
            if (i >> pos) & 1:
                v |= 1 << bit
        reps[i] = v
    edges = []
    for i, v in enumerate(reps):
        for bit in range(length):
            j = index(reduce(v ^ (1 << bit)))
            if j == i:
                raise ConstructionError("code contains a weight-1 word")
            if i < j:
                edges.append((i, j))
    g = build_graph(n, edges)
    if any(len(a) != length for a in g.adjacency):
        raise ConstructionError("code contains a weight-2 word; coset graph is not simple of full valency")
    return g


def golay_coset_shortened() -> Graph:
    """Coset graph of the [22, 11, 7] shortened binary Golay code (2048 vertices)."""
    words, length = shorten(golay_codewords(), GOLAY_LENGTH)
    return coset_graph(words, length)


def golay_coset_truncated_shortened() -> Graph:
    """Coset graph of a [21, 11, 5] Golay-derived code (1024 vertices, valency 21).

    The code keeps the Golay words that agree on coordinates 0 and 1 and
    deletes both. Plain shortening followed by puncturing gives a [21, 11, 6]
    code whose coset graph has diameter 5 and is not distance-regular.
    """
    words, length = shorten_pair(golay_codewords(), GOLAY_LENGTH)
    return coset_graph(words, length)


# --- registry ------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: tuple = ()
    expected_array: Optional[IntersectionArray] = None
    note: str = ""
    vertex_transitive: bool = True

    @property
    def label(self) -> str:
        return self.name + (":" + ",".join(map(str, self.params)) if self.params else "")

    def build(self) -> Graph:
        return generate(self.name, *self.params)


_FAMILIES = {
    "cycle": (cycle, 1),
    "complete": (complete, 1),
    "complete_bipartite": (complete_bipartite, 2),
    "hypercube": (hypercube, 1),
    "hamming": (hamming, 2),
    "johnson": (johnson, 2),
    "petersen": (petersen, 0),
    "wells": (wells, 0),
    "golay_coset_shortened": (golay_coset_shortened, 0),
    "golay_coset_truncated_shortened": (golay_coset_truncated_shortened, 0),
}

NAMES = tuple(_FAMILIES)


def generate(name: str, *params: int) -> Graph:
    try:
        fn, arity = _FAMILIES[name]
    except KeyError:
        raise InputError(f"unknown catalog graph {name!r}; known: {', '.join(NAMES)}") from None
    if len(params) != arity:
        raise InputError(f"{name} takes {arity} integer parameter(s), got {len(params)}")
    return fn(*params)


def _family_array(name, params):
    """Closed-form intersection arrays of the distance-regular families."""
    if name == "hypercube":
        (n,) = params
        return IntersectionArray(tuple(range(n, 0, -1)), tuple(range(1, n + 1)))
    if name == "hamming":
        d, q = params
        return IntersectionArray(tuple((d - i) * (q - 1) for i in range(d)), tuple(range(1, d + 1)))
    if name == "johnson":
        n, m = params
        dd = min(m, n - m)
        return IntersectionArray(tuple((m - i) * (n - m - i) for i in range(dd)),
                                 tuple(i * i for i in range(1, dd + 1)))
    if name == "cycle":
        (n,) = params
        dd = n // 2
        c = [1] * dd
        if n % 2 == 0:
            c[-1] = 2
        return IntersectionArray((2,) + (1,) * (dd - 1), tuple(c))
    if name == "complete":
        (n,) = params
        return IntersectionArray((n - 1,), (1,)) if n > 1 else None
    if name == "complete_bipartite":
        m, n = params
        return IntersectionArray((n, n - 1), (1, n)) if m == n else None
    fixed = {
        "petersen": ((3, 2), (1, 1)),
        "wells": ((5, 4, 1, 1), (1, 1, 4, 5)),
        "golay_coset_shortened": ((22, 21, 20, 3, 2, 1), (1, 2, 3, 20, 21, 22)),
        # printed with a trailing b_6 = 0 in the source literature
        "golay_coset_truncated_shortened": ((21, 20, 16, 6, 2, 1), (1, 2, 6, 16, 20, 21)),
    }
    if name in fixed:
        return IntersectionArray(*fixed[name])
    return None


def entry(name: str, *params: int) -> CatalogEntry:
    if name not in _FAMILIES:
        raise InputError(f"unknown catalog graph {name!r}")
    vt = not (name == "complete_bipartite" and params[0] != params[1])
    return CatalogEntry(name, tuple(params), _family_array(name, params), vertex_transitive=vt)


def parse_name(spec: str) -> CatalogEntry:
    """``"hypercube:4"`` or ``"hamming:2,3"`` -> :class:`CatalogEntry`."""
    name, _, rest = spec.partition(":")
    try:
        params = tuple(int(t) for t in rest.split(",") if t.strip()) if rest else ()
    except ValueError:
        raise InputError(f"bad catalog parameters in {spec!r}") from None
    if name not in _FAMILIES:
        raise InputError(f"unknown catalog graph {name!r}; known: {', '.join(NAMES)}")
    if len(params) != _FAMILIES[name][1]:
        raise InputError(f"{name} takes {_FAMILIES[name][1]} integer parameter(s), got {len(params)}")
    return entry(name, *params)


# distance-regular members used by the regression suites
DISTANCE_REGULAR = (
    entry("cycle", 7), entry("cycle", 8), entry("complete", 5), entry("complete_bipartite", 4, 4),
    entry("hypercube", 3), entry("hypercube", 4), entry("hypercube", 5), entry("hypercube", 6),
    entry("hamming", 2, 3), entry("hamming", 3, 3), entry("johnson", 5, 2), entry("johnson", 6, 3),
    entry("johnson", 7, 3), entry("petersen"), entry("wells"),
    entry("golay_coset_truncated_shortened"), entry("golay_coset_shortened"),
)


# --- edge-list I/O -------------------------------------------------------


def load_edge_list(text: str) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        try:
            nums = [int(f) for f in fields]
        except ValueError:
            raise InputError(f"line {lineno}: expected integers, got {raw!r}") from None
        if n is None:
            if len(nums) != 1 or nums[0] < 0:
                raise InputError(f"line {lineno}: expected a non-negative vertex count, got {raw!r}")
            n = nums[0]
            continue
        if len(nums) != 2:
            raise InputError(f"line {lineno}: expected two endpoints, got {raw!r}")
        u, v = nums
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"line {lineno}: endpoint out of range [0, {n}) in {raw!r}")
        if u == v:
            raise InputError(f"line {lineno}: self-loop at vertex {u}")
        edges.append((u, v))
    if n is None:
        raise InputError("empty edge list: missing vertex count line")
    return build_graph(n, edges)


def save_edge_list(g: Graph) -> str:
    lines = [str(g.n)] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def canonicalize(text: str) -> str:
    return save_edge_list(load_edge_list(text))
