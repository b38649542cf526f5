"""Distance-regularity, amply regular and (s, c, a, k) parameter extraction.

All detectors scan every ordered pair of vertices. When a count that should
be constant is not, they return a :class:`StructureWitness` naming the pair
where it differs from a reference pair, instead of raising.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import kernels
from .errors import DomainError, InputError
from .graph import Graph, girth

# columns of Graph.shell_counts
_C, _A, _B = 0, 1, 2


class _ArrayAccess:
    """Index helpers shared by full arrays and prefixes (``None`` = unknown)."""

    @property
    def k(self):
        return self.b_at(0)

    def a_at(self, i):
        b, c, k = self.b_at(i), self.c_at(i), self.k
        if b is None or c is None or k is None:
            return None
        return k - b - c


@dataclass(frozen=True)
class IntersectionArray(_ArrayAccess):
    """``{b_0, ..., b_{d-1}; c_1, ..., c_d}`` of a distance-regular graph."""

    b: tuple
    c: tuple

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(int(v) for v in self.b))
        object.__setattr__(self, "c", tuple(int(v) for v in self.c))
        if len(self.b) != len(self.c) or not self.b:
            raise InputError(f"b and c lists must have equal non-zero length, got {len(self.b)} and {len(self.c)}")

    @property
    def d(self) -> int:
        return len(self.b)

    def b_at(self, i):
        if 0 <= i < self.d:
            return self.b[i]
        return 0 if i == self.d else None

    def c_at(self, i):
        if i == 0:
            return 0
        return self.c[i - 1] if 1 <= i <= self.d else None

    @property
    def a(self) -> tuple:
        return tuple(self.a_at(i) for i in range(self.d + 1))

    def prefix(self, b_count=None, c_count=None) -> "ArrayPrefix":
        """Forget everything past the first ``b_count`` b's and ``c_count`` c's."""
        return ArrayPrefix(self.b[:b_count], self.c[:c_count])

    def vertex_count(self) -> int:
        """Number of vertices implied by the array (sum of shell sizes)."""
        total = size = 1
        for i in range(self.d):
            size = size * self.b[i] // self.c[i]
            total += size
        return total

    @classmethod
    def parse(cls, text: str) -> "IntersectionArray":
        b, c = _parse_lists(text)
        if any(v is None for v in b + c):
            raise InputError("full intersection array cannot contain unknown entries")
        if len(b) == len(c) + 1 and b[-1] == 0:
            b = b[:-1]  # tolerate a trailing b_d = 0
        return cls(tuple(b), tuple(c))

    def __str__(self):
        return "{" + ",".join(map(str, self.b)) + "; " + ",".join(map(str, self.c)) + "}"


@dataclass(frozen=True)
class ArrayPrefix(_ArrayAccess):
    """An initial part of an intersection array; entries may be ``None``.

    ``b[i]`` is ``b_i`` (from ``i = 0``) and ``c[i]`` is ``c_{i+1}``.
    """

    b: tuple
    c: tuple
    q: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(None if v is None else int(v) for v in self.b))
        object.__setattr__(self, "c", tuple(None if v is None else int(v) for v in self.c))

    d = None

    def b_at(self, i):
        return self.b[i] if 0 <= i < len(self.b) else None

    def c_at(self, i):
        if i == 0:
            return 0
        return self.c[i - 1] if 1 <= i <= len(self.c) else None

    def with_b(self, i, value) -> "ArrayPrefix":
        b = list(self.b) + [None] * max(0, i + 1 - len(self.b))
        b[i] = value
        return ArrayPrefix(tuple(b), self.c, self.q)

    @classmethod
    def parse(cls, text: str) -> "ArrayPrefix":
        b, c = _parse_lists(text)
        return cls(tuple(b), tuple(c))

    def __str__(self):
        fmt = lambda seq: ",".join("?" if v is None else str(v) for v in seq)
        return "{" + fmt(self.b) + ",...; " + fmt(self.c) + ",...}"


def _parse_lists(text):
    body = text.strip().strip("{}").replace("...", "")
    if ";" not in body:
        raise InputError(f"expected 'b-list; c-list', got {text!r}")
    out = []
    for part in body.split(";"):
        items = [t for t in re.split(r"[,\s]+", part.strip()) if t]
        try:
            out.append([None if t in ("?", "_") else int(t) for t in items])
        except ValueError as exc:
            raise InputError(f"cannot parse array entry in {text!r}") from exc
    if len(out) != 2:
        raise InputError(f"expected exactly one ';' in {text!r}")
    return out


class Violation(NamedTuple):
    rule: str
    index: int
    message: str


def validate_intersection_array(arr) -> list[Violation]:
    """Check the monotonicity/positivity constraints on the known entries.

    Returns an empty list when ``k = b_0 > b_1 >= ... > b_d = 0``,
    ``1 = c_1 <= c_2 <= ... <= c_d <= k`` and every computable ``a_i`` is
    non-negative.
    """
    out = []
    k = arr.k
    if k is None:
        return [Violation("k-known", 0, "b_0 (the valency) must be known")]
    if k < 1:
        out.append(Violation("k-positive", 0, f"valency b_0 = {k} must be positive"))
    nb = arr.d if arr.d is not None else len(arr.b)
    nc = arr.d if arr.d is not None else len(arr.c)

    last = (0, k)
    for i in range(1, nb):
        v = arr.b_at(i)
        if v is None:
            continue
        j, w = last
        if j == 0 and v >= w:
            out.append(Violation("b-strict", i, f"b_{i} = {v} must be < b_0 = {w}"))
        elif j > 0 and v > w:
            out.append(Violation("b-monotone", i, f"b_{i} = {v} > b_{j} = {w}"))
        last = (i, v)
    if arr.d is not None and arr.b[-1] <= 0:
        out.append(Violation("b-positive", arr.d - 1, f"b_{arr.d - 1} = {arr.b[-1]} must be positive"))

    c1 = arr.c_at(1)
    if c1 is not None and c1 != 1:
        out.append(Violation("c1", 1, f"c_1 = {c1} must equal 1"))
    last = None
    for i in range(1, nc + 1):
        v = arr.c_at(i)
        if v is None:
            continue
        if last is not None and v < last[1]:
            out.append(Violation("c-monotone", i, f"c_{i} = {v} < c_{last[0]} = {last[1]}"))
        if v > k:
            out.append(Violation("c-bound", i, f"c_{i} = {v} exceeds k = {k}"))
        last = (i, v)

    top = arr.d if arr.d is not None else max(nb, nc + 1)
    for i in range(top + 1):
        a = arr.a_at(i)
        if a is not None and a < 0:
            out.append(Violation("a-nonneg", i, f"a_{i} = k - b_{i} - c_{i} = {a} is negative"))
    return out


@dataclass(frozen=True)
class StructureWitness:
    """A concrete obstruction: a count at ``(x, y)`` differing from ``expected``.

    ``expected`` is the same count at ``reference`` (another pair at the same
    distance ``h``). ``kind`` names the count: ``"b"``, ``"c"``, ``"lambda"``,
    ``"mu"``, ``"valency"``, ``"c_s"``, ``"a_s"``; or ``"vacuous"``,
    ``"range"``, ``"structure"`` for the non-count failures.
    """

    kind: str
    x: Optional[int] = None
    y: Optional[int] = None
    h: Optional[int] = None
    count: Optional[int] = None
    expected: Optional[int] = None
    reference: Optional[tuple] = None
    detail: str = ""

    def __str__(self):
        if self.detail:
            return self.detail
        return (f"{self.kind} count {self.count} at pair {(self.x, self.y)} (distance {self.h}) "
                f"differs from {self.expected} at {self.reference}")


def _require_connected(g: Graph):
    if g.n < 2:
        raise DomainError("graph must have at least two vertices")
    if not g.is_connected():
        raise DomainError("graph is disconnected")


def intersection_array(g: Graph):
    """The intersection array of ``g``, or a :class:`StructureWitness`."""
    _require_connected(g)
    return g.memo("intersection_array", lambda: _scan_array(g))


def _scan_array(g):
    mat = g.distance_matrix()
    indptr, indices = g.csr
    d = int(mat.max())
    ref = {_B: np.full(d + 1, -1, dtype=np.int64), _C: np.full(d + 1, -1, dtype=np.int64)}
    ref_pair = [None] * (d + 1)
    kinds = {_B: "b", _C: "c"}
    for x in range(g.n):
        row = mat[x]
        counts = kernels.shell_counts(indptr, indices, row)
        for h in range(d + 1):
            if ref_pair[h] is None:
                hit = np.flatnonzero(row == h)
                if hit.size:
                    y = int(hit[0])
                    ref_pair[h] = (x, y)
                    ref[_B][h] = counts[y, _B]
                    ref[_C][h] = counts[y, _C]
        for col in (_B, _C):
            expected = ref[col][row]
            bad = np.flatnonzero(counts[:, col] != expected)
            if bad.size:
                y = int(bad[0])
                h = int(row[y])
                return StructureWitness(kinds[col], x, y, h, int(counts[y, col]),
                                        int(expected[y]), ref_pair[h])
    return IntersectionArray(tuple(int(v) for v in ref[_B][:d]), tuple(int(v) for v in ref[_C][1:]))


def _constant_counts(g: Graph, specs):
    """Check that each ``(kind, h, column)`` count is constant over distance-``h`` pairs.

    Returns ``{kind: value}`` (``None`` when no pair sits at distance ``h``) or
    the first :class:`StructureWitness` found.
    """
    mat = g.distance_matrix()
    indptr, indices = g.csr
    values = {kind: None for kind, _, _ in specs}
    refs = {}
    for x in range(g.n):
        row = mat[x]
        counts = kernels.shell_counts(indptr, indices, row)
        for kind, h, col in specs:
            ys = np.flatnonzero(row == h)
            if not ys.size:
                continue
            got = counts[ys, col]
            if values[kind] is None:
                values[kind] = int(got[0])
                refs[kind] = (x, int(ys[0]))
            bad = np.flatnonzero(got != values[kind])
            if bad.size:
                y = int(ys[bad[0]])
                return StructureWitness(kind, x, y, h, int(counts[y, col]), values[kind], refs[kind])
    return values


def _valency_witness(g):
    deg = g.degrees()
    for v, k in enumerate(deg):
        if k != deg[0]:
            return StructureWitness("valency", v, v, 0, k, deg[0], (0, 0),
                                    f"vertex {v} has valency {k}, vertex 0 has {deg[0]}")
    return None


@dataclass(frozen=True)
class AmplyParams:
    v: int
    k: int
    lam: int
    mu: int


def amply_parameters(g: Graph):
    """``(v, k, lambda, mu)`` of an amply regular graph, or a witness."""
    _require_connected(g)
    bad = _valency_witness(g)
    if bad is not None:
        return bad
    found = _constant_counts(g, [("lambda", 1, _A), ("mu", 2, _C)])
    if isinstance(found, StructureWitness):
        return found
    if found["mu"] is None:
        return StructureWitness("vacuous", h=2, detail="no pair of vertices at distance 2; mu is undefined")
    return AmplyParams(g.n, g.degree(0), found["lambda"], found["mu"])


@dataclass(frozen=True)
class ScakParams:
    s: int
    c: int
    a: int
    k: int
    delta: int
    bipartite: bool = False
    side_valencies: Optional[tuple] = None


def _bipartition(g):
    row = g.distance_row(0)
    side = row % 2
    for u, v in g.edges():
        if side[u] == side[v]:
            return None
    return side


def scak_parameters(g: Graph):
    """``(s, c, a, k)`` parameters plus minimum valency, or a witness.

    ``s`` comes from the girth (``2s - 1`` or ``2s``); ``c = |C_s|`` over
    distance-``s`` pairs and ``a = |A_{s-1}|`` over distance-``(s-1)`` pairs
    must be constant, and the graph must be regular or bipartite with constant
    valency on each side.
    """
    _require_connected(g)
    gir = girth(g)
    if gir == float("inf"):
        raise DomainError("graph is a tree; the girth is infinite")
    s = (gir + 1) // 2
    found = _constant_counts(g, [("c_s", s, _C), ("a_s", s - 1, _A)])
    if isinstance(found, StructureWitness):
        return found
    if found["c_s"] is None:
        return StructureWitness("vacuous", h=s, detail=f"no pair of vertices at distance s = {s}")
    c, a = found["c_s"], found["a_s"]
    deg = g.degrees()
    k, delta = max(deg), min(deg)
    if c < 2 or k < 2:
        return StructureWitness("range", h=s, count=c,
                                detail=f"parameters c = {c}, k = {k} must both be at least 2")
    if k == delta:
        return ScakParams(s, c, a, k, delta)
    side = _bipartition(g)
    if side is None:
        return StructureWitness("structure", detail="graph is neither regular nor bipartite")
    vals = []
    for part in (0, 1):
        ks = {deg[v] for v in range(g.n) if side[v] == part}
        if len(ks) != 1:
            return StructureWitness("structure", detail=f"valencies {sorted(ks)} on one side of the bipartition")
        vals.append(ks.pop())
    return ScakParams(s, c, a, k, delta, True, tuple(sorted(vals)))
