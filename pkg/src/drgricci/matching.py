"""König decompositions and the explicit transport plans behind the scale estimate.

For a pair ``x, y`` at distance ``q`` in a distance-regular graph the plan
moves the lazy measure at ``x`` (laziness ``1/(k+1)``) onto the one at ``y``:

* ``x -> y`` at distance ``q``;
* each ``v`` in ``C_q(y, x)`` to a partner at distance ``q - 2``, read off a
  perfect matching of the ``c_{q-1}``-regular graph ``H1``;
* the remaining neighbours along a perfect matching of the
  ``(c_{q+1} - c_q)``-regular multigraph ``H3`` (``q >= 2``) or ``H4``
  (``q = 1``), chosen to use as many distance-saving edges as possible.

Distance-saving edges are the parallel ``E2`` edges ``v - phi(v)`` of ``H3``
(moved at distance ``q - 1`` instead of ``q``) and the ``E5`` edges
``z_i - z_i'`` of ``H4`` (moved at distance 0). Every construction step
checks the counting facts it relies on and raises
:class:`~drgricci.errors.TheoremContradiction` when a graph disagrees.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import kernels
from .bounds import matching_gain, scale_hypotheses
from .errors import DomainError, TheoremContradiction
from .graph import Graph
from .regularity import IntersectionArray, StructureWitness, intersection_array
from .transport import Coupling, lazy_measure

TAGS = ("E1", "E2", "E3", "E4", "E5")


@dataclass(frozen=True)
class TaggedBipartiteMultigraph:
    """Bipartite multigraph with tagged edges; parallel edges are kept.

    ``left`` and ``right`` hold graph vertices. ``right_is_copy[j]`` marks a
    right vertex that stands in for a copy of ``right[j]`` rather than the
    vertex itself. ``edges`` are ``(left index, right index, tag)`` triples.
    """

    left: tuple
    right: tuple
    edges: tuple
    degree: Optional[int] = None
    right_is_copy: tuple = ()

    def left_degrees(self) -> list[int]:
        deg = [0] * len(self.left)
        for li, _, _ in self.edges:
            deg[li] += 1
        return deg

    def right_degrees(self) -> list[int]:
        deg = [0] * len(self.right)
        for _, ri, _ in self.edges:
            deg[ri] += 1
        return deg

    def tag_count(self, tag: str) -> int:
        return sum(1 for e in self.edges if e[2] == tag)

    def degree_witness(self, r: int):
        """First vertex whose multidegree differs from ``r``, as ``(side, index, degree)``."""
        for side, degs in (("left", self.left_degrees()), ("right", self.right_degrees())):
            for i, d in enumerate(degs):
                if d != r:
                    return side, i, d
        return None


@dataclass(frozen=True)
class Matching:
    """Perfect matching given by edge ids, one per left vertex (in left order)."""

    edge_ids: tuple

    def edges(self, h: TaggedBipartiteMultigraph) -> list[tuple]:
        return [h.edges[e] for e in self.edge_ids]

    def count(self, h: TaggedBipartiteMultigraph, tag: str) -> int:
        return sum(1 for e in self.edge_ids if h.edges[e][2] == tag)

    def __len__(self):
        return len(self.edge_ids)


class NotRegular(DomainError):
    """Input multigraph is not regular; ``witness`` is ``(side, index, degree, expected)``."""

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


def _check_regular(h: TaggedBipartiteMultigraph) -> int:
    if len(h.left) != len(h.right):
        raise NotRegular(f"sides have sizes {len(h.left)} and {len(h.right)}",
                         ("size", None, len(h.left), len(h.right)))
    if h.degree is not None:
        r = h.degree
    elif h.left:
        r = h.left_degrees()[0]
    else:
        r = 0
    bad = h.degree_witness(r)
    if bad is not None:
        side, i, d = bad
        raise NotRegular(f"{side} vertex {i} has degree {d}, expected {r}", (side, i, d, r))
    return r


def _incidence(h):
    adj = [[] for _ in h.left]
    for e, (li, _, _) in enumerate(h.edges):
        adj[li].append(e)
    return adj, [ri for _, ri, _ in h.edges]


def konig_decompose(h: TaggedBipartiteMultigraph) -> list[Matching]:
    """Split an ``r``-regular bipartite multigraph into ``r`` perfect matchings.

    Each round extracts one perfect matching by augmenting paths over the
    edges not used yet; the rest stays regular of degree one less, so Hall's
    condition keeps holding.
    """
    r = _check_regular(h)
    n = len(h.left)
    adj, edge_right = _incidence(h)
    alive = np.ones(len(h.edges), dtype=np.uint8)
    out = []
    for _ in range(r):
        picked = kernels.perfect_matching(n, adj, edge_right, alive)
        if picked is None:
            raise TheoremContradiction("regular bipartite multigraph without a perfect matching", witness=h)
        for e in picked:
            alive[e] = 0
        out.append(Matching(tuple(int(e) for e in picked)))
    return out


# -- gadgets on a distance-regular graph ------------------------------------


def _array(g, arr):
    if arr is None:
        arr = intersection_array(g)
    if isinstance(arr, StructureWitness):
        raise DomainError(f"graph is not distance-regular: {arr}")
    return arr


def _split(g: Graph, x: int, y: int, q: int):
    """Neighbours of ``x`` grouped by distance to ``y`` (offset -1, 0, +1 from ``q``)."""
    row = g.distance_row(y)
    parts = {-1: [], 0: [], 1: []}
    for v in g.neighbors(x):
        parts[int(row[v]) - q].append(v)
    return parts


def _block(g: Graph, rows, cols) -> np.ndarray:
    cols = np.asarray(cols, dtype=np.int64)
    if not len(rows) or not len(cols):
        return np.zeros((len(rows), len(cols)), dtype=np.int32)
    return np.stack([g.distance_row(v)[cols] for v in rows])


def _distance_graph(g, left, right, dist, tag="E1"):
    block = _block(g, left, right)
    ii, jj = np.nonzero(block == dist)
    edges = tuple((int(i), int(j), tag) for i, j in zip(ii, jj))
    return TaggedBipartiteMultigraph(tuple(left), tuple(right), edges)


def _bijection(g, left, right, dist, r, what):
    h = _distance_graph(g, left, right, dist)
    bad = h.degree_witness(r)
    if bad is not None:
        raise TheoremContradiction(f"{what}: {bad[0]} vertex {h.left[bad[1]] if bad[0] == 'left' else h.right[bad[1]]} "
                                   f"has {bad[2]} partners at distance {dist}, expected {r}", witness=bad)
    if not left:
        return {}
    adj, edge_right = _incidence(h)
    picked = kernels.perfect_matching(len(left), adj, edge_right, np.ones(len(h.edges), dtype=np.uint8))
    if picked is None:
        raise TheoremContradiction(f"{what}: regular graph without a perfect matching", witness=h)
    return {h.left[li]: h.right[h.edges[e][1]] for li, e in enumerate(picked)}


def _distance(g, x, y):
    q = g.distance(x, y)
    if q == float("inf"):
        raise DomainError(f"vertices {x} and {y} are disconnected")
    return int(q)


def c_bijection(g: Graph, x: int, y: int, arr: Optional[IntersectionArray] = None) -> dict:
    """Bijection ``C_q(y, x) -> C_q(x, y)`` moving every vertex exactly ``q - 2``.

    Read off one perfect matching of the ``c_{q-1}``-regular graph joining
    the two sets at distance ``q - 2``.
    """
    arr = _array(g, arr)
    q = _distance(g, x, y)
    if q < 2:
        raise DomainError(f"needs d(x, y) >= 2, got {q}")
    left = _split(g, x, y, q)[-1]
    right = _split(g, y, x, q)[-1]
    return _bijection(g, left, right, q - 2, arr.c_at(q - 1), "C-bijection")


def a_bijection(g: Graph, x: int, y: int, arr: Optional[IntersectionArray] = None) -> dict:
    """Bijection ``A_q(y, x) -> A_q(x, y)`` moving every vertex exactly ``q - 1``.

    Needs ``a_{q-1} = 0``; the joining graph is then ``c_q``-regular.
    """
    arr = _array(g, arr)
    q = _distance(g, x, y)
    if q < 1:
        raise DomainError("needs two distinct vertices")
    if arr.a_at(q - 1) != 0:
        raise DomainError(f"a_{q - 1} = {arr.a_at(q - 1)} is not zero")
    left = _split(g, x, y, q)[0]
    right = _split(g, y, x, q)[0]
    return _bijection(g, left, right, q - 1, arr.c_at(q), "A-bijection")


def _require_scale(arr, q):
    hyp = scale_hypotheses(arr, q)
    failed = [name for name, ok in hyp.items() if not ok]
    if failed:
        raise DomainError(f"scale hypotheses fail at q={q}: {', '.join(failed)}")


def build_gadget(g: Graph, x: int, y: int, q: Optional[int] = None,
                 arr: Optional[IntersectionArray] = None) -> TaggedBipartiteMultigraph:
    """Regular multigraph whose perfect matchings pair the neighbours of ``x`` and ``y``.

    ``q >= 2``: left ``A_q(y,x) + B_q(y,x)``, right ``A_q(x,y) + B_q(x,y)``,
    ``E1`` joins pairs at distance ``q`` and ``E2`` adds ``c_{q+1} - a_q``
    parallel edges ``v - phi(v)`` for the A-bijection ``phi``.

    ``q = 1``: left ``z_i`` in ``A_1(y,x)`` then ``B_1(y,x)``, right copies
    ``z_i'`` then ``B_1(x,y)``, with edge classes ``E1`` (B-B adjacent),
    ``E2`` (``v ~ z_i`` gives ``v - z_i'``), ``E3`` (``z_i ~ u``), ``E4``
    (``z_i ~ z_j`` gives ``z_i - z_j'``) and ``E5`` (``c_2 - a_1`` copies of
    ``z_i - z_i'``).

    Either way the result must be ``(c_{q+1} - c_q)``-regular.
    """
    arr = _array(g, arr)
    d = _distance(g, x, y)
    if q is None:
        q = d
    if q != d:
        raise DomainError(f"d({x}, {y}) = {d}, not {q}")
    _require_scale(arr, q)
    r = arr.c_at(q + 1) - arr.c_at(q)
    extra = arr.c_at(q + 1) - arr.a_at(q)
    sx, sy = _split(g, x, y, q), _split(g, y, x, q)
    if q >= 2:
        left = sx[0] + sx[1]
        right = sy[0] + sy[1]
        h = _distance_graph(g, left, right, q)
        phi = a_bijection(g, x, y, arr)
        pos = {v: j for j, v in enumerate(right)}
        par = tuple((i, pos[phi[v]], "E2") for i, v in enumerate(sx[0]) for _ in range(extra))
        h = TaggedBipartiteMultigraph(h.left, h.right, h.edges + par, r, (False,) * len(right))
    else:
        zs, bl, br = sx[0], sx[1], sy[1]
        if sorted(zs) != sorted(sy[0]):
            raise TheoremContradiction("A_1(y, x) and A_1(x, y) differ", witness=(zs, sy[0]))
        a = len(zs)
        left = zs + bl
        right = zs + br
        adj = _block(g, left, right) == 1
        edges = []
        for i in range(len(left)):
            for j in range(len(right)):
                if adj[i, j]:
                    lz, rz = i < a, j < a
                    tag = "E4" if lz and rz else "E3" if lz else "E2" if rz else "E1"
                    edges.append((i, j, tag))
        edges += [(i, i, "E5") for i in range(a) for _ in range(extra)]
        h = TaggedBipartiteMultigraph(tuple(left), tuple(right), tuple(edges), r,
                                      (True,) * a + (False,) * len(br))
    bad = h.degree_witness(r)
    if bad is not None or len(h.left) != len(h.right):
        raise TheoremContradiction(f"gadget at ({x}, {y}) is not {r}-regular: {bad}", witness=(h, bad))
    return h


@dataclass(frozen=True)
class TransportPlan:
    """Coupling built from the gadget plus the rule that produced each entry.

    ``rules[i]`` names the origin of ``coupling.entries[i]``: ``"x->y"``,
    ``"x->x"``, ``"y->y"``, ``"phi"`` or an edge tag of the chosen matching.
    """

    coupling: Coupling
    rules: tuple
    q: int
    gain: int
    bound: Fraction
    cost: Fraction
    matching_index: int
    hits: int
    gadget: TaggedBipartiteMultigraph
    hit_counts: tuple


def _rule_distance(rule, q):
    if rule in ("x->x", "y->y"):
        return 0
    if rule == "x->y":
        return q
    if rule == "phi":
        return q - 2
    if q == 1:
        return 0 if rule == "E5" else 1
    return q - 1 if rule == "E2" else q


def constructive_plan(g: Graph, x: int, y: int, q: Optional[int] = None,
                      arr: Optional[IntersectionArray] = None) -> TransportPlan:
    """Assemble the explicit plan and check it against ``q - (2c_q + M)/(k+1)``.

    Of the ``c_{q+1} - c_q`` matchings in the König decomposition of the
    gadget, the one with most distance-saving edges is used (lowest index on
    ties); by pigeonhole it has at least ``M`` of them.
    """
    arr = _array(g, arr)
    h = build_gadget(g, x, y, q, arr)
    q = _distance(g, x, y)
    k = arr.k
    save = "E5" if q == 1 else "E2"
    gain = matching_gain(arr.a_at(q), arr.c_at(q), arr.c_at(q + 1))
    decomposition = konig_decompose(h)
    counts = tuple(m.count(h, save) for m in decomposition)
    best = max(range(len(counts)), key=lambda i: (counts[i], -i))
    if counts[best] < gain:
        raise TheoremContradiction(f"best matching has {counts[best]} {save} edges, fewer than M = {gain}",
                                   witness=counts)
    mass = Fraction(1, k + 1)
    entries, rules = [], []
    if q == 1:
        entries += [(x, x, mass), (y, y, mass)]
        rules += ["x->x", "y->y"]
    else:
        entries.append((x, y, mass))
        rules.append("x->y")
        for v, u in c_bijection(g, x, y, arr).items():
            entries.append((v, u, mass))
            rules.append("phi")
    for li, ri, tag in decomposition[best].edges(h):
        entries.append((h.left[li], h.right[ri], mass))
        rules.append(tag)
    coupling = Coupling(tuple(entries), lazy_measure(g, x, mass), lazy_measure(g, y, mass))
    errs = coupling.marginal_errors()
    if errs:
        raise TheoremContradiction(f"plan marginals are wrong: {errs[0]}", witness=errs)
    for (u, v, _), rule in zip(entries, rules):
        want = _rule_distance(rule, q)
        if g.distance(u, v) != want:
            raise TheoremContradiction(f"rule {rule} moves {u}->{v} by {g.distance(u, v)}, expected {want}",
                                       witness=(u, v, rule))
    cost = coupling.cost(g)
    bound = q - Fraction(2 * arr.c_at(q) + gain, k + 1)
    if cost > bound:
        raise TheoremContradiction(f"plan cost {cost} exceeds {bound}", witness=(cost, bound))
    return TransportPlan(coupling, tuple(rules), q, gain, bound, cost, best, counts[best], h, counts)
