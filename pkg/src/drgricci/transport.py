"""Exact W1 distances between vertex measures, Ollivier curvature, and the
two Wasserstein estimates for jump and scale steps.

Masses are :class:`fractions.Fraction`. A transport instance is scaled by the
least common denominator to integer supplies and solved as a min-cost flow;
the solver's node potentials are kept as a dual certificate of optimality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import kernels
from .bounds import matching_gain, scale_hypotheses
from .errors import DomainError, InputError, TheoremContradiction
from .graph import Graph, local_profile
from .regularity import IntersectionArray, StructureWitness, intersection_array


@dataclass(frozen=True)
class Measure:
    """Finitely supported probability measure; ``support`` is sorted by vertex."""

    support: tuple

    def __post_init__(self):
        items = {}
        for v, w in self.support:
            w = Fraction(w)
            if w < 0:
                raise InputError(f"negative mass {w} at vertex {v}")
            if w:
                items[int(v)] = items.get(int(v), 0) + w
        if sum(items.values()) != 1:
            raise InputError(f"masses sum to {sum(items.values())}, not 1")
        object.__setattr__(self, "support", tuple(sorted(items.items())))

    @classmethod
    def point(cls, v: int) -> "Measure":
        return cls(((v, 1),))

    def vertices(self):
        return [v for v, _ in self.support]

    def as_dict(self):
        return dict(self.support)

    def __getitem__(self, v):
        return self.as_dict().get(v, Fraction(0))


@dataclass(frozen=True)
class DualCertificate:
    """Potentials with ``source[u] + target[v] <= d(u, v)`` for all support pairs."""

    source: dict
    target: dict

    def objective(self, mu: Measure, nu: Measure) -> Fraction:
        return (sum(w * self.source[v] for v, w in mu.support)
                + sum(w * self.target[v] for v, w in nu.support))


@dataclass(frozen=True)
class Coupling:
    """Transport plan: ``entries`` of ``(u, v, mass)`` with positive masses."""

    entries: tuple
    source: Measure
    target: Measure
    dual: Optional[DualCertificate] = field(default=None, compare=False)

    def cost(self, g: Graph) -> Fraction:
        return sum((m * g.distance(u, v) for u, v, m in self.entries), Fraction(0))

    def marginal_errors(self) -> list[str]:
        """Differences between the plan's marginals and the two measures."""
        out = {}
        into = {}
        for u, v, m in self.entries:
            if m <= 0:
                return [f"non-positive mass {m} on ({u}, {v})"]
            out[u] = out.get(u, 0) + m
            into[v] = into.get(v, 0) + m
        errs = []
        for name, got, want in (("source", out, self.source.as_dict()), ("target", into, self.target.as_dict())):
            for v in sorted(set(got) | set(want)):
                if got.get(v, 0) != want.get(v, 0):
                    errs.append(f"{name} mass at {v}: plan has {got.get(v, 0)}, measure has {want.get(v, 0)}")
        return errs


def certify(g: Graph, coupling: Coupling) -> bool:
    """True when the attached dual proves the coupling optimal.

    Checks marginals, dual feasibility on every support pair, tightness on
    every used pair, and equality of primal cost and dual objective.
    """
    dual = coupling.dual
    if dual is None or coupling.marginal_errors():
        return False
    for u, _ in coupling.source.support:
        for v, _ in coupling.target.support:
            if dual.source[u] + dual.target[v] > g.distance(u, v):
                return False
    for u, v, _ in coupling.entries:
        if dual.source[u] + dual.target[v] != g.distance(u, v):
            return False
    return coupling.cost(g) == dual.objective(coupling.source, coupling.target)


def lazy_measure(g: Graph, x: int, eps) -> Measure:
    """Mass ``eps`` at ``x`` and ``(1 - eps) / deg(x)`` on each neighbour."""
    eps = Fraction(eps)
    if not 0 <= eps <= 1:
        raise InputError(f"laziness {eps} outside [0, 1]")
    nbrs = g.neighbors(x)
    if not nbrs:
        if eps != 1:
            raise DomainError(f"vertex {x} is isolated; only eps = 1 is defined")
        return Measure.point(x)
    share = (1 - eps) / len(nbrs)
    return Measure(((x, eps),) + tuple((v, share) for v in nbrs))


def wasserstein(g: Graph, mu: Measure, nu: Measure):
    """Exact ``W1(mu, nu)`` and an optimal coupling carrying its dual certificate."""
    src = mu.vertices()
    dst = nu.vertices()
    rows = {u: g.distance_row(u) for u in src}
    cost = []
    for u in src:
        row = rows[u]
        line = [int(row[v]) for v in dst]
        if min(line) < 0:
            raise DomainError("measures have supports in different components")
        cost.append(line)
    scale = math.lcm(*(w.denominator for _, w in mu.support + nu.support))
    supply = [int(w * scale) for _, w in mu.support]
    demand = [int(w * scale) for _, w in nu.support]
    flow, pu, pv = kernels.transport(supply, demand, cost)
    entries = []
    total = 0
    for i, u in enumerate(src):
        for j, v in enumerate(dst):
            f = int(flow[i][j])
            if f:
                entries.append((u, v, Fraction(f, scale)))
                total += f * cost[i][j]
    dual = DualCertificate({u: Fraction(int(p)) for u, p in zip(src, pu)},
                           {v: Fraction(int(p)) for v, p in zip(dst, pv)})
    return Fraction(total, scale), Coupling(tuple(entries), mu, nu, dual)


@dataclass(frozen=True)
class Curvature:
    value: Fraction
    distance: int
    long_scale: bool


def ollivier_curvature(g: Graph, x: int, y: int, p) -> Curvature:
    """``1 - W1(mu_x^p, mu_y^p) / d(x, y)``; long-scale when ``d(x, y) >= 2``."""
    if x == y:
        raise DomainError("curvature needs two distinct vertices")
    d = g.distance(x, y)
    if d == math.inf:
        raise DomainError(f"vertices {x} and {y} are disconnected")
    w, _ = wasserstein(g, lazy_measure(g, x, p), lazy_measure(g, y, p))
    return Curvature(1 - w / d, d, d >= 2)


@dataclass(frozen=True)
class JumpReport:
    x: int
    y: int
    p: int
    eps: Fraction
    bound: Fraction
    exact: Fraction
    holds: bool


def verify_jump_estimate(g: Graph, x: int, y: int, eps) -> JumpReport:
    """Compare ``W1(delta_x, mu_y^eps)`` with ``p + (1 - eps)(|B_p| - |C_p|) / k_y``."""
    eps = Fraction(eps)
    prof = local_profile(g, x, y)
    k_y = g.degree(y)
    bound = prof.h + (1 - eps) * Fraction(prof.b - prof.c, k_y) if k_y else Fraction(prof.h)
    exact, _ = wasserstein(g, Measure.point(x), lazy_measure(g, y, eps))
    return JumpReport(x, y, prof.h, eps, bound, exact, exact <= bound)


@dataclass(frozen=True)
class ScaleReport:
    x: int
    y: int
    q: int
    applicable: bool
    hypotheses: dict
    gain: Optional[int] = None
    bound: Optional[Fraction] = None
    exact: Optional[Fraction] = None
    holds: Optional[bool] = None


def _array_or_raise(g, arr):
    if arr is None:
        arr = intersection_array(g)
    if isinstance(arr, StructureWitness):
        raise DomainError(f"graph is not distance-regular: {arr}")
    return arr


def scale_bound(arr: IntersectionArray, q: int):
    """``q - (2 c_q + M) / (k + 1)`` and the gain ``M``; ``(None, None)`` if inapplicable."""
    hyp = scale_hypotheses(arr, q)
    if not all(hyp.values()):
        return None, None
    gain = matching_gain(arr.a_at(q), arr.c_at(q), arr.c_at(q + 1))
    return q - Fraction(2 * arr.c_at(q) + gain, arr.k + 1), gain


def verify_scale_estimate(g: Graph, x: int, y: int, arr: Optional[IntersectionArray] = None) -> ScaleReport:
    """Check ``W1(mu_x^{1/(k+1)}, mu_y^{1/(k+1)}) <= q - (2 c_q + M)/(k + 1)``.

    ``arr`` may be passed to skip re-deriving the intersection array.
    """
    arr = _array_or_raise(g, arr)
    q = g.distance(x, y)
    hyp = scale_hypotheses(arr, q)
    if not all(hyp.values()):
        return ScaleReport(x, y, q, False, hyp)
    bound, gain = scale_bound(arr, q)
    eps = Fraction(1, arr.k + 1)
    exact, _ = wasserstein(g, lazy_measure(g, x, eps), lazy_measure(g, y, eps))
    return ScaleReport(x, y, q, True, hyp, gain, bound, exact, exact <= bound)


def require_holds(report):
    """Raise :class:`TheoremContradiction` when a verified inequality fails."""
    if report.holds is False:
        raise TheoremContradiction(f"estimate violated: {report}", witness=report)
    return report
