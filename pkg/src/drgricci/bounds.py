"""Closed-form diameter bounds from intersection numbers, and a bound scanner.

Bounds implemented (``BoundResult.name``):

``residue``
    ``max_{0<=r<q} floor((b_p - c_p + b_r - c_r) / (2c_q + M)) q + p + r``
``chain``
    ``2p - 1 + max(0, (floor(2(b_p - c_p) / (2c_q + M)) + 1) q)``
``np``
    Neumaier-Penjic: ``(floor((k - c_{q+1} - 1) / c_q) + 2) q + 1``
``amply``, ``bcn``, ``hlx``
    amply regular graphs ``(v, k, lambda, mu)``
``scak``, ``terwilliger``
    ``(s, c, a, k)``-graphs with minimum valency ``delta``

where ``M = ceil(a_q (c_{q+1} - a_q) / (c_{q+1} - c_q))`` is the number of
distance-saving pairs a best perfect matching is guaranteed to contain.

Floors and ceilings are mathematical (toward -inf / +inf): numerators such
as ``2(b_p - c_p)`` are often negative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .errors import DomainError
from .regularity import ArrayPrefix, IntersectionArray, StructureWitness, intersection_array


@dataclass(frozen=True)
class BoundResult:
    name: str
    value: Optional[int]
    hypotheses: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    notes: tuple = ()

    @property
    def applicable(self) -> bool:
        return self.value is not None

    def as_row(self) -> dict:
        return {
            "bound": self.name,
            "q": self.params.get("q"),
            "p": self.params.get("p"),
            "value": self.value,
            "applicable": self.applicable,
            "failed": [h for h, ok in self.hypotheses.items() if not ok],
            "notes": list(self.notes),
        }


def matching_gain(a_q: int, c_q: int, c_next: int) -> Optional[int]:
    """``ceil(a_q (c_{q+1} - a_q) / (c_{q+1} - c_q))``; ``None`` off its domain."""
    if not (c_next > c_q and c_next >= a_q >= 0):
        return None
    return -(-a_q * (c_next - a_q) // (c_next - c_q))


def _ceil_div(a, b):
    return -(-a // b)


def _unknown(arr, **needed):
    missing = [name for name, v in needed.items() if v is None]
    return missing


def scale_hypotheses(arr, q: int) -> dict:
    """Gates shared by the residue, chain and scale-estimate statements at ``q``.

    Unknown entries count as failed gates.
    """
    a_prev, a_q = arr.a_at(q - 1), arr.a_at(q)
    c_q, c_next = arr.c_at(q), arr.c_at(q + 1)
    if arr.d is not None:
        in_range = 1 <= q <= arr.d - 1
    else:
        in_range = q >= 1 and c_next is not None
    return {
        "1<=q<=d-1": in_range,
        "a_{q-1}=0": a_prev == 0,
        "c_{q+1}>c_q": c_q is not None and c_next is not None and c_next > c_q,
        "c_{q+1}>=a_q": c_next is not None and a_q is not None and c_next >= a_q,
    }


def _b_p(arr, p):
    """``b_p``, or the worst case ``k - c_p`` when only ``c_p`` is known."""
    b_p, c_p = arr.b_at(p), arr.c_at(p)
    if b_p is not None or c_p is None or arr.k is None:
        return b_p, ()
    return arr.k - c_p, (f"b_{p} unknown; using b_{p} <= k - c_{p} = {arr.k - c_p}",)


def residue_bound(arr: Union[IntersectionArray, ArrayPrefix], q: int, p: int) -> BoundResult:
    """Diameter bound from the first few intersection numbers (max over residues r)."""
    hyp = scale_hypotheses(arr, q)
    c_p = arr.c_at(p)
    hyp["0<=p<=d"] = p >= 0 and c_p is not None and (arr.d is None or p <= arr.d)
    b_p, notes = _b_p(arr, p) if hyp["0<=p<=d"] else (None, ())
    missing = [f"b_{r}" for r in range(q) if arr.b_at(r) is None]
    missing += [f"c_{r}" for r in range(q) if arr.c_at(r) is None]
    if hyp["0<=p<=d"] and b_p is None:
        missing.append(f"b_{p}")
    hyp["entries known"] = not missing
    if missing:
        notes += (f"missing {', '.join(missing)}",)
    params = {"q": q, "p": p}
    if not all(hyp.values()):
        return BoundResult("residue", None, hyp, params, notes)
    c_q = arr.c_at(q)
    gain = matching_gain(arr.a_at(q), c_q, arr.c_at(q + 1))
    den = 2 * c_q + gain
    terms = {r: (b_p - c_p + arr.b_at(r) - arr.c_at(r)) // den * q + p + r for r in range(q)}
    r_best = max(terms, key=lambda r: (terms[r], -r))
    params.update(M=gain, b_p=b_p, c_p=c_p, r=r_best, terms=terms)
    return BoundResult("residue", terms[r_best], hyp, params, notes)


def chain_bound(a_prev: int, a_q: int, c_q: int, c_next: int, b_p: int, c_p: int, p: int, q: int) -> BoundResult:
    """``2p - 1 + max(0, (floor(2(b_p - c_p) / (2c_q + M)) + 1) q)`` from raw numbers."""
    hyp = {
        "q>=1": q >= 1,
        "p>=0": p >= 0,
        "a_{q-1}=0": a_prev == 0,
        "c_{q+1}>c_q": c_next > c_q,
        "c_{q+1}>=a_q": c_next >= a_q,
    }
    params = {"q": q, "p": p}
    if not all(hyp.values()):
        return BoundResult("chain", None, hyp, params)
    gain = matching_gain(a_q, c_q, c_next)
    steps = (2 * (b_p - c_p)) // (2 * c_q + gain) + 1
    params.update(M=gain, b_p=b_p, c_p=c_p)
    return BoundResult("chain", 2 * p - 1 + max(0, steps * q), hyp, params)


def chain_bound_from(arr, q: int, p: int) -> BoundResult:
    """:func:`chain_bound` fed from an array or prefix (with the ``b_p`` fallback)."""
    hyp = scale_hypotheses(arr, q)
    c_p = arr.c_at(p)
    hyp["0<=p<=d"] = p >= 0 and c_p is not None and (arr.d is None or p <= arr.d)
    if not all(hyp.values()):
        return BoundResult("chain", None, hyp, {"q": q, "p": p})
    b_p, notes = _b_p(arr, p)
    if b_p is None:
        hyp["entries known"] = False
        return BoundResult("chain", None, hyp, {"q": q, "p": p}, (f"missing b_{p}",))
    res = chain_bound(arr.a_at(q - 1), arr.a_at(q), arr.c_at(q), arr.c_at(q + 1), b_p, c_p, p, q)
    return BoundResult(res.name, res.value, {**hyp, **res.hypotheses}, res.params, notes)


def np_bound(arr, q: int) -> BoundResult:
    """Neumaier-Penjic bound ``(floor((k - c_{q+1} - 1)/c_q) + 2) q + 1``."""
    k = arr.k
    c_q, c_next, a_q = arr.c_at(q), arr.c_at(q + 1), arr.a_at(q)
    if arr.d is not None:
        in_range = 2 <= q <= arr.d - 1
    else:
        in_range = q >= 2 and c_next is not None
    hyp = {
        "k>=3": k is not None and k >= 3,
        "2<=q<=d-1": in_range,
        "c_{q+1}>c_q": c_q is not None and c_next is not None and c_next > c_q,
        "a_q<=c_{q+1}-c_q": a_q is not None and c_next is not None and a_q <= c_next - c_q,
    }
    params = {"q": q}
    if not all(hyp.values()):
        return BoundResult("np", None, hyp, params)
    return BoundResult("np", ((k - c_next - 1) // c_q + 2) * q + 1, hyp, params)


def amply_bounds(k: int, lam: int, mu: int, diameter: Optional[int] = None) -> list[BoundResult]:
    """Bounds for amply regular graphs with parameters ``(v, k, lam, mu)``.

    All three are stated for diameter at least 4. When ``diameter`` is unknown
    or smaller the results carry a "conditionally valid" note.
    """
    notes = ()
    if diameter is None or diameter < 4:
        notes = ("conditionally valid (d >= 4 assumed)",)
    params = {"k": k, "lambda": lam, "mu": mu}
    out = []
    hyp = {"mu!=1": mu != 1, "mu>=lambda": mu >= lam}
    if all(hyp.values()):
        gain = _ceil_div(lam * (mu - lam), mu - 1)
        value = (2 * (k - 2 * mu)) // (2 + gain) + 4
        out.append(BoundResult("amply", value, hyp, {**params, "M": gain}, notes))
    else:
        out.append(BoundResult("amply", None, hyp, params))
    hyp = {"mu!=1": mu != 1, "mu>lambda": mu > lam}
    ok = all(hyp.values())
    out.append(BoundResult("bcn", k - 2 * mu + 4 if ok else None, hyp, params, notes if ok else ()))
    out.append(BoundResult("hlx", 2 * k // 3 if ok else None, dict(hyp), params, notes if ok else ()))
    return out


def scak_bounds(s: int, c: int, a: int, delta: int, k: int) -> list[BoundResult]:
    """Bounds for ``(s, c, a, k)``-graphs; ``delta`` is the minimum valency."""
    params = {"s": s, "c": c, "a": a, "delta": delta, "k": k}
    hyp = {"a<=c": a <= c, "c>=2": c >= 2}
    out = []
    if all(hyp.values()):
        gain = _ceil_div(a * (c - a), c - 1)
        value = max(2 * s, (s - 1) * ((2 * (delta - 2 * c)) // (2 + gain) + 3) + 2)
        out.append(BoundResult("scak", value, hyp, {**params, "M": gain}))
    else:
        out.append(BoundResult("scak", None, hyp, params))
    hyp = {"a<=c": a <= c, "c>2": c > 2}
    if all(hyp.values()):
        exact = max(Fraction(3 * s - 1),
                    (s - 1) * (Fraction(2 * c * k - 2 * c, 3 * c - 2) - 2 * c + 5) + 2)
        out.append(BoundResult("terwilliger", math.floor(exact), hyp, {**params, "exact": exact}))
    else:
        out.append(BoundResult("terwilliger", None, hyp, params))
    return out


def generic_diameter_bound(p: int, q: int, c1, c2) -> int:
    """Diameter bound from a jump estimate ``p + C2`` and a scale estimate ``q - C1``.

    ``2p - 1 + max(0, (floor(2 C2 / C1) + 1) q)``.
    """
    c1, c2 = Fraction(c1), Fraction(c2)
    if c1 <= 0:
        raise DomainError(f"scale constant must be positive, got {c1}")
    if q <= 0 or p < 0:
        raise DomainError(f"need q > 0 and p >= 0, got q={q}, p={p}")
    return 2 * p - 1 + max(0, (math.floor(2 * c2 / c1) + 1) * q)


@dataclass
class Scan:
    """Every evaluated ``(bound, q, p)`` cell and the smallest applicable value."""

    best: Optional[BoundResult]
    table: list
    array: object = None
    diameter: Optional[int] = None
    tight: Optional[bool] = None
    status: str = "ok"


def scan_cells(arr):
    """Evaluate residue/chain bounds on all ``(q, p)`` and np bounds on all ``q``."""
    if arr.d is not None:
        qs = range(1, arr.d)
        ps = range(0, arr.d + 1)
    else:
        qs = range(1, len(arr.c))
        ps = range(0, len(arr.c) + 1)
    table = []
    for q in qs:
        for p in ps:
            table.append(residue_bound(arr, q, p))
            table.append(chain_bound_from(arr, q, p))
        if q >= 2:
            table.append(np_bound(arr, q))
    return table


def best_bound(obj) -> Scan:
    """Scan a graph, a full array or a prefix and return the minimum applicable bound."""
    from .graph import Graph

    diameter = None
    if isinstance(obj, Graph):
        diameter = obj.diameter()
        arr = intersection_array(obj)
        if isinstance(arr, StructureWitness):
            return Scan(None, [], arr, diameter, None, "not distance-regular")
    else:
        arr = obj
    table = scan_cells(arr)
    live = [r for r in table if r.applicable]
    if not live:
        return Scan(None, table, arr, diameter, None, "no applicable bound")
    order = {"residue": 0, "chain": 1, "np": 2}
    best = min(live, key=lambda r: (r.value, order[r.name], r.params["q"], r.params.get("p", 0)))
    tight = None if diameter is None else best.value == diameter
    return Scan(best, table, arr, diameter, tight)
