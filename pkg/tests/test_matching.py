import itertools
import math
import random
from collections import Counter
from fractions import Fraction

import pytest

from drgricci.bounds import scale_hypotheses
from drgricci.errors import DomainError, TheoremContradiction
from drgricci.graph import build_graph, local_profile
from drgricci.matching import (Matching, NotRegular, TaggedBipartiteMultigraph, a_bijection, build_gadget,
                               c_bijection, constructive_plan, konig_decompose)
from drgricci.regularity import intersection_array
from drgricci.transport import lazy_measure, wasserstein
from helpers import cached_graph
from oracles import random_regular_multigraph

PLAN_GRAPHS = ["hypercube:3", "hypercube:4", "hypercube:5", "hamming:2,3", "hamming:3,3",
               "johnson:6,3", "wells", "cycle:8", "complete_bipartite:4,4"]


def multigraph(n, pairs, degree=None):
    return TaggedBipartiteMultigraph(tuple(range(n)), tuple(range(n)),
                                     tuple((i, j, "E1") for i, j in pairs), degree)


def check_decomposition(h, matchings, r):
    assert len(matchings) == r
    used = [e for m in matchings for e in m.edge_ids]
    assert sorted(used) == list(range(len(h.edges)))
    for m in matchings:
        lefts = [h.edges[e][0] for e in m.edge_ids]
        rights = [h.edges[e][1] for e in m.edge_ids]
        assert sorted(lefts) == list(range(len(h.left)))
        assert sorted(rights) == list(range(len(h.right)))


class TestKonig:
    def test_complete_bipartite(self):
        h = multigraph(3, [(i, j) for i in range(3) for j in range(3)])
        check_decomposition(h, konig_decompose(h), 3)

    def test_doubled_diagonal_is_regular(self):
        # double edges on (0,0), (1,1) plus single (0,1), (1,0): every vertex has degree 3
        h = multigraph(2, [(0, 0), (0, 0), (1, 1), (1, 1), (0, 1), (1, 0)])
        check_decomposition(h, konig_decompose(h), 3)

    def test_not_regular(self):
        h = multigraph(2, [(0, 0), (0, 0), (1, 1), (0, 1), (1, 0)])
        with pytest.raises(NotRegular) as info:
            konig_decompose(h)
        side, index, degree, expected = info.value.witness
        assert degree != expected
        assert [h.left_degrees, h.right_degrees][side == "right"]()[index] == degree
        assert isinstance(info.value, DomainError)

    def test_unequal_sides(self):
        h = TaggedBipartiteMultigraph((0, 1), (0,), ((0, 0, "E1"), (1, 0, "E1")))
        with pytest.raises(NotRegular):
            konig_decompose(h)

    def test_doubled_matching(self):
        h = multigraph(3, [(0, 1), (1, 2), (2, 0)] * 2)
        ms = konig_decompose(h)
        check_decomposition(h, ms, 2)
        assert [sorted(e[:2] for e in m.edges(h)) for m in ms] == [[(0, 1), (1, 2), (2, 0)]] * 2

    def test_empty(self):
        assert konig_decompose(multigraph(0, [])) == []

    @pytest.mark.parametrize("seed", range(120))
    def test_random_multigraphs(self, seed):
        rng = random.Random(seed)
        r = rng.randint(1, 8)
        n = rng.randint(-(-r // 3), 64)  # multiplicity cap 3 needs r <= 3n
        pairs = random_regular_multigraph(rng, n, r, 3)
        assert max(Counter(pairs).values()) <= 3
        h = multigraph(n, pairs)
        check_decomposition(h, konig_decompose(h), r)

    def test_matching_helpers(self):
        h = TaggedBipartiteMultigraph((0,), (0,), ((0, 0, "E2"),), 1)
        m = Matching((0,))
        assert len(m) == 1 and m.count(h, "E2") == 1 and m.count(h, "E1") == 0


def pairs_at(g, x, q):
    return [y for y in range(g.n) if g.distance(x, y) == q]


def brute_bijection_exists(g, left, right, dist):
    return any(all(g.distance(v, u) == dist for v, u in zip(left, perm))
               for perm in itertools.permutations(right))


class TestBijections:
    def test_cube_c_bijection(self):
        g = cached_graph("hypercube:4")
        for y in pairs_at(g, 0, 2):
            phi = c_bijection(g, 0, y)
            assert set(phi) == set(local_profile(g, y, 0).C) == set(local_profile(g, 0, y).C)
            assert all(v == u for v, u in phi.items())

    def test_wells_c_bijection(self):
        g = cached_graph("wells")
        for y in pairs_at(g, 0, 2):
            phi = c_bijection(g, 0, y)
            assert len(phi) == 1 and all(v == u for v, u in phi.items())

    def test_golay_bijections(self):
        g = cached_graph("golay_coset_shortened")
        y = pairs_at(g, 0, 3)[0]
        phi = c_bijection(g, 0, y)
        left = sorted(local_profile(g, y, 0).C)
        right = sorted(local_profile(g, 0, y).C)
        assert len(phi) == 3 and sorted(phi) == left and sorted(phi.values()) == right
        assert all(g.distance(v, u) == 1 for v, u in phi.items())
        assert brute_bijection_exists(g, left, right, 1)
        vphi = a_bijection(g, 0, y)
        assert len(vphi) == 16 and len(set(vphi.values())) == 16
        assert sorted(vphi.values()) == sorted(local_profile(g, 0, y).A)
        assert all(g.distance(v, u) == 2 for v, u in vphi.items())

    def test_wells_a_bijection(self):
        g = cached_graph("wells")
        for y in pairs_at(g, 0, 2):
            vphi = a_bijection(g, 0, y)
            left = sorted(local_profile(g, y, 0).A)
            right = sorted(local_profile(g, 0, y).A)
            assert sorted(vphi) == left and sorted(vphi.values()) == right
            assert all(g.distance(v, u) == 1 for v, u in vphi.items())
            assert brute_bijection_exists(g, left, right, 1)

    def test_cube_a_bijection_empty(self):
        g = cached_graph("hypercube:5")
        for q in range(1, 6):
            assert a_bijection(g, 0, pairs_at(g, 0, q)[0]) == {}

    def test_a_bijection_needs_zero(self):
        g = cached_graph("johnson:6,3")
        with pytest.raises(DomainError):
            a_bijection(g, 0, pairs_at(g, 0, 2)[0])

    def test_c_bijection_needs_distance_two(self):
        g = cached_graph("petersen")
        with pytest.raises(DomainError):
            c_bijection(g, 0, g.neighbors(0)[0])

    @pytest.mark.parametrize("label", PLAN_GRAPHS + ["petersen", "johnson:7,3"])
    def test_distance_contracts(self, label):
        g = cached_graph(label)
        arr = intersection_array(g)
        for x in range(g.n):
            for y in range(g.n):
                q = g.distance(x, y)
                if q >= 2:
                    phi = c_bijection(g, x, y, arr)
                    assert len(phi) == len(set(phi.values())) == arr.c_at(q)
                    assert all(g.distance(v, u) == q - 2 for v, u in phi.items())
                if q >= 1 and arr.a_at(q - 1) == 0:
                    vphi = a_bijection(g, x, y, arr)
                    assert len(vphi) == len(set(vphi.values())) == arr.a_at(q)
                    assert all(g.distance(v, u) == q - 1 for v, u in vphi.items())


class TestGadget:
    def test_cube_distance_two(self):
        g = cached_graph("hypercube:4")
        h = build_gadget(g, 0, 3, 2)
        assert h.tag_count("E2") == 0 and h.degree == 1
        assert len(h.left) == len(h.right) == 2
        assert set(h.left_degrees()) == set(h.right_degrees()) == {1}

    def test_wells(self):
        g = cached_graph("wells")
        for y in pairs_at(g, 0, 2):
            h = build_gadget(g, 0, y)
            assert h.tag_count("E2") == 3 and h.degree == 3
            assert set(h.left_degrees()) == set(h.right_degrees()) == {3}

    def test_petersen_refused(self):
        with pytest.raises(DomainError):
            build_gadget(cached_graph("petersen"), 0, 1)

    def test_wrong_distance(self):
        with pytest.raises(DomainError):
            build_gadget(cached_graph("hypercube:4"), 0, 3, 1)

    def test_hamming_copies(self):
        g = cached_graph("hamming:2,3")
        y = pairs_at(g, 0, 1)[0]
        h = build_gadget(g, 0, y)
        a = sum(h.right_is_copy)
        assert a == 1 and h.degree == 1
        assert h.left[:a] == h.right[:a]
        assert h.tag_count("E5") == 1  # a_1 (c_2 - a_1) = 1

    def test_q1_edge_classes(self):
        g = cached_graph("hamming:3,3")
        y = pairs_at(g, 0, 1)[0]
        h = build_gadget(g, 0, y)
        a = sum(h.right_is_copy)
        for li, ri, tag in h.edges:
            lz, rz = li < a, ri < a
            v, u = h.left[li], h.right[ri]
            if tag == "E5":
                assert li == ri and lz
            else:
                assert g.has_edge(v, u)
                assert tag == {(True, True): "E4", (True, False): "E3",
                               (False, True): "E2", (False, False): "E1"}[lz, rz]

    def test_contradiction_on_wrong_array(self):
        # drop one cube edge but keep claiming the cube's intersection array
        g0 = cached_graph("hypercube:4")
        g = build_graph(16, [e for e in g0.edges() if e != (0, 1)])
        with pytest.raises(TheoremContradiction):
            build_gadget(g, 0, 3, arr=intersection_array(g0))


class TestPlan:
    def test_cube(self):
        g = cached_graph("hypercube:4")
        plan = constructive_plan(g, 0, 3)
        eps = Fraction(1, 5)
        w, _ = wasserstein(g, lazy_measure(g, 0, eps), lazy_measure(g, 3, eps))
        assert w <= plan.cost <= Fraction(6, 5) == plan.bound

    def test_wells(self):
        g = cached_graph("wells")
        for y in pairs_at(g, 0, 2):
            plan = constructive_plan(g, 0, y)
            assert plan.hits >= 1 and plan.gain == 1
            assert plan.cost <= Fraction(3, 2) == plan.bound

    def test_hamming_q1(self):
        g = cached_graph("hamming:2,3")
        y = pairs_at(g, 0, 1)[0]
        plan = constructive_plan(g, 0, y)
        eps = Fraction(1, 5)
        w, _ = wasserstein(g, lazy_measure(g, 0, eps), lazy_measure(g, y, eps))
        assert plan.gain == 1 and plan.bound == 1 - Fraction(3, 5)
        assert w <= plan.cost <= plan.bound
        assert {"x->x", "y->y", "E5"} <= set(plan.rules)

    @pytest.mark.parametrize("label", PLAN_GRAPHS)
    def test_sandwich_and_choice(self, label):
        g = cached_graph(label)
        arr = intersection_array(g)
        eps = Fraction(1, arr.k + 1)
        for y in range(1, g.n):
            q = g.distance(0, y)
            if not all(scale_hypotheses(arr, q).values()):
                continue
            plan = constructive_plan(g, 0, y, arr=arr)
            w, _ = wasserstein(g, lazy_measure(g, 0, eps), lazy_measure(g, y, eps))
            assert w <= plan.cost <= plan.bound
            assert plan.coupling.marginal_errors() == []
            save = "E5" if q == 1 else "E2"
            r = arr.c_at(q + 1) - arr.c_at(q)
            assert plan.hits == max(plan.hit_counts) >= math.ceil(plan.gadget.tag_count(save) / r)
            assert plan.hits >= plan.gain
            assert plan.matching_index == plan.hit_counts.index(plan.hits)
            assert len(plan.coupling.entries) == len(plan.rules) == arr.k + 1
