import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from drgricci.errors import DomainError, InputError, TheoremContradiction
from drgricci.graph import build_graph
from drgricci.transport import (Coupling, DualCertificate, Measure, certify, lazy_measure,
                                ollivier_curvature, require_holds, verify_jump_estimate,
                                verify_scale_estimate, wasserstein)
from helpers import cached_graph
from oracles import random_connected_edges, random_measure, w1_assignment


def random_instance(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 20)
    g = build_graph(n, random_connected_edges(rng, n, rng.randint(0, n)))
    denom = rng.randint(1, 60)
    mu = random_measure(rng, range(n), denom, rng.randint(1, n))
    nu = random_measure(rng, range(n), denom, rng.randint(1, n))
    return g, mu, nu


class TestMeasure:
    def test_point(self):
        g = cached_graph("hypercube:4")
        assert lazy_measure(g, 3, 1) == Measure.point(3)

    def test_uniform_on_neighbours(self):
        g = cached_graph("petersen")
        m = lazy_measure(g, 0, 0)
        assert m.as_dict() == {v: Fraction(1, 3) for v in g.neighbors(0)}

    def test_uniformised(self):
        m = lazy_measure(cached_graph("hypercube:4"), 0, Fraction(1, 5))
        assert m.as_dict() == {v: Fraction(1, 5) for v in (0, 1, 2, 4, 8)}

    def test_invalid(self):
        with pytest.raises(InputError):
            Measure(((0, Fraction(1, 2)),))
        with pytest.raises(InputError):
            Measure(((0, 2), (1, -1)))
        with pytest.raises(InputError):
            lazy_measure(cached_graph("petersen"), 0, Fraction(3, 2))

    def test_isolated(self):
        g = build_graph(2, [])
        assert lazy_measure(g, 0, 1) == Measure.point(0)
        with pytest.raises(DomainError):
            lazy_measure(g, 0, Fraction(1, 2))


class TestWasserstein:
    def test_identical(self):
        g = cached_graph("petersen")
        m = lazy_measure(g, 0, Fraction(1, 4))
        w, c = wasserstein(g, m, m)
        assert w == 0 and certify(g, c)
        assert all(u == v for u, v, _ in c.entries)

    @pytest.mark.parametrize("eps", [Fraction(0), Fraction(1, 7), Fraction(1, 3), Fraction(1, 2)])
    def test_single_edge(self, eps):
        g = build_graph(2, [(0, 1)])
        w, _ = wasserstein(g, lazy_measure(g, 0, eps), lazy_measure(g, 1, eps))
        assert w == 1 - 2 * eps

    @pytest.mark.parametrize("label", ["petersen", "hypercube:4", "wells", "johnson:6,3"])
    def test_point_masses(self, label):
        g = cached_graph(label)
        for y in range(g.n):
            w, _ = wasserstein(g, Measure.point(0), Measure.point(y))
            assert w == g.distance(0, y)

    def test_disconnected(self):
        g = build_graph(4, [(0, 1), (2, 3)])
        with pytest.raises(DomainError):
            wasserstein(g, Measure.point(0), Measure.point(3))

    @pytest.mark.parametrize("seed", range(220))
    def test_assignment_oracle(self, seed):
        g, mu, nu = random_instance(seed)
        w, c = wasserstein(g, Measure(tuple(mu)), Measure(tuple(nu)))
        assert w == w1_assignment(g, mu, nu)
        assert certify(g, c)

    @given(st.integers(0, 2**32 - 1))
    def test_metric_axioms(self, seed):
        rng = random.Random(seed)
        n = rng.randint(2, 16)
        g = build_graph(n, random_connected_edges(rng, n, rng.randint(0, n)))
        ms = [Measure(tuple(random_measure(rng, range(n), rng.randint(1, 30), rng.randint(1, n))))
              for _ in range(3)]
        w = {(i, j): wasserstein(g, ms[i], ms[j])[0] for i in range(3) for j in range(3)}
        for i in range(3):
            assert w[i, i] == 0
            for j in range(3):
                assert w[i, j] == w[j, i]
                assert w[i, j] >= 0
                for k in range(3):
                    assert w[i, k] <= w[i, j] + w[j, k]

    @given(st.integers(0, 2**32 - 1))
    def test_certificate(self, seed):
        g, mu, nu = random_instance(seed)
        mu, nu = Measure(tuple(mu)), Measure(tuple(nu))
        w, c = wasserstein(g, mu, nu)
        assert c.marginal_errors() == []
        assert c.cost(g) == w == c.dual.objective(mu, nu)
        for u, v, _ in c.entries:
            assert c.dual.source[u] + c.dual.target[v] == g.distance(u, v)

    def test_certify_rejects_suboptimal(self):
        g = cached_graph("hypercube:3")
        mu, nu = lazy_measure(g, 0, Fraction(1, 2)), lazy_measure(g, 1, Fraction(1, 2))
        _, best = wasserstein(g, mu, nu)
        # product coupling has the right marginals but is far from optimal
        prod = tuple((u, v, a * b) for u, a in mu.support for v, b in nu.support)
        worse = Coupling(prod, mu, nu, best.dual)
        assert worse.marginal_errors() == []
        assert not certify(g, worse)
        assert not certify(g, Coupling(best.entries, mu, nu, None))

    def test_certify_rejects_infeasible_dual(self):
        g = cached_graph("hypercube:3")
        mu, nu = Measure.point(0), Measure.point(7)
        _, c = wasserstein(g, mu, nu)
        bad = DualCertificate({0: Fraction(5)}, {7: Fraction(0)})
        assert not certify(g, Coupling(c.entries, mu, nu, bad))


class TestCurvature:
    def test_single_edge_fully_lazy(self):
        g = build_graph(2, [(0, 1)])
        assert ollivier_curvature(g, 0, 1, 0).value == 0

    def test_cube_edge(self):
        g = cached_graph("hypercube:3")
        w, _ = wasserstein(g, lazy_measure(g, 0, Fraction(1, 4)), lazy_measure(g, 1, Fraction(1, 4)))
        curv = ollivier_curvature(g, 0, 1, Fraction(1, 4))
        assert curv.value == 1 - w
        assert w <= Fraction(1, 2)
        assert not curv.long_scale

    @pytest.mark.parametrize("label", ["petersen", "hypercube:3", "johnson:5,2", "cycle:7"])
    def test_edge_transitive(self, label):
        g = cached_graph(label)
        values = {ollivier_curvature(g, u, v, Fraction(1, 3)).value for u, v in g.edges()}
        assert len(values) == 1

    def test_long_scale(self):
        g = cached_graph("hypercube:4")
        curv = ollivier_curvature(g, 0, 15, Fraction(1, 5))
        assert curv.long_scale and curv.distance == 4

    def test_errors(self):
        with pytest.raises(DomainError):
            ollivier_curvature(cached_graph("petersen"), 1, 1, 0)
        with pytest.raises(DomainError):
            ollivier_curvature(build_graph(3, [(0, 1)]), 0, 2, 0)


class TestJump:
    @pytest.mark.parametrize("eps", [Fraction(0), Fraction(1, 3), Fraction(1)])
    def test_same_vertex(self, eps):
        r = verify_jump_estimate(cached_graph("petersen"), 2, 2, eps)
        assert r.p == 0 and r.bound == r.exact == 1 - eps

    def test_cube_distance_two(self):
        r = verify_jump_estimate(cached_graph("hypercube:4"), 0, 3, Fraction(1, 5))
        assert r.bound == 2 and r.holds

    def test_petersen_edge(self):
        g = cached_graph("petersen")
        r = verify_jump_estimate(g, 0, g.neighbors(0)[0], Fraction(1, 4))
        assert r.bound == Fraction(5, 4) and r.holds

    def test_require_holds(self):
        r = verify_jump_estimate(cached_graph("petersen"), 0, 1, 0)
        assert require_holds(r) is r
        with pytest.raises(TheoremContradiction):
            require_holds(r.__class__(0, 1, 1, Fraction(0), Fraction(0), Fraction(1), False))


class TestScale:
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_cube_neighbours(self, n):
        g = cached_graph(f"hypercube:{n}")
        r = verify_scale_estimate(g, 0, 1)
        assert r.applicable and r.gain == 0
        assert r.bound == 1 - Fraction(2, n + 1) and r.holds

    def test_cube_distance_two(self):
        r = verify_scale_estimate(cached_graph("hypercube:4"), 0, 3)
        assert r.bound == Fraction(6, 5) and r.holds

    def test_wells(self):
        g = cached_graph("wells")
        y = next(v for v in range(g.n) if g.distance(0, v) == 2)
        r = verify_scale_estimate(g, 0, y)
        assert r.gain == 1 and r.bound == Fraction(3, 2) and r.holds

    def test_petersen_inapplicable(self):
        r = verify_scale_estimate(cached_graph("petersen"), 0, 1)
        assert not r.applicable and not r.hypotheses["c_{q+1}>c_q"]
        assert r.holds is None

    def test_not_distance_regular(self):
        with pytest.raises(DomainError):
            verify_scale_estimate(build_graph(3, [(0, 1), (1, 2)]), 0, 2)
