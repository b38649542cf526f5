import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from drgricci import catalog
from drgricci.bounds import (amply_bounds, best_bound, chain_bound, chain_bound_from, generic_diameter_bound,
                             matching_gain, np_bound, residue_bound, scak_bounds, scale_hypotheses)
from drgricci.errors import DomainError
from drgricci.regularity import (AmplyParams, ArrayPrefix, IntersectionArray, amply_parameters,
                                 intersection_array, scak_parameters)
from drgricci.transport import verify_jump_estimate, verify_scale_estimate
from helpers import cached_graph

GOLAY22_PREFIX = ArrayPrefix((22, 21, 20, 3), (1, 2, 3, 20))
WELLS_PREFIX = ArrayPrefix((5, 4, 1), (1, 1, 4))
GOLAY21_PREFIX = ArrayPrefix((21, 20, 16, 6, 2), (1, 2, 6, 16))
SMALL_DR = [e for e in catalog.DISTANCE_REGULAR if not e.name.startswith("golay")]


def residue_oracle(b, c, k, q, p, b_p):
    """Direct evaluation with Fractions and math.floor / math.ceil."""
    a = lambda i: k - b[i] - c[i]
    gain = math.ceil(Fraction(a(q) * (c[q + 1] - a(q)), c[q + 1] - c[q]))
    den = 2 * c[q] + gain
    return max(math.floor(Fraction(b_p - c[p] + b[r] - c[r], den)) * q + p + r for r in range(q))


class TestGain:
    def test_worked_values(self):
        assert matching_gain(16, 3, 20) == 4
        assert matching_gain(3, 2, 6) == 3

    @pytest.mark.parametrize("c_q,c_next", [(1, 2), (3, 20), (0, 7)])
    def test_zero(self, c_q, c_next):
        assert matching_gain(0, c_q, c_next) == 0

    @pytest.mark.parametrize("args", [(1, 2, 2), (5, 1, 4), (-1, 1, 2)])
    def test_off_domain(self, args):
        assert matching_gain(*args) is None


class TestResidue:
    def test_golay22_prefix(self):
        r = residue_bound(GOLAY22_PREFIX, 3, 4)
        assert r.value == 6 and r.params["M"] == 4 and r.params["b_p"] == 2
        assert any("b_4" in n for n in r.notes)

    def test_wells_prefix(self):
        r = residue_bound(WELLS_PREFIX, 2, 3)
        assert r.value == 4 and r.params["M"] == 1 and r.params["b_p"] == 1

    def test_golay21_prefix(self):
        r = residue_bound(GOLAY21_PREFIX, 2, 4)
        assert r.value == 6 and r.params["M"] == 3

    def test_hypercube(self):
        r = residue_bound(IntersectionArray((4, 3, 2, 1), (1, 2, 3, 4)), 1, 0)
        assert r.value == 4 and r.params["M"] == 0

    def test_missing_entries(self):
        r = residue_bound(ArrayPrefix((22, None, 20, 3), (1, 2, 3, 20)), 3, 4)
        assert not r.applicable and not r.hypotheses["entries known"]
        assert any("b_1" in n for n in r.notes)

    def test_p_out_of_range(self):
        assert not residue_bound(GOLAY22_PREFIX, 3, 5).applicable
        assert not residue_bound(IntersectionArray((3, 2, 1), (1, 2, 3)), 1, 4).applicable

    def test_hypothesis_gates(self):
        r = residue_bound(IntersectionArray((3, 2), (1, 1)), 1, 1)
        assert not r.applicable and r.hypotheses == {**scale_hypotheses(IntersectionArray((3, 2), (1, 1)), 1),
                                                     "0<=p<=d": True, "entries known": True}

    @given(st.data())
    def test_matches_fraction_oracle(self, data):
        k = data.draw(st.integers(3, 30))
        d = data.draw(st.integers(2, 6))
        b = sorted(data.draw(st.lists(st.integers(1, k - 1), min_size=d - 1, max_size=d - 1)), reverse=True)
        b = [k] + b
        c = [0, 1] + sorted(data.draw(st.lists(st.integers(1, k), min_size=d - 1, max_size=d - 1)))
        assume(all(k - b[i] - c[i] >= 0 for i in range(d)) and k - c[d] >= 0)
        arr = IntersectionArray(tuple(b), tuple(c[1:]))
        q = data.draw(st.integers(1, d - 1))
        p = data.draw(st.integers(0, d))
        r = residue_bound(arr, q, p)
        if r.applicable:
            assert r.value == residue_oracle(b + [0], c + [None], k, q, p, arr.b_at(p))

    @pytest.mark.parametrize("entry", SMALL_DR, ids=lambda e: e.label)
    def test_more_information_never_hurts(self, entry):
        arr = entry.expected_array
        for q in range(1, arr.d):
            for p in range(arr.d + 1):
                full = residue_bound(arr, q, p)
                # hide b_p only; the bound then falls back to b_p <= k - c_p
                b = list(arr.b)
                if p < arr.d:
                    b[p] = None
                blind = residue_bound(ArrayPrefix(tuple(b), arr.c), q, p)
                if full.applicable and blind.applicable:
                    assert full.value <= blind.value
                if full.applicable and p > q:
                    assert blind.applicable


class TestChain:
    def test_wells(self):
        r = chain_bound_from(WELLS_PREFIX, 2, 3)
        assert r.value == 5
        assert chain_bound(0, 3, 1, 4, 1, 4, 3, 2).value == 5

    def test_zero_numerator(self):
        for p, q in [(1, 1), (3, 2), (4, 3)]:
            assert chain_bound(0, 0, 1, 2, 5, 5, p, q).value == 2 * p - 1 + q

    def test_golay22_prefix(self):
        assert chain_bound(0, 16, 3, 20, 2, 20, 4, 3).value == 7
        assert chain_bound_from(GOLAY22_PREFIX, 3, 4).value == 7

    def test_negative_floor(self):
        # floor(-6/3) = -2 and floor(-36/10) = -4, not truncation
        assert (2 * (1 - 4)) // 3 == -2 and (2 * (2 - 20)) // 10 == -4
        assert chain_bound(0, 0, 1, 2, 0, 3, 3, 1).value == 5 + max(0, (math.floor(Fraction(-6, 2)) + 1))

    def test_gates(self):
        r = chain_bound(1, 0, 1, 2, 1, 1, 1, 1)
        assert not r.applicable and not r.hypotheses["a_{q-1}=0"]
        assert not chain_bound(0, 3, 2, 2, 1, 1, 1, 1).applicable


class TestNP:
    def test_worked_prefixes(self):
        assert np_bound(GOLAY22_PREFIX, 3).value == 7
        assert np_bound(WELLS_PREFIX, 2).value == 5
        assert np_bound(GOLAY21_PREFIX, 3).value == 7

    def test_gates(self):
        assert not np_bound(GOLAY22_PREFIX, 1).applicable  # q >= 2
        assert np_bound(GOLAY21_PREFIX, 2).value == 19
        r = np_bound(IntersectionArray((12, 6, 2), (1, 4, 9)), 2)  # a_2 = 6 > c_3 - c_2 = 5
        assert not r.applicable and r.hypotheses == {"k>=3": True, "2<=q<=d-1": True,
                                                     "c_{q+1}>c_q": True, "a_q<=c_{q+1}-c_q": False}
        assert not np_bound(ArrayPrefix((2, 1), (1, 1)), 2).applicable  # k < 3


class TestClassic:
    def test_hypercube(self):
        amp, bcn, hlx = amply_bounds(4, 0, 2, 4)
        assert amp.value == 4 and bcn.value == 4 and hlx.value == 2
        assert amp.notes == ()

    def test_sample_values(self):
        amp, bcn, hlx = amply_bounds(10, 1, 2)
        assert (amp.value, bcn.value, hlx.value) == (8, 10, 6)
        assert "conditionally valid" in amp.notes[0]

    def test_mu_one(self):
        assert not any(r.applicable for r in amply_bounds(7, 2, 1))

    def test_scak_hypercube(self):
        scak, ter = scak_bounds(2, 2, 0, 4, 4)
        assert scak.value == 5 and not ter.applicable

    def test_scak_sample(self):
        scak, ter = scak_bounds(2, 6, 3, 21, 21)
        assert scak.params["M"] == 2 and scak.value == 9
        # max{5, 1 * ((2*6*21 - 12)/16 - 12 + 5) + 2} = max{5, 15 - 7 + 2}
        assert ter.params["exact"] == 10 and ter.value == 10

    def test_scak_zero_a(self):
        assert scak_bounds(3, 3, 0, 4, 4)[0].params["M"] == 0

    def test_scak_gate(self):
        assert not any(r.applicable for r in scak_bounds(2, 2, 3, 4, 4))


class TestGeneric:
    def test_values(self):
        assert generic_diameter_bound(2, 1, 1, -1) == 3
        assert generic_diameter_bound(3, 2, Fraction(1, 2), Fraction(3, 2)) == 19
        for p, q in [(0, 1), (2, 3)]:
            assert generic_diameter_bound(p, q, Fraction(1, 3), 0) == 2 * p - 1 + q

    @pytest.mark.parametrize("c1", [0, -1, Fraction(-1, 2)])
    def test_bad_constant(self, c1):
        with pytest.raises(DomainError):
            generic_diameter_bound(1, 1, c1, 0)


class TestScan:
    def test_wells(self):
        s = best_bound(cached_graph("wells"))
        assert (s.best.name, s.best.value, s.best.params["q"], s.best.params["p"]) == ("residue", 4, 2, 3)
        assert s.diameter == 4 and s.tight

    def test_hypercube(self):
        s = best_bound(cached_graph("hypercube:4"))
        assert (s.best.name, s.best.value, s.best.params["q"], s.best.params["p"]) == ("residue", 4, 1, 0)

    def test_golay(self):
        s = best_bound(cached_graph("golay_coset_shortened"))
        assert s.best.value == 6 and s.diameter == 6 and s.tight

    def test_complete(self):
        s = best_bound(cached_graph("complete:5"))
        assert s.best is None and s.table == [] and s.diameter == 1
        assert s.status == "no applicable bound"

    def test_not_distance_regular(self):
        from drgricci.graph import build_graph
        s = best_bound(build_graph(3, [(0, 1), (1, 2)]))
        assert s.best is None and s.status == "not distance-regular"

    def test_prefix(self):
        assert best_bound(WELLS_PREFIX).best.value == 4
        assert best_bound(GOLAY22_PREFIX).best.value == 6

    def test_deterministic(self):
        assert best_bound(GOLAY21_PREFIX).table == best_bound(GOLAY21_PREFIX).table


@pytest.mark.parametrize("entry", catalog.DISTANCE_REGULAR, ids=lambda e: e.label)
def test_every_cell_is_sound(entry):
    g = cached_graph(entry.label)
    s = best_bound(g)
    for cell in s.table:
        if cell.applicable:
            assert cell.value >= s.diameter, cell


@pytest.mark.parametrize("entry", SMALL_DR, ids=lambda e: e.label)
def test_classic_bounds_sound(entry):
    g = cached_graph(entry.label)
    d = g.diameter()
    amp = amply_parameters(g)
    if isinstance(amp, AmplyParams) and d >= 4:
        for r in amply_bounds(amp.k, amp.lam, amp.mu, d):
            if r.applicable and r.name != "hlx":
                assert r.value >= d, r
    sc = scak_parameters(g)
    if hasattr(sc, "s"):
        for r in scak_bounds(sc.s, sc.c, sc.a, sc.delta, sc.k):
            if r.applicable:
                assert r.value >= d, r


def test_hlx_printed_value_below_cube_diameter():
    # the printed floor(2k/3) form gives 2 on the 4-cube, whose diameter is 4
    assert amply_bounds(4, 0, 2, 4)[2].value == 2 < cached_graph("hypercube:4").diameter()


def plug_in(g, arr, q, p):
    """Generic bound fed with constants read off the two verified estimates."""
    x = 0
    y_q = next(y for y in range(g.n) if g.distance(x, y) == q)
    y_p = next(y for y in range(g.n) if g.distance(x, y) == p)
    scale = verify_scale_estimate(g, x, y_q, arr)
    jump = verify_jump_estimate(g, x, y_p, Fraction(1, arr.k + 1))
    assert scale.holds and jump.holds
    return generic_diameter_bound(p, q, q - scale.bound, jump.bound - p)


@pytest.mark.parametrize("entry", SMALL_DR, ids=lambda e: e.label)
def test_plug_in_reproduces_chain_bound(entry):
    g = cached_graph(entry.label)
    arr = intersection_array(g)
    for q in range(1, arr.d):
        for p in range(arr.d + 1):
            res = chain_bound_from(arr, q, p)
            if res.applicable:
                assert plug_in(g, arr, q, p) == res.value
