import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hygreedy.analysis import (
    balance_check,
    containment_frequency,
    count_contained,
    degcond_predictor,
    edges_containing_host_edge,
    gowers_norm,
    intersection_profile,
    max_a_degree,
    min_span,
    turan_exponent,
)
from hygreedy.errors import HypothesisError, InputError, ResourceError
from hygreedy.generators import TEMPLATES, Template, d_cube, k_ap, template_copies
from hygreedy.hypergraph import Hypergraph, LabeledFamily

from oracles import gowers_brute

CORPUS = ["K3", "C4", "C5", "C6", "K4", "K5", "diamond", "cherry", "K4_3", "K222_3"]


def subsets_of(N):
    return st.sets(st.integers(0, N - 1), min_size=1, max_size=N)


class TestGowers:
    def test_full_set(self):
        assert gowers_norm(range(13), 13, 2) == 0

    def test_u1_vanishes_at_11(self):
        for I in ([0], [1, 4, 5], range(10)):
            assert gowers_norm(I, 11, 1) == pytest.approx(0, abs=1e-12)

    def test_singleton_against_brute_force(self):
        assert gowers_norm([0], 5, 2) == pytest.approx(gowers_brute([0], 5, 2), abs=1e-10)

    @given(st.data())
    @settings(max_examples=40, deadline=None)
    def test_matches_brute_force(self, data):
        N = data.draw(st.sampled_from([5, 7, 11]))
        d = data.draw(st.integers(1, 3 if N < 11 else 2))
        I = data.draw(subsets_of(N))
        assert gowers_norm(I, N, d) == pytest.approx(gowers_brute(I, N, d), abs=1e-10)

    @given(subsets_of(31), st.integers(0, 30), st.integers(1, 30))
    @settings(max_examples=30, deadline=None)
    def test_translation_and_dilation(self, I, c, u):
        base = gowers_norm(I, 31, 2)
        assert gowers_norm([(x + c) % 31 for x in I], 31, 2) == pytest.approx(base, abs=1e-10)
        assert gowers_norm([(u * x) % 31 for x in I], 31, 2) == pytest.approx(base, abs=1e-10)

    def test_errors(self):
        with pytest.raises(InputError):
            gowers_norm([], 7, 2)
        with pytest.raises(InputError):
            gowers_norm([1], 7, 0)
        with pytest.raises(ResourceError):
            gowers_norm([1], 101, 3, budget=10**6)


class TestProfile:
    def test_extremes(self):
        F = d_cube(11, 1)
        empty = intersection_profile(F, [])
        full = intersection_profile(F, range(11))
        assert empty.counts.tolist() == [110, 0, 0]
        assert full.counts.tolist() == [0, 0, 110]

    def test_mass_conservation(self):
        prof = intersection_profile(d_cube(31, 1), range(10), d=1)
        assert prof.total == 930
        assert prof.prediction[2] == pytest.approx(31**2 * (10 / 31) ** 2)

    @given(st.sets(st.integers(0, 12)))
    @settings(max_examples=30, deadline=None)
    def test_top_bucket_is_containment_count(self, I):
        F = d_cube(13, 2)
        prof = intersection_profile(F, I)
        assert prof.total == len(F)
        assert prof.counts[4] == count_contained(F, I, degrees=False).count


class TestCount:
    def test_pairs_in_triple(self):
        G = Hypergraph(4, list(itertools.combinations(range(4), 2)))
        res = count_contained(G, [0, 1, 2])
        assert res.count == 3 and res.prediction == pytest.approx(6 * 0.75**2)

    def test_empty_set(self):
        assert count_contained(k_ap(11, 3), []).count == 0

    def test_cherries_over_k40(self):
        assert len(template_copies(TEMPLATES["cherry"], 40)) == 40 * math.comb(39, 2) == 29640

    def test_labeled_family_counts_each_label(self):
        F = LabeledFamily(3, [(0, 1), (0, 1), (1, 2)])
        assert count_contained(F, [0, 1], degrees=False).count == 2

    def test_degree_ratios(self):
        G = d_cube(13, 1)
        res = count_contained(G, range(6), p=0.5)
        assert res.max_degrees[1] == max_a_degree(G, 1) == 2 * 12
        assert res.degree_ratios[1] == pytest.approx(24 / (0.5 * len(G)))

    def test_non_uniform(self):
        with pytest.raises(InputError):
            count_contained(Hypergraph(4, [(0, 1), (1, 2, 3)]), [0])

    def test_host_edge_detection(self):
        assert edges_containing_host_edge(d_cube(13, 2), k_ap(13, 3)) == []
        assert edges_containing_host_edge(d_cube(13, 1), k_ap(13, 3)) == []
        bad = edges_containing_host_edge(Hypergraph(5, [(0, 1, 2, 3)]), k_ap(5, 3))
        assert bad == [(0, 1, 2, 3)]


class TestContainment:
    def test_trivial_cases(self):
        H = Hypergraph(5, [(0, 1, 2)])
        assert containment_frequency(H, [], 2, 20).frequency == 1
        assert containment_frequency(H, [0], 0, 20).frequency == 0

    def test_pair_after_two_steps(self):
        H = Hypergraph(5, [(0, 1, 2)])
        res = containment_frequency(H, [0, 1], 2, 3000, seed=11)
        assert res.prediction == pytest.approx(0.16)
        assert abs(res.frequency - 0.1) <= 3 * math.sqrt(0.1 * 0.9 / 3000)

    def test_errors(self):
        H = Hypergraph(5, [(0, 1, 2)])
        with pytest.raises(InputError):
            containment_frequency(H, [0, 1, 2], 3, 10)
        with pytest.raises(InputError):
            containment_frequency(H, [0], 6, 10)


class TestTemplates:
    def test_diamond_not_strict(self):
        v = balance_check(TEMPLATES["diamond"])
        assert not v.strictly_balanced and v.density_ratio == 2
        W = v.witness
        assert len(W) == 3 and TEMPLATES["diamond"].induced_edges(W) == 3

    def test_c4_strict(self):
        v = balance_check(TEMPLATES["C4"])
        assert v.strictly_balanced and v.witness is None and v.density_ratio == Fraction(3, 2)

    def test_complete_3_uniform_vacuous(self):
        assert balance_check(TEMPLATES["K4_3"]).strictly_balanced

    def test_balance_errors(self):
        with pytest.raises(InputError):
            balance_check(Template(2, ((0, 1),)))

    def test_min_span(self):
        assert min_span(TEMPLATES["K3"], 2) == 3
        assert min_span(TEMPLATES["C4"], 2) == 3
        for name in CORPUS:
            t = TEMPLATES[name]
            assert min_span(t, t.e) == t.v
        with pytest.raises(InputError):
            min_span(TEMPLATES["K3"], 4)

    def test_turan(self):
        assert turan_exponent(TEMPLATES["C4"]) == (Fraction(4, 3), Fraction(1, 3))
        assert turan_exponent(TEMPLATES["K3"]) == (Fraction(3, 2), Fraction(1, 2))
        with pytest.raises(HypothesisError):
            turan_exponent(TEMPLATES["diamond"])
        assert turan_exponent(TEMPLATES["diamond"], check=False) == (Fraction(3, 2), Fraction(1, 4))

    def test_degcond_examples(self):
        ok, rows = degcond_predictor(TEMPLATES["K3"])
        assert ok and rows[0].v_a == 3 and rows[0].lhs == 1 and rows[0].rhs == Fraction(1, 2)
        ok, _ = degcond_predictor(TEMPLATES["diamond"])
        assert not ok

    @pytest.mark.parametrize("name", CORPUS)
    def test_verdicts_agree(self, name):
        t = TEMPLATES[name]
        if t.e < 2 or t.v <= t.k:
            pytest.skip("balance undefined")
        assert degcond_predictor(t)[0] == balance_check(t).strictly_balanced

    def test_triangle_pair_degree_constant(self):
        assert [max_a_degree(template_copies(TEMPLATES["K3"], n), 2) for n in range(6, 11)] == [1] * 5

    @pytest.mark.parametrize("name,n", [("C4", 7), ("diamond", 8), ("K3", 9)])
    def test_degree_exponent_matches_copy_count(self, name, n):
        t = TEMPLATES[name]
        rows = degcond_predictor(t)[1]
        H = template_copies(t, n)
        for row in rows:
            # Delta_a is a polynomial in n of degree v_H - v_a; check the leading behaviour via ratio
            small = max_a_degree(template_copies(t, n - 1), row.a)
            big = max_a_degree(H, row.a)
            if row.codegree_exponent == 0:
                assert small == big
            else:
                assert big > small
