import itertools
import math

import numpy as np
import pytest

from hygreedy.analysis import max_a_degree
from hygreedy.errors import InputError
from hygreedy.generators import (
    TEMPLATES,
    Template,
    colex_rank,
    d_cube,
    k_ap,
    no_coincidence_mask,
    random_uniform,
    sum_free,
    template_copies,
)
from hygreedy.hypergraph import max_set_degree

from oracles import brute_k_aps, brute_template_copies


def test_colex_rank_is_a_bijection():
    subsets = np.array(list(itertools.combinations(range(7), 3)))
    ranks = colex_rank(subsets)
    assert sorted(ranks.tolist()) == list(range(math.comb(7, 3)))


class TestTemplateCopies:
    def test_k3_on_k5(self):
        H = template_copies(TEMPLATES["K3"], 5)
        assert (H.n, len(H), H.r) == (10, 10, 3)
        assert set(H.degrees().tolist()) == {3}

    def test_diamond_on_k10(self):
        H = template_copies(TEMPLATES["diamond"], 10)
        assert H.r == 5
        assert set(H.degrees().tolist()) == {140}

    def test_c4_on_k6(self):
        H = template_copies(TEMPLATES["C4"], 6)
        assert H.r == 4 and len(H) == 45

    @pytest.mark.parametrize("n", range(5, 10))
    def test_triangle_degree(self, n):
        assert set(template_copies(TEMPLATES["K3"], n).degrees().tolist()) == {n - 2}

    @pytest.mark.parametrize("n", [8, 10])
    def test_diamond_closed_forms(self, n):
        H = template_copies(TEMPLATES["diamond"], n)
        assert set(H.degrees().tolist()) == {5 * (n - 2) * (n - 3) // 2}
        assert max_set_degree(H, 3) == 3 * (n - 3)

    @pytest.mark.parametrize("name,n", [("C4", 6), ("diamond", 6), ("cherry", 6), ("K4_3", 6)])
    def test_matches_brute_force(self, name, n):
        t = TEMPLATES[name]
        H = template_copies(t, n)
        ground = list(itertools.combinations(range(n), t.k))
        rank = {s: int(colex_rank(np.array([s]))[0]) for s in ground}
        expected = {frozenset(rank[tuple(sorted(e))] for e in copy)
                    for copy in brute_template_copies(t.edges, t.v, n, t.k)}
        assert {frozenset(e) for e in H.edges} == expected

    def test_errors(self):
        with pytest.raises(InputError):
            template_copies(Template(2, ((0, 1),)), 5)
        with pytest.raises(InputError):
            template_copies(TEMPLATES["K4"], 3)

    def test_template_file_roundtrip(self, tmp_path):
        path = tmp_path / "c4.tmpl"
        path.write_text(TEMPLATES["C4"].format())
        t = Template.read(path)
        assert t.edges == TEMPLATES["C4"].edges and (t.v, t.k) == (4, 2)

    def test_template_parse_errors(self):
        with pytest.raises(InputError):
            Template.parse("tmpl 3 2 2\n0 1\n")
        with pytest.raises(InputError):
            Template.parse("tmpl 3 1 2\n0 5\n")


class TestKAP:
    @pytest.mark.parametrize("N,k,m,deg", [(7, 3, 21, 9), (11, 3, 55, 15)])
    def test_sizes(self, N, k, m, deg):
        H = k_ap(N, k)
        assert len(H) == m and set(H.degrees().tolist()) == {deg}

    def test_z5_all_triples(self):
        assert len(k_ap(5, 3)) == 10

    @pytest.mark.parametrize("N,k", [(7, 3), (11, 3), (11, 4), (13, 5)])
    def test_regular_and_brute(self, N, k):
        H = k_ap(N, k)
        assert {frozenset(e) for e in H.edges} == brute_k_aps(N, k)
        assert len(set(H.degrees().tolist())) == 1
        assert H.degrees()[0] == k * (N - 1) // 2

    def test_multiplicity_variant(self):
        F = k_ap(7, 3, multiplicity=True)
        assert len(F) == 7 * 6
        assert np.bincount(F.array().ravel()).tolist() == [18] * 7

    def test_errors(self):
        with pytest.raises(InputError):
            k_ap(9, 3)
        with pytest.raises(InputError):
            k_ap(3, 3)


class TestSumFree:
    def test_n5(self):
        edges = {frozenset(e) for e in sum_free(5).edges}
        expected = {frozenset(t) for t in itertools.combinations(range(5), 3)
                    if any((t[i] + t[j]) % 5 == t[3 - i - j] for i in range(3) for j in range(3) if i != j)}
        assert {frozenset((1, 2, 3)), frozenset((1, 3, 4))} <= edges
        assert edges == expected

    def test_no_degenerate_edges(self):
        assert all(len(set(e)) == 3 for e in sum_free(11).edges)

    def test_codegree_condition_fails(self):
        from hygreedy.hypergraph import check_main_conditions

        rep = check_main_conditions(sum_free(101), 0.1)
        assert not rep.gamma_satisfied
        assert rep.gamma >= rep.D ** 0.9

    def test_small_n(self):
        with pytest.raises(InputError):
            sum_free(4)


class TestDCube:
    def test_d1_size(self):
        assert len(d_cube(11, 1)) == 110

    def test_example_h(self):
        h = np.array([[1, 3]])
        assert no_coincidence_mask(h, 11)[0]
        values = sorted({(w[0] * 1 + w[1] * 3) % 11 for w in itertools.product((-1, 0, 1), repeat=2)})
        assert values == sorted([0, 1, 10, 3, 8, 4, 7, 9, 2])

    def test_too_small(self):
        with pytest.raises(InputError):
            d_cube(7, 2)

    @pytest.mark.parametrize("N", [11, 31, 61])
    def test_size_formula(self, N):
        # for d = 2, h is bad iff it lies on one of 8 lines through 0, which meet only at 0
        assert len(d_cube(N, 2)) == N * (N * N - 8 * (N - 1) - 1)
        assert len(d_cube(N, 1)) == N * (N - 1)

    @pytest.mark.parametrize("N", [31, 61])
    def test_density_band(self, N):
        for d in (1, 2):
            ratio = len(d_cube(N, d)) / N ** (d + 1)
            assert 0.5 <= ratio <= 1

    def test_density_grows(self):
        ratios = [len(d_cube(N, 2)) / N**3 for N in (11, 31, 61)]
        assert ratios == sorted(ratios)

    def test_edges_have_no_three_term_progressions(self):
        F = d_cube(31, 2)
        aps = {frozenset(e) for e in k_ap(31, 3).edges}
        for e in F.edge_sets():
            assert not any(frozenset(c) in aps for c in itertools.combinations(e, 3))

    def test_vertices_distinct(self):
        arr = d_cube(31, 2).array()
        assert all(len(set(row)) == 4 for row in arr.tolist())

    def test_set_degree_profile_bounded(self):
        # a fixed a-set sits in at most (2^d)!/(2^d-a)! N^(d - ceil(log2 a)) labeled cubes
        ceilings = {1: 4, 2: 12, 3: 24, 4: 24}
        ratios = {}
        for N in (31, 61):
            F = d_cube(N, 2)
            for a, c in ceilings.items():
                ratio = max_a_degree(F, a) / N ** (2 - math.ceil(math.log2(a)))
                assert ratio <= c
                ratios[N, a] = ratio
        for a in ceilings:
            assert ratios[61, a] <= 1.2 * ratios[31, a]


class TestRandomUniform:
    def test_saturated(self):
        H = random_uniform(10, 3, 120, 0)
        assert len(H) == 120

    def test_deterministic(self):
        assert random_uniform(14, 4, 25, 7).edges == random_uniform(14, 4, 25, 7).edges

    def test_valid(self):
        H = random_uniform(14, 4, 25, 7)
        assert len({frozenset(e) for e in H.edges}) == 25 and H.r == 4

    def test_infeasible(self):
        with pytest.raises(InputError):
            random_uniform(5, 3, 11, 0)
