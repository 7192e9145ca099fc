import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hygreedy.errors import ConfigurationError, InputError, ProcessComplete
from hygreedy.generators import TEMPLATES, k_ap, random_uniform, template_copies
from hygreedy.hypergraph import Hypergraph
from hygreedy.process import (
    check_trackers,
    init,
    is_maximal,
    reference_transition,
    run,
    snapshot,
    step,
)

from oracles import open_and_live


@st.composite
def small_instances(draw):
    r = draw(st.sampled_from([3, 4]))
    n = draw(st.integers(r + 1, 14))
    m = draw(st.integers(0, min(30, math.comb(n, r))))
    seed = draw(st.integers(0, 2**32))
    return random_uniform(n, r, m, seed), draw(st.integers(0, 2**63))


def single_edge():
    return Hypergraph(4, [(0, 1, 2)])


class TestInit:
    def test_single_edge(self):
        s = init(single_edge(), 1)
        assert s.n_open == 4 and len(s.live_edges()) == 1
        assert not s.dminus[:, 3].any()

    def test_k5_triangles(self):
        s = init(template_copies(TEMPLATES["K3"], 5), 0)
        assert s.n_open == 10 and len(s.live_edge_ids()) == 10

    def test_rng_state_deterministic(self):
        H = template_copies(TEMPLATES["K3"], 5)
        assert init(H, 5).rng_state == init(H, 5).rng_state

    def test_non_uniform_input_is_reduced(self):
        s = init(Hypergraph(5, [(0, 1), (0, 1, 2), (2, 3, 4)]), 0)
        assert s.live_edges() == {frozenset((0, 1)), frozenset((2, 3, 4))}


class TestStep:
    def test_forced_hand_simulation(self):
        s = init(single_edge())
        rec = step(s, 0)
        assert s.live_edges() == {frozenset((1, 2))}
        assert s.open_set == {1, 2, 3}
        for v in (1, 2):
            assert s.dplus[v, 2] == 1 and s.dminus[v, 3] == 1
        assert rec.shrunk == {2: 1}

        rec = step(s, 1)
        assert rec.closed == [2]
        assert s.open_set == {3}
        assert s.independent == [0, 1]
        assert not s.live_edges()

    def test_domination(self):
        s = init(Hypergraph(4, [(0, 1, 2), (1, 2, 3)]))
        rec = step(s, 0)
        assert s.live_edges() == {frozenset((1, 2))}
        assert rec.removed["domination"] == {3: 1}
        # the removed 3-edge is charged to its open members only
        assert s.dminus[3, 3] == 1 and s.dminus[1, 3] == 2

    def test_closed_vertex_trackers_frozen(self):
        s = init(Hypergraph(5, [(0, 1, 2), (2, 3, 4)]))
        step(s, 0)
        step(s, 1)
        before = s.dminus[2].copy()
        assert s.status[2] != 0
        step(s, 3)
        assert np.array_equal(s.dminus[2], before)

    def test_forcing_non_open_vertex(self):
        s = init(single_edge())
        step(s, 0)
        with pytest.raises(InputError):
            step(s, 0)
        with pytest.raises(InputError):
            step(s, 9)

    def test_empty_open_set(self):
        s = init(Hypergraph(1, [], uniformity=3))
        step(s)
        with pytest.raises(ProcessComplete):
            step(s)


class TestRun:
    def test_every_order_gives_three(self):
        H = single_edge()
        sizes = set()
        for order in itertools.permutations(range(4)):
            s = init(H)
            for v in order:
                if v in s.open_set:
                    step(s, v)
            assert s.n_open == 0 and is_maximal(H, s.independent)
            sizes.add(len(s.independent))
        assert sizes == {3}

    @pytest.mark.parametrize("seed", range(10))
    def test_random_runs_give_three(self, seed):
        assert run(init(single_edge(), seed)).terminal_size == 3

    def test_edgeless(self):
        trace = run(init(Hypergraph(17, [], uniformity=3), 3))
        assert trace.terminal_size == 17

    def test_step_budget(self):
        trace = run(init(template_copies(TEMPLATES["K3"], 5), 0), max_steps=2)
        assert trace.final_size == 2 and trace.terminal_size is None
        assert [c.i for c in trace.checkpoints] == [0, 1, 2]

    def test_monitor_needs_params(self):
        with pytest.raises(ConfigurationError):
            run(init(single_edge()), monitor=True)
        with pytest.raises(ConfigurationError):
            run(init(single_edge()), checkpoint_every=0)

    def test_checkpoints_increase_and_end_at_termination(self):
        trace = run(init(k_ap(31, 3), 2), checkpoint_every=4)
        steps = [c.i for c in trace.checkpoints]
        assert steps == sorted(set(steps))
        assert trace.checkpoints[-1].open == 0
        assert trace.checkpoints[-1].i == trace.terminal_size

    def test_csv_header(self):
        trace = run(init(k_ap(31, 3), 2), max_steps=3)
        lines = trace.to_csv("hello").splitlines()
        assert lines[0] == "# hello"
        assert lines[1] == "i,t,open,Nq,fv_bound,mean_d2,mean_d3,max_d2,max_d3,live_edges,stop_ok"
        assert len(lines) == 2 + 4

    def test_events(self):
        trace = run(init(k_ap(13, 3), 1), record_events=True)
        assert [e.i for e in trace.events] == list(range(trace.terminal_size))
        assert [e.vertex for e in trace.events] == trace.independent


class TestReference:
    def test_examples(self):
        H = single_edge()
        assert reference_transition(H, [0]) == ({1, 2, 3}, {frozenset((1, 2))})
        assert reference_transition(H, []) == ({0, 1, 2, 3}, {frozenset((0, 1, 2))})
        H2 = Hypergraph(5, [(0, 1, 2), (0, 1, 3)])
        opened, live = reference_transition(H2, [0, 1])
        assert opened == {4} and not live

    def test_errors(self):
        with pytest.raises(InputError):
            reference_transition(single_edge(), [0, 1, 2])
        with pytest.raises(InputError):
            reference_transition(single_edge(), [0, 0])

    def test_agrees_with_independent_oracle(self):
        H = random_uniform(10, 3, 25, 4)
        s = init(H, 9)
        while s.n_open:
            step(s)
            assert reference_transition(H, s.independent) == open_and_live(H.n, H.edges, s.independent)


class TestSnapshot:
    def test_regular_start(self):
        snap = snapshot(init(k_ap(11, 3), 0))
        assert snap["degrees"][3]["mean"] == 15
        assert snap["degrees"][2] == {"mean": 0.0, "min": 0, "max": 0}

    def test_after_one_step(self):
        s = init(single_edge())
        step(s, 0)
        assert snapshot(s)["live_edges"][2] == 1

    def test_terminated(self):
        s = init(k_ap(13, 3), 0)
        run(s)
        snap = snapshot(s)
        assert snap["open"] == 0 and snap["live_total"] == 0


class TestProperties:
    @given(small_instances())
    @settings(max_examples=1000, deadline=None)
    def test_oracle_equivalence(self, case):
        H, seed = case
        s = init(H, seed)
        assert (s.open_set, s.live_edges()) == reference_transition(H, [])
        while s.n_open:
            before = s.n_open
            step(s)
            assert s.n_open < before
            assert (s.open_set, s.live_edges()) == reference_transition(H, s.independent)
            assert check_trackers(s)
            assert s.is_independent()
            assert not s.open_set & set(s.independent)
            assert len(s.independent) == s.i
        assert is_maximal(H, s.independent)

    @given(small_instances())
    @settings(max_examples=50, deadline=None)
    def test_deterministic(self, case):
        H, seed = case
        a = run(init(H, seed))
        b = run(init(H, seed))
        assert a.independent == b.independent
        assert a.to_csv() == b.to_csv()

    @given(small_instances())
    @settings(max_examples=100, deadline=None)
    def test_no_live_edge_dominates_another(self, case):
        H, seed = case
        s = init(H, seed)
        while s.n_open:
            step(s)
            live = s.live_edges()
            assert not any(e < f for e in live for f in live)
            assert all(2 <= len(e) and e <= s.open_set for e in live)
