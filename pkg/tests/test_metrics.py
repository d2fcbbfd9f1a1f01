import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import scenarios
from spectrum_dsa.allocation import Allocation, Assignment, allocate
from spectrum_dsa.conflict import build_conflict_graph
from spectrum_dsa.metrics import (
    admissible_set,
    bandwidth_coverage_product,
    bandwidth_usage,
    coverage_area,
    evaluate,
    feasibility_indicator,
    identity_violations,
    total_feasible,
)
from spectrum_dsa.model import make_scenario
from spectrum_dsa.sorting import SortStrategy, sort_transmitters


def alloc(order, spans):
    return Allocation(tuple(order), {i: Assignment(s, w) for i, (s, w) in spans.items()})


CHAIN = alloc((1, 2, 3), {1: (1, 2), 2: (3, 1), 3: (4, 3)})  # [1,2] [3,3] [4,6]


class TestAdmissible:
    def test_all_within(self):
        assert admissible_set(CHAIN, 6) == {1, 2, 3}

    def test_single_too_wide(self):
        assert admissible_set(alloc((1,), {1: (1, 6)}), 5) == frozenset()

    def test_third_past_F(self):
        assert admissible_set(CHAIN, 5) == {1, 2}


class TestFeasibility:
    def test_fig2_like_feasible(self, fig2_like):
        a = allocate(fig2_like, build_conflict_graph(fig2_like), tuple(range(1, 10)))
        assert bandwidth_usage(a) == 10
        assert feasibility_indicator(a, 10) == 1

    def test_past_F_infeasible(self):
        assert feasibility_indicator(CHAIN, 5) == 0

    def test_empty_network_conventions(self):
        empty = alloc((), {})
        assert feasibility_indicator(empty, 3) == 1
        assert bandwidth_usage(empty) == 0
        assert total_feasible(empty, 3) == 0


class TestBandwidthUsage:
    def test_chain(self):
        assert bandwidth_usage(CHAIN) == 6

    def test_non_overlapping_is_max_demand(self):
        s = make_scenario([(10, 10, 2, 5), (50, 50, 3, 5), (90, 90, 1, 5)], 10)
        g = build_conflict_graph(s)
        assert bandwidth_usage(allocate(s, g, (1, 2, 3))) == 3


class TestCoverageArea:
    def test_empty(self):
        s = make_scenario([(50, 50, 1, 5)], 10)
        assert coverage_area(s, set()) == 0.0

    def test_fully_inside(self):
        s = make_scenario([(50, 50, 1, 5)], 10)
        assert coverage_area(s, {1}) == pytest.approx(math.pi * 25, rel=1e-12)

    def test_on_edge_is_half(self):
        s = make_scenario([(50, 0, 1, 10)], 10)
        assert coverage_area(s, {1}) == pytest.approx(math.pi * 100 / 2, rel=1e-9)

    def test_counts_overlap_twice(self):
        s = make_scenario([(50, 50, 1, 5), (50, 50, 1, 5)], 10)
        assert coverage_area(s, {1, 2}) == pytest.approx(2 * math.pi * 25)


class TestBandwidthCoverage:
    def test_empty(self):
        s = make_scenario([(50, 50, 2, 12)], 10)
        assert bandwidth_coverage_product(s, set()) == 0

    def test_single(self):
        s = make_scenario([(50, 50, 2, 12)], 10)
        assert bandwidth_coverage_product(s, {1}) == 24

    @pytest.mark.parametrize("k", [0, 1, 4, 7])
    def test_homogeneous_linear(self, k):
        s = make_scenario([(10.0 * i, 50, 2, 12) for i in range(1, 8)], 10)
        assert bandwidth_coverage_product(s, set(range(1, k + 1))) == 24 * k


class TestTotalFeasible:
    def test_feasible_is_N(self):
        s = make_scenario([(4.0 * i, 50, 1, 1) for i in range(1, 26)], 10)
        a = allocate(s, build_conflict_graph(s), tuple(range(1, 26)))
        assert total_feasible(a, 10) == 25

    def test_first_inadmissible_position(self):
        a = alloc((4, 2, 1, 3), {4: (1, 1), 2: (2, 1), 1: (3, 5), 3: (3, 1)})
        assert admissible_set(a, 4) == {2, 3, 4}
        assert total_feasible(a, 4) == 2

    def test_first_too_wide(self):
        a = alloc((2, 1), {1: (1, 1), 2: (1, 6)})
        assert total_feasible(a, 5) == 0


def test_report_json_keys(fig2_like):
    a = allocate(fig2_like, build_conflict_graph(fig2_like), tuple(range(1, 10)))
    doc = json.loads(evaluate(fig2_like, a).to_json())
    assert list(doc) == ["fi", "bu", "ca", "bc", "tf"]
    assert doc["fi"] == 1 and doc["bu"] == 10 and doc["tf"] == 9


@settings(max_examples=100)
@given(scenarios(), st.sampled_from(list(SortStrategy)), st.integers(0, 2**32))
def test_identities_and_caps(s, strategy, seed):
    g = build_conflict_graph(s)
    a = allocate(s, g, sort_transmitters(s, g, strategy, np.random.default_rng(seed)))
    r = evaluate(s, a)
    assert identity_violations(r, a, s.total_bandwidth) == []
    assert 0 <= r.tf <= s.n
    assert r.ca <= sum(math.pi * t.radius**2 for t in s.transmitters) + 1e-9
    assert r.bc <= sum(t.radius * t.bandwidth for t in s.transmitters) + 1e-9
    assert r.ca >= 0 and r.bc >= 0


@settings(max_examples=60)
@given(scenarios(max_n=12), st.data())
def test_ca_bc_monotone_in_admissible_set(s, data):
    ids = list(range(1, s.n + 1))
    big = set(data.draw(st.lists(st.sampled_from(ids), unique=True)))
    small = set(data.draw(st.lists(st.sampled_from(sorted(big)), unique=True))) if big else set()
    assert coverage_area(s, small) <= coverage_area(s, big) + 1e-9
    assert bandwidth_coverage_product(s, small) <= bandwidth_coverage_product(s, big)


def test_identity_check_flags_inconsistency():
    a = alloc((1, 2), {1: (1, 1), 2: (1, 9)})
    r = evaluate(make_scenario([(10, 10, 1, 1), (90, 90, 9, 1)], 5), a)
    bogus = type(r)(fi=1, bu=r.bu, ca=r.ca, bc=r.bc, tf=r.tf, admissible=r.admissible)
    assert identity_violations(bogus, a, 5)
