"""Shortest-augmenting-path solver with dual maintenance."""

from __future__ import annotations

import time

import pytest

from bimatch.core import build_graph, matching_weight, validate_matching
from bimatch.errors import InfeasibleInstanceError, SolveTimeout
from bimatch.hungarian import hungarian
from bimatch.oracle import brute_force_optimum

from conftest import complete_graph, g0, random_feasible_graphs


class TestHungarian:
    def test_reference_instance(self):
        matching = hungarian(g0())
        assert matching.pairs() == [(0, 0), (1, 1)]
        assert matching_weight(g0(), matching) == 2

    def test_one_by_one(self):
        g = build_graph(1, 1, [(0, 0, 5)])
        assert matching_weight(g, hungarian(g)) == 5

    def test_matches_brute_force_with_dual_audit(self):
        for g in random_feasible_graphs(8101, 80, max_n=8):
            best = brute_force_optimum(g)
            assert best is not None
            matching = hungarian(g, validate_duals=True)
            assert validate_matching(g, matching, require_perfect=True) is None
            assert matching_weight(g, matching) == best[1]

    def test_unbalanced_instances_need_no_reduction(self):
        # 3 people, 1 seat: cheapest assignment wins directly
        g = build_graph(3, 1, [(0, 0, 9), (1, 0, 4), (2, 0, 7)])
        matching = hungarian(g)
        assert matching.pairs() == [(1, 0)]

    def test_negative_weights(self):
        g = build_graph(2, 2, [(0, 0, -5), (0, 1, 1), (1, 0, 2), (1, 1, -1)])
        best = brute_force_optimum(g)
        assert best is not None and best[1] == -6
        matching = hungarian(g, validate_duals=True)
        assert matching_weight(g, matching) == -6

    def test_tie_breaking_is_deterministic(self):
        g = complete_graph(4, 4, lambda u, v: 3)
        assert hungarian(g).pairs() == hungarian(g).pairs()

    def test_precheck_rejects_uncoverable_instance(self):
        g = build_graph(2, 2, [(0, 0, 1), (1, 0, 2)])
        with pytest.raises(InfeasibleInstanceError):
            hungarian(g)

    def test_unchecked_search_dead_ends(self):
        # v1 has edges but shares its only partners with v0's chain
        g = build_graph(2, 3, [(0, 0, 1), (0, 1, 2), (1, 1, 3), (1, 2, 4)])
        with pytest.raises(InfeasibleInstanceError):
            hungarian(g)
        g_bal = build_graph(2, 2, [(0, 0, 1), (0, 1, 2)])
        with pytest.raises(InfeasibleInstanceError, match="cannot be covered"):
            hungarian(g_bal, precheck=False)

    def test_edgeless_right_vertex_fails_fast(self):
        g = build_graph(2, 2, [(0, 0, 1), (1, 0, 2)])
        with pytest.raises(InfeasibleInstanceError, match="no edges"):
            hungarian(g, precheck=False)

    def test_expired_deadline(self):
        # large enough that the search reaches its periodic deadline probe
        g = complete_graph(220, 220, lambda u, v: 1 + (u * 97 + v * 31) % 50021)
        with pytest.raises(SolveTimeout):
            hungarian(g, deadline=time.monotonic() - 1.0)
