"""Dispatch front end shared by the CLI and the benchmark harness."""

from __future__ import annotations

import pytest

from bimatch.core import Matching, build_graph
from bimatch.reduction import build_reduction
from bimatch.solve import ALGORITHMS, solve, verify_solution

from conftest import g0, random_feasible_graphs


class TestSolve:
    @pytest.mark.parametrize("algo", ALGORITHMS)
    def test_every_route_reaches_the_same_result(self, algo):
        result = solve(g0(), algo)
        assert result.weight == 2
        assert result.matching.pairs() == [(0, 0), (1, 1)]

    def test_unknown_algorithm(self):
        with pytest.raises(ValueError, match="no solver"):
            solve(g0(), "greedy")

    def test_prebuilt_reduction_is_reusable_across_algorithms(self):
        for g in random_feasible_graphs(1101, 10, max_n=6):
            red = build_reduction(g, "double")
            weights = {
                solve(g, algo, reduction=red).weight
                for algo in ("auction", "gk")
            }
            weights.add(solve(g, "hungarian").weight)
            assert len(weights) == 1


class TestVerifySolution:
    def test_accepts_a_full_cover(self):
        result = solve(g0())
        assert verify_solution(g0(), result.matching) is None

    def test_flags_a_partial_cover(self):
        m = Matching(2, 2)
        m.assign(0, 0)
        problem = verify_solution(g0(), m)
        assert problem is not None and "uncovered" in problem

    def test_flags_a_non_edge(self):
        g = build_graph(2, 2, [(0, 0, 1), (0, 1, 3), (1, 1, 1)])
        m = Matching(2, 2)
        m.assign(1, 0)
        m.assign(0, 1)
        problem = verify_solution(g, m)
        assert problem is not None and "not an edge" in problem
