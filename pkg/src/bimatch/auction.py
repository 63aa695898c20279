"""Epsilon-scaling auction solver.

Each phase runs a bidding loop at a fixed integer ``eps`` on the scaled
balanced instance: an unassigned person scans its neighborhood for the two
smallest reduced costs ``w(uv) - p(v)``, takes the best object (displacing
any current owner), and drops that object's price by ``gamma + eps`` where
``gamma`` is the runner-up gap.  The driver re-runs phases with ``eps``
shrinking geometrically, carrying prices across phases but starting each
matching from scratch; at scaled ``eps == 1`` the result is exactly optimal.

The bidding loop does not terminate when the instance has no covering
matching, so the driver prechecks feasibility by default and the loop
carries a generous step cap as a backstop.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Protocol

from .core import Matching, PriceVector, WeightedBipartiteGraph
from .errors import InfeasibleInstanceError, IterationLimitError, SolveTimeout
from .feasibility import feasibility_precheck
from .reduction import BalancedReduction, project_matching, resolve_reduction
from .scaling import (
    DEFAULT_ALPHA,
    eps_schedule,
    initial_eps,
    scale_graph,
    second_cost_sentinel_gap,
)
from .tracing import TraceEvent


class TraceSink(Protocol):
    def append(self, event: TraceEvent) -> None: ...


@dataclass(frozen=True)
class PhaseSnapshot:
    """State after one completed phase: the matching it built and the
    prices it left behind, both on the scaled balanced graph."""

    phase_index: int
    eps: int
    graph: WeightedBipartiteGraph
    prices: PriceVector
    matching: Matching


PhaseCallback = Callable[[PhaseSnapshot], None]

_DEADLINE_STRIDE = 1024


def auction_phase(
    graph: WeightedBipartiteGraph,
    eps: int,
    prices: PriceVector,
    *,
    phase_index: int = 0,
    trace_sink: Optional[TraceSink] = None,
    deadline: Optional[float] = None,
) -> tuple[Matching, PriceVector]:
    """One bidding phase on a balanced graph; mutates ``prices`` in place
    and returns ``(matching, prices)``.

    Starts from the empty matching and runs until every person owns an
    object, so the matching is perfect and satisfies eps-complementary
    slackness against the final prices.
    """
    n, s = graph.n, graph.s
    if n != s:
        raise ValueError(f"bidding needs a balanced graph, got n={n}, s={s}")
    if eps < 1:
        raise ValueError(f"eps must be a positive integer, got {eps}")
    off, adj_v, adj_w = graph.adj_off, graph.adj_v, graph.adj_w
    sentinel_gap = second_cost_sentinel_gap(graph.max_abs_weight)

    matching = Matching(n, s)
    queue: deque[int] = deque(range(n))
    # Defensive cap, far above any feasible phase's bid count; it exists to
    # turn the known infinite loop on uncoverable instances into an error.
    spread = max(prices) - min(prices)
    step_cap = 10 * n * max(1, graph.m) * (spread // eps + 2)
    step = 0
    while queue:
        if step >= step_cap:
            raise IterationLimitError(
                f"bidding exceeded {step_cap} steps at eps={eps}; "
                "the instance is most likely infeasible"
            )
        if (
            deadline is not None
            and step % _DEADLINE_STRIDE == 0
            and time.monotonic() > deadline
        ):
            raise SolveTimeout(f"bidding phase at eps={eps} hit the deadline")
        u = queue.popleft()

        lo, hi = off[u], off[u + 1]
        if lo == hi:
            raise InfeasibleInstanceError(
                f"left vertex {u} has no edges; no perfect matching exists"
            )
        best_rc: Optional[int] = None
        second_rc: Optional[int] = None
        best_v = -1
        for i in range(lo, hi):
            rc = adj_w[i] - prices[adj_v[i]]
            if best_rc is None or rc < best_rc:
                second_rc = best_rc
                best_rc = rc
                best_v = adj_v[i]
            elif second_rc is None or rc < second_rc:
                second_rc = rc
        assert best_rc is not None
        if second_rc is None:
            second_rc = best_rc + sentinel_gap
        gamma = second_rc - best_rc

        displaced = matching.match_of_v[best_v]
        if displaced is not None:
            matching.unassign(displaced, best_v)
            queue.append(displaced)
        matching.assign(u, best_v)
        prices[best_v] = prices[best_v] - gamma - eps

        if trace_sink is not None:
            trace_sink.append(
                TraceEvent(
                    phase_index=phase_index,
                    step_index=step,
                    selected_u=u,
                    best_v=best_v,
                    best_reduced_cost=best_rc,
                    second_reduced_cost=second_rc,
                    gamma=gamma,
                    new_price_v=prices[best_v],
                    displaced_u=displaced,
                )
            )
        step += 1
    return matching, prices


def eps_scaling_auction(
    graph: WeightedBipartiteGraph,
    *,
    alpha: Fraction = DEFAULT_ALPHA,
    reduction: str | BalancedReduction = "double",
    trace_sink: Optional[TraceSink] = None,
    on_phase: Optional[PhaseCallback] = None,
    deadline: Optional[float] = None,
    precheck: bool = True,
) -> Matching:
    """Minimum-weight matching covering every right vertex.

    Raises :class:`InfeasibleInstanceError` when no such matching exists
    (detected up front unless ``precheck`` is disabled).  ``reduction``
    names the balancing construction or supplies one already built for
    this graph.
    """
    if precheck:
        feasibility_precheck(graph)
    balanced = resolve_reduction(graph, reduction)
    scaled = scale_graph(balanced.graph)
    prices: PriceVector = [0] * scaled.s
    matching: Optional[Matching] = None
    for phase_index, eps in enumerate(eps_schedule(initial_eps(scaled), alpha)):
        matching, prices = auction_phase(
            scaled,
            eps,
            prices,
            phase_index=phase_index,
            trace_sink=trace_sink,
            deadline=deadline,
        )
        if on_phase is not None:
            on_phase(
                PhaseSnapshot(
                    phase_index=phase_index,
                    eps=eps,
                    graph=scaled,
                    prices=list(prices),
                    matching=matching.copy(),
                )
            )
    assert matching is not None
    return project_matching(balanced, matching)
