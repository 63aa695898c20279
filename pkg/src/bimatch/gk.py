"""Push-relabel solver on the min-cost-flow form of the matching problem.

The balanced instance becomes a unit-capacity flow network: persons supply
one unit, objects demand one, an arc per edge.  Each refine round zeroes the
flow, reinitializes person prices, then repeatedly double-pushes an active
person: relabel ``p(u)`` to minus the runner-up partial reduced cost, push
the unit to the best object, bounce the object's previous unit back to its
old owner, and drop the object's price to ``p(u) + w(uv) - eps``.  The
driver shrinks ``eps`` exactly like the bidding solver and shares its step
ordering, which is what makes the two solvers' traces comparable.

Every double push re-derives the object price update in the bidding form
(old price minus gap minus eps) and demands bit-for-bit agreement, so a
completed run certifies the correspondence, not just the result.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .core import Matching, WeightedBipartiteGraph
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

_DEADLINE_STRIDE = 1024


@dataclass(frozen=True)
class FlowInstance:
    """Unit-capacity flow view of a balanced graph.

    Node ``x < n`` is person ``x`` (supply +1); node ``n + v`` is object
    ``v`` (supply -1).  Arc ``a`` is adjacency position ``a`` of the graph,
    running person-to-object with capacity 1 and cost ``adj_w[a]``.
    """

    graph: WeightedBipartiteGraph
    tail_of_arc: tuple[int, ...]

    @property
    def n_nodes(self) -> int:
        return self.graph.n + self.graph.s

    @property
    def n_arcs(self) -> int:
        return self.graph.m

    def supply(self, x: int) -> int:
        return 1 if x < self.graph.n else -1


def to_flow_instance(graph: WeightedBipartiteGraph) -> FlowInstance:
    if graph.n != graph.s:
        raise ValueError(
            f"flow form needs a balanced graph, got n={graph.n}, s={graph.s}"
        )
    tails = []
    for u in range(graph.n):
        tails.extend([u] * graph.degree(u))
    return FlowInstance(graph=graph, tail_of_arc=tuple(tails))


class Pseudoflow:
    """Arc flows plus incrementally maintained node excesses.

    Unlike a flow, a pseudoflow owes nothing to conservation: any node may
    sit on surplus (``excess > 0``) or deficit.  ``excess[x]`` always equals
    supply plus inflow minus outflow; :meth:`recompute_excess` re-derives it
    from scratch so tests can audit the incremental bookkeeping.
    """

    __slots__ = ("instance", "flow", "excess")

    def __init__(self, instance: FlowInstance):
        self.instance = instance
        self.flow = [0] * instance.n_arcs
        self.excess = [instance.supply(x) for x in range(instance.n_nodes)]

    def push(self, arc: int) -> None:
        if self.flow[arc] != 0:
            raise ValueError(f"arc {arc} is saturated")
        self.flow[arc] = 1
        fi = self.instance
        self.excess[fi.tail_of_arc[arc]] -= 1
        self.excess[fi.graph.n + fi.graph.adj_v[arc]] += 1

    def push_back(self, arc: int) -> None:
        if self.flow[arc] != 1:
            raise ValueError(f"arc {arc} carries no flow")
        self.flow[arc] = 0
        fi = self.instance
        self.excess[fi.tail_of_arc[arc]] += 1
        self.excess[fi.graph.n + fi.graph.adj_v[arc]] -= 1

    def recompute_excess(self) -> list[int]:
        fi = self.instance
        e = [fi.supply(x) for x in range(fi.n_nodes)]
        for a, f in enumerate(self.flow):
            if f:
                e[fi.tail_of_arc[a]] -= 1
                e[fi.graph.n + fi.graph.adj_v[a]] += 1
        return e

    def active_nodes(self) -> list[int]:
        return [x for x, e in enumerate(self.excess) if e > 0]


def residual_conditions(
    fi: FlowInstance, flow: list[int], prices: list[int], eps: int
) -> tuple[bool, bool]:
    """Evaluate the two residual-arc price conditions separately.

    First: every reversed residual arc (object back to the person whose
    unit it holds) has reduced cost at least ``-eps``.  Second: every
    forward residual arc has nonnegative reduced cost.
    """
    g = fi.graph
    n = g.n
    cond_rev = True
    cond_fwd = True
    for a in range(fi.n_arcs):
        u = fi.tail_of_arc[a]
        v = g.adj_v[a]
        w = g.adj_w[a]
        if flow[a]:
            if -w + prices[n + v] - prices[u] < -eps:
                cond_rev = False
        else:
            if w + prices[u] - prices[n + v] < 0:
                cond_fwd = False
    return cond_rev, cond_fwd


def check_eps_optimal(
    fi: FlowInstance, flow: list[int], prices: list[int], eps: int
) -> bool:
    """True iff the pseudoflow/price pair meets both residual conditions."""
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    cond_rev, cond_fwd = residual_conditions(fi, flow, prices, eps)
    return cond_rev and cond_fwd


def flow_to_matching(fi: FlowInstance, pf: Pseudoflow) -> Matching:
    """Matching carried by a balanced pseudoflow with no excess anywhere."""
    if any(e != 0 for e in pf.excess):
        raise ValueError("pseudoflow still has active or deficient nodes")
    g = fi.graph
    matching = Matching(g.n, g.s)
    for a, f in enumerate(pf.flow):
        if f:
            matching.assign(fi.tail_of_arc[a], g.adj_v[a])
    return matching


@dataclass(frozen=True)
class RefineSnapshot:
    """State at the end of one refine round, on the scaled balanced graph."""

    refine_index: int
    eps: int
    instance: FlowInstance
    flow: list[int]
    prices: list[int]
    matching: Matching


RefineCallback = Callable[[RefineSnapshot], None]


def refine(
    fi: FlowInstance,
    eps: int,
    prices: list[int],
    *,
    refine_index: int = 0,
    trace_sink=None,
    deadline: Optional[float] = None,
    check_identities: bool = False,
) -> tuple[Pseudoflow, list[int]]:
    """One refine round; mutates ``prices`` (length ``n + s``) in place and
    returns ``(pseudoflow, prices)``.

    On exit the pseudoflow is a flow carrying a perfect matching.  With
    ``check_identities`` every double push additionally rescans the person's
    neighborhood and verifies the relabel landed exactly on minus the
    smallest partial reduced cost (offset by ``eps`` for single-edge
    neighborhoods, whose runner-up is synthetic).
    """
    g = fi.graph
    n, s = g.n, g.s
    if eps < 1:
        raise ValueError(f"eps must be a positive integer, got {eps}")
    off, adj_v, adj_w = g.adj_off, g.adj_v, g.adj_w
    sentinel_gap = second_cost_sentinel_gap(g.max_abs_weight)

    pf = Pseudoflow(fi)

    # Person prices restart each round at minus the cheapest partial reduced
    # cost.  The first double push of each person overwrites this before
    # anything reads it, but the round is specified with the reset and the
    # reset is what makes the identity checks meaningful from step one.
    for u in range(n):
        lo, hi = off[u], off[u + 1]
        if lo == hi:
            raise InfeasibleInstanceError(
                f"left vertex {u} has no edges; no perfect matching exists"
            )
        prices[u] = -min(adj_w[i] - prices[n + adj_v[i]] for i in range(lo, hi))

    owner_arc = [-1] * s
    queue: deque[int] = deque(range(n))
    # Same defensive cap as the bidding loop: spread of the object prices
    # this round started from, in eps units.
    spread = max(prices[n:]) - min(prices[n:])
    step_cap = 10 * n * max(1, g.m) * (spread // eps + 2)
    step = 0
    while queue:
        if step >= step_cap:
            raise IterationLimitError(
                f"refine exceeded {step_cap} steps at eps={eps}; "
                "the instance is most likely infeasible"
            )
        if (
            deadline is not None
            and step % _DEADLINE_STRIDE == 0
            and time.monotonic() > deadline
        ):
            raise SolveTimeout(f"refine at eps={eps} hit the deadline")
        u = queue.popleft()

        lo, hi = off[u], off[u + 1]
        best_rc: Optional[int] = None
        second_rc: Optional[int] = None
        best_arc = -1
        for a in range(lo, hi):
            rc = adj_w[a] - prices[n + adj_v[a]]
            if best_rc is None or rc < best_rc:
                second_rc = best_rc
                best_rc = rc
                best_arc = a
            elif second_rc is None or rc < second_rc:
                second_rc = rc
        assert best_rc is not None
        single_edge = second_rc is None
        if second_rc is None:
            second_rc = best_rc + sentinel_gap
        v = adj_v[best_arc]

        prices[u] = -second_rc
        old_price_v = prices[n + v]
        pf.push(best_arc)
        displaced: Optional[int] = None
        if pf.excess[n + v] > 0:
            prev_arc = owner_arc[v]
            assert prev_arc >= 0
            displaced = fi.tail_of_arc[prev_arc]
            pf.push_back(prev_arc)
            queue.append(displaced)
        owner_arc[v] = best_arc
        new_price_v = prices[u] + adj_w[best_arc] - eps

        # Correspondence guard, always on: the push-relabel update must
        # coincide with the bidding update old_price - gap - eps.
        gamma = second_rc - best_rc
        if new_price_v != old_price_v - gamma - eps:
            raise RuntimeError(
                f"price update mismatch at u={u}, v={v}: "
                f"{new_price_v} != {old_price_v} - {gamma} - {eps}"
            )
        prices[n + v] = new_price_v

        if check_identities:
            rescan = min(
                adj_w[a] - prices[n + adj_v[a]] for a in range(lo, hi)
            )
            expected = -rescan if not single_edge else -(rescan - eps)
            if prices[u] != expected:
                raise RuntimeError(
                    f"person price identity violated at u={u}: "
                    f"p={prices[u]}, expected {expected}"
                )

        if trace_sink is not None:
            trace_sink.append(
                TraceEvent(
                    phase_index=refine_index,
                    step_index=step,
                    selected_u=u,
                    best_v=v,
                    best_reduced_cost=best_rc,
                    second_reduced_cost=second_rc,
                    gamma=gamma,
                    new_price_v=new_price_v,
                    displaced_u=displaced,
                )
            )
        step += 1
    return pf, prices


def goldberg_kennedy(
    graph: WeightedBipartiteGraph,
    *,
    alpha: Fraction = DEFAULT_ALPHA,
    reduction: str | BalancedReduction = "double",
    trace_sink=None,
    on_refine: Optional[RefineCallback] = None,
    deadline: Optional[float] = None,
    precheck: bool = True,
    check_identities: bool = False,
) -> Matching:
    """Minimum-weight matching covering every right vertex.

    Raises :class:`InfeasibleInstanceError` when no such matching exists
    (detected up front unless ``precheck`` is disabled).  ``reduction``
    names the balancing construction or supplies one already built.
    """
    if precheck:
        feasibility_precheck(graph)
    balanced = resolve_reduction(graph, reduction)
    scaled = scale_graph(balanced.graph)
    fi = to_flow_instance(scaled)
    prices = [0] * fi.n_nodes
    pf: Optional[Pseudoflow] = None
    for refine_index, eps in enumerate(eps_schedule(initial_eps(scaled), alpha)):
        pf, prices = refine(
            fi,
            eps,
            prices,
            refine_index=refine_index,
            trace_sink=trace_sink,
            deadline=deadline,
            check_identities=check_identities,
        )
        if on_refine is not None:
            on_refine(
                RefineSnapshot(
                    refine_index=refine_index,
                    eps=eps,
                    instance=fi,
                    flow=list(pf.flow),
                    prices=list(prices),
                    matching=flow_to_matching(fi, pf),
                )
            )
    assert pf is not None
    return project_matching(balanced, flow_to_matching(fi, pf))
