"""Bid-level execution traces and their comparison.

Both production solvers emit one :class:`TraceEvent` per processed left
vertex, carrying everything the bid computed: the chosen object, the two
smallest reduced costs, the price drop and whoever got displaced.  Two
solver runs are trace-equivalent when their event sequences are identical.

Events serialize to a line-oriented TSV so traces can be diffed across
processes; ``-1`` encodes "nobody displaced" (safe because vertex indices
are nonnegative).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import IO, Iterable, Iterator, Optional

from .core import WeightedBipartiteGraph

_COLUMNS = (
    "phase",
    "step",
    "u",
    "best_v",
    "best_rc",
    "second_rc",
    "gamma",
    "new_price_v",
    "displaced_u",
)
_HEADER = "# " + "\t".join(_COLUMNS)


@dataclass(frozen=True)
class TraceEvent:
    """One bid: vertex ``selected_u`` wins ``best_v`` at price ``new_price_v``.

    ``second_reduced_cost`` is the runner-up reduced cost in the bidder's
    neighborhood (a synthetic sentinel when the neighborhood is a single
    edge), ``gamma`` their gap, and ``displaced_u`` the previous owner of
    ``best_v`` if the bid evicted one.
    """

    phase_index: int
    step_index: int
    selected_u: int
    best_v: int
    best_reduced_cost: int
    second_reduced_cost: int
    gamma: int
    new_price_v: int
    displaced_u: Optional[int] = None

    def __post_init__(self) -> None:
        if self.gamma != self.second_reduced_cost - self.best_reduced_cost:
            raise ValueError("gamma must equal second - best")
        if self.gamma < 0:
            raise ValueError("gamma must be nonnegative")


def format_event(event: TraceEvent) -> str:
    displaced = -1 if event.displaced_u is None else event.displaced_u
    return "\t".join(
        str(x)
        for x in (
            event.phase_index,
            event.step_index,
            event.selected_u,
            event.best_v,
            event.best_reduced_cost,
            event.second_reduced_cost,
            event.gamma,
            event.new_price_v,
            displaced,
        )
    )


def parse_event(line: str) -> TraceEvent:
    parts = line.split("\t")
    if len(parts) != len(_COLUMNS):
        raise ValueError(f"expected {len(_COLUMNS)} fields, got {len(parts)}")
    vals = [int(p) for p in parts]
    return TraceEvent(
        phase_index=vals[0],
        step_index=vals[1],
        selected_u=vals[2],
        best_v=vals[3],
        best_reduced_cost=vals[4],
        second_reduced_cost=vals[5],
        gamma=vals[6],
        new_price_v=vals[7],
        displaced_u=None if vals[8] == -1 else vals[8],
    )


class TraceFileWriter:
    """Trace sink that streams events to a file as they happen."""

    def __init__(self, fh: IO[str]):
        self._fh = fh
        self._fh.write(_HEADER + "\n")

    def append(self, event: TraceEvent) -> None:
        self._fh.write(format_event(event) + "\n")


def read_trace_file(path: str | Path) -> Iterator[TraceEvent]:
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            yield parse_event(line)


@dataclass(frozen=True)
class TraceDivergence:
    """First position where two traces disagree; ``None`` side means the
    corresponding trace ended early."""

    index: int
    left: Optional[TraceEvent]
    right: Optional[TraceEvent]

    def describe(self) -> str:
        if self.left is None:
            return f"event {self.index}: left trace ended, right has {self.right}"
        if self.right is None:
            return f"event {self.index}: right trace ended, left has {self.left}"
        return f"event {self.index}:\n  left:  {self.left}\n  right: {self.right}"


def compare_traces(
    left: Iterable[TraceEvent], right: Iterable[TraceEvent]
) -> Optional[TraceDivergence]:
    """First divergence between two event streams, or ``None`` if identical."""
    it_l, it_r = iter(left), iter(right)
    index = 0
    sentinel = object()
    while True:
        a = next(it_l, sentinel)
        b = next(it_r, sentinel)
        if a is sentinel and b is sentinel:
            return None
        if a is sentinel:
            return TraceDivergence(index, None, b)  # type: ignore[arg-type]
        if b is sentinel:
            return TraceDivergence(index, a, None)  # type: ignore[arg-type]
        if a != b:
            return TraceDivergence(index, a, b)  # type: ignore[arg-type]
        index += 1


def compare_trace_files(
    left: str | Path, right: str | Path
) -> Optional[TraceDivergence]:
    return compare_traces(read_trace_file(left), read_trace_file(right))


def record_trace(
    algorithm: str,
    graph: WeightedBipartiteGraph,
    alpha: Optional[Fraction] = None,
    reduction: str = "double",
) -> tuple[list[TraceEvent], int]:
    """Run one solver with tracing on; return (events, matching weight).

    The flow-based solver runs with its internal cross-checks enabled, so a
    recorded trace from it also certifies the per-step price identities.
    """
    from .auction import eps_scaling_auction
    from .core import matching_weight
    from .gk import goldberg_kennedy
    from .scaling import DEFAULT_ALPHA

    if alpha is None:
        alpha = DEFAULT_ALPHA
    events: list[TraceEvent] = []
    if algorithm == "auction":
        matching = eps_scaling_auction(
            graph, alpha=alpha, reduction=reduction, trace_sink=events
        )
    elif algorithm == "gk":
        matching = goldberg_kennedy(
            graph,
            alpha=alpha,
            reduction=reduction,
            trace_sink=events,
            check_identities=True,
        )
    else:
        raise ValueError(f"no traced solver named {algorithm!r}")
    return events, matching_weight(graph, matching)
