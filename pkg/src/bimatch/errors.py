"""Runtime errors shared by the solvers."""


class InfeasibleInstanceError(Exception):
    """The instance admits no matching that covers every right vertex."""


class IterationLimitError(Exception):
    """A solver's defensive iteration cap fired.

    On feasible input this indicates a bug; on infeasible input it is the
    guard against the known non-terminating behaviour of the bidding loop.
    """


class SolveTimeout(Exception):
    """A cooperative per-solve deadline expired."""
