"""Exception types raised by the simulator."""


class SimulationError(Exception):
    """Base class for all simulator-specific errors."""


class DegenerateChannelError(SimulationError):
    """A channel vector or matrix is identically zero where a nonzero one is required."""


class SingularChannelError(SimulationError):
    """The stacked channel estimates are too ill-conditioned for interference nulling."""


class InsufficientTraceError(SimulationError):
    """A replay run requested more distinct user angles than the trace records."""


class TraceFormatError(SimulationError):
    """A trace file failed to parse or violates the trace schema."""
