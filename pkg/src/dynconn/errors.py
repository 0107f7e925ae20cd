"""Exception types shared across the package."""


class DynConnError(Exception):
    """Base class for all dynconn errors."""


class SelfLoop(DynConnError):
    pass


class DuplicateEdge(DynConnError):
    pass


class MissingEdge(DynConnError):
    pass


class LevelSkip(DynConnError):
    """Promotion attempted to a level other than current + 1."""


class UnknownVertex(DynConnError):
    pass


class AlreadyConnected(DynConnError):
    pass


class NotTreeEdge(DynConnError):
    pass


class RankMismatch(DynConnError):
    pass


class UnsortedInput(DynConnError):
    pass


class NotAChild(DynConnError):
    pass


class BitUnset(DynConnError):
    pass


class EmptyWeight(DynConnError):
    pass


class TooFewUpdates(DynConnError):
    pass


class InfeasibleM(DynConnError):
    """Requested edge count exceeds what the graph family admits."""


class UnknownStructure(DynConnError):
    pass


class Timeout(DynConnError):
    """A benchmark run exceeded its time budget."""
