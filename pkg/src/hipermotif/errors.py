"""Exception hierarchy shared across the package."""


class HiPerMotifError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(HiPerMotifError, ValueError):
    """Invalid graph construction input."""


class DuplicateEdge(GraphError):
    pass


class EndpointOutOfRange(GraphError):
    pass


class PatternError(HiPerMotifError, ValueError):
    """The pattern graph cannot be searched by the requested engine."""


class PatternTooSmall(PatternError):
    pass


class NoViableEdge(PatternTooSmall):
    """Reordered pattern has no edge (0, 1) to anchor edge-centric search."""


class PatternSelfLoop(PatternError):
    pass


class EmptyPattern(PatternError):
    pass


class InvalidSize(HiPerMotifError, ValueError):
    pass


class TargetAlreadyUsed(HiPerMotifError, ValueError):
    pass


class InstanceTooLarge(HiPerMotifError, ValueError):
    pass


class InvalidParameter(HiPerMotifError, ValueError):
    pass


class ParseError(HiPerMotifError, ValueError):
    """Malformed edge-list input; ``lineno`` is 1-based."""

    def __init__(self, message: str, lineno: int | None = None, path: str | None = None):
        self.lineno = lineno
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if lineno is not None:
            where += f"{lineno}:"
        super().__init__(f"{where} {message}" if where else message)


class EngineDisagreement(HiPerMotifError, RuntimeError):
    """Two engines returned different match counts for the same instance."""
