"""Exception hierarchy shared by all modules."""


class ControlModeError(Exception):
    """Base class for every error raised by this package."""


class ParseError(ControlModeError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DuplicateEdge(ParseError):
    def __init__(self, line: int, edge):
        super().__init__(line, f"duplicate edge {edge[0]} -> {edge[1]}")
        self.edge = edge


class EdgeNotFound(ControlModeError):
    pass


class EdgeAlreadyExists(ControlModeError):
    pass


class EmptyGraph(ControlModeError):
    pass


class InvalidMatching(ControlModeError):
    def __init__(self, message: str, pair=None):
        super().__init__(message)
        self.pair = pair


class NotMaximum(ControlModeError):
    """Raised with a witness augmenting path.

    ``path`` alternates ``("out", u)`` and ``("in", v)`` copies, starting at an
    unmatched out-copy and ending at an unmatched in-copy.
    """

    def __init__(self, path):
        rendered = " - ".join(f"{node}_{side}" for side, node in path)
        super().__init__(f"augmenting path exists: {rendered}")
        self.path = path


class NoInputComponent(ControlModeError):
    pass


class NotADriver(ControlModeError):
    pass


class PostConditionViolation(ControlModeError):
    def __init__(self, message: str, nodes=()):
        super().__init__(f"{message}: {sorted(nodes)[:20]}")
        self.nodes = sorted(nodes)


class MismatchedGraphs(ControlModeError):
    pass


class ConfigInvalid(ControlModeError):
    pass


class SaturationFailure(ControlModeError):
    pass


class TooLarge(ControlModeError):
    pass
