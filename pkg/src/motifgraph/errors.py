"""Exception hierarchy shared across the package."""


class MotifGraphError(Exception):
    """Base class for every error raised by motifgraph."""


class MotifError(MotifGraphError, ValueError):
    """Malformed motif input."""


class EmptyMotif(MotifError):
    pass


class IsolatedVertex(MotifError):
    pass


class SelfLoop(MotifError):
    pass


class DuplicateEdge(MotifError):
    pass


class MotifTooLarge(MotifError):
    pass


class RangeError(MotifGraphError, ValueError):
    pass


class DomainError(MotifGraphError, ValueError):
    pass


class IndexOutOfRange(MotifGraphError, IndexError):
    pass


class VertexOutOfRange(MotifGraphError, IndexError):
    pass


class ProbabilityRange(MotifGraphError, ValueError):
    pass


class TooManyCopies(MotifGraphError, ValueError):
    pass


class Exhausted(MotifGraphError):
    """The motif process has emitted every copy."""


class SubgraphTooLarge(MotifGraphError, ValueError):
    pass


class OddN(MotifGraphError, ValueError):
    pass


class SubjectTooLarge(MotifGraphError, ValueError):
    pass


class Disconnected(MotifGraphError, ValueError):
    pass


class NotAPath(MotifGraphError, ValueError):
    pass


class NonMonotoneSignal(MotifGraphError):
    """Empirical estimates contradict monotonicity beyond sampling noise."""


class ConfigError(MotifGraphError, ValueError):
    pass
