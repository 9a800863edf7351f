"""Error hierarchy.

``InputError`` and its subclasses mean the input itself is malformed
(bad schema, bad matrix, bad circuit encoding); the CLI maps them to
exit code 2.  Every other ``DiscretaError`` is a mathematical
precondition or postcondition failure and maps to exit code 3.
"""


class DiscretaError(Exception):
    """Base class for all library errors."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InputError(DiscretaError):
    """Malformed input document or matrix."""


class NotAMetric(InputError):
    """Distance data violates the metric axioms (within tolerance)."""


class NotACircuit(InputError):
    """Vertex sequence is not a closed 4-adjacent circuit."""


class DegenerateSpace(DiscretaError):
    """Fewer than two points: nearest-neighbour balls are undefined."""


class DegenerateComponent(DiscretaError):
    """A component is too small for the requested operation."""


class NotConnected(DiscretaError):
    """The two points lie in different continuity components."""


class GeodesicExplosion(DiscretaError):
    """A pair has more minimal paths than the configured cap."""


class NotNormalForm(DiscretaError):
    """Component step is not 1; rescale before building edge sets."""


class DisconnectedComponent(DiscretaError):
    """Edge set does not connect the point set; the gap would be zero."""


class NotSimple(DiscretaError):
    """Circuit fails the simplicity conditions."""


class ContainsSquare(DiscretaError):
    """Circuit contains four points forming a unit square."""


class SimplicityBroken(DiscretaError):
    """Corner completion found no unique circuit neighbour; input cannot
    have been a simple square-free circuit."""


class TheoremViolation(DiscretaError):
    """Decomposition did not produce exactly one bounded and one unbounded
    region; unreachable for validated inputs."""


class NotEmbedding(DiscretaError):
    """Point map is not injective."""


class OracleBudgetError(DiscretaError):
    """Instance exceeds the brute-force oracle budget."""
