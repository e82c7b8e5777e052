"""
Exceptions raised by balanced-tamari

Every error derives from TamariError and from the closest builtin, so callers
can catch either.
"""


class TamariError(Exception):
    """Base class for all library errors"""


class InvalidNodeError(TamariError, IndexError):
    """An infix position outside 1..n"""


class InvalidRotationError(TamariError, ValueError):
    """A right (or left) rotation requested where it is not defined"""


class SizeMismatchError(TamariError, ValueError):
    """Trees compared in the Tamari order have different node counts"""


class NotComparableError(TamariError, ValueError):
    """The lower bound of an interval is not below its upper bound"""


class UnbalancedTreeError(TamariError, ValueError):
    """An operation restricted to balanced trees received an unbalanced one"""


class TreeFormatError(TamariError, ValueError):
    """Malformed or incomplete JSON tree"""


class NotAdmissibleError(TamariError, ValueError):
    """A word that fails the admissibility rewriting"""


class ArityError(TamariError, ValueError):
    """Polynomials or substitutions over different numbers of variables"""


class PolynomialSyntaxError(TamariError, ValueError):
    """Unparseable polynomial text"""


class NonStabilizingError(TamariError, RuntimeError):
    """A functional equation whose truncated iterates never settle"""


class HypercubeError(TamariError, AssertionError):
    """An interval that is not isomorphic to a hypercube"""


class InvalidMarkingError(TamariError, ValueError):
    """A marked tree violating the interval encoding rules"""


class PatternSyntaxError(TamariError, ValueError):
    """Unparseable tree pattern text"""


class EmptyLeftSubtreeError(TamariError, ValueError):
    """The imbalance witness is undefined at a node whose left subtree is a leaf"""
