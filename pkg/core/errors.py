# core/errors.py


class PentagonError(Exception):
    """Base class for every error raised by the verifier"""


class CoincidentCoordinatesError(PentagonError, ValueError):
    """Some difference zeta_i - zeta_j vanishes where it must be invertible"""


class NonUnitDivisionError(PentagonError, ArithmeticError):
    """Division by an element that is not a unit of the localized ring"""


class GrassmannDomainError(PentagonError, ValueError):
    """Operation applied outside its domain (e.g. exp of an odd element)"""


class LabelError(PentagonError, ValueError):
    """Malformed vertex, face, tetrahedron or matrix label"""


class ConfigError(PentagonError, ValueError):
    """Invalid run configuration or environment value"""


class VerificationError(PentagonError, RuntimeError):
    """An internal self-check disagreed with the direct computation"""
