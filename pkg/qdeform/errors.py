"""Exceptions raised by qdeform.

Failed identities are never exceptions: checks report them. These classes
cover malformed input, poles and constructions that cannot proceed.
"""


class QDeformError(Exception):
    pass


class ScalarDomainError(QDeformError, ArithmeticError):
    """Pole, zero division or an invalid numeric parameter."""


class UnknownCatalogKey(QDeformError, KeyError):
    def __init__(self, kind, key, known=()):
        self.kind = kind
        self.key = key
        self.known = tuple(known)
        super().__init__(kind, key)

    def __str__(self):
        msg = f"unknown {self.kind} '{self.key}'"
        if self.known:
            msg += " (known: " + ", ".join(self.known) + ")"
        return msg


class PresentationError(QDeformError, ValueError):
    pass


class MorphismConfigurationError(QDeformError, ValueError):
    pass


class ShapeError(QDeformError, ValueError):
    pass


class SeriesTruncationError(QDeformError):
    pass


class RMatrixConstructionError(QDeformError):
    pass
