from __future__ import annotations

class LatticeError(ValueError):
    pass

class DegenerateLatticeError(LatticeError):
    pass

class DimensionMismatchError(LatticeError):
    pass

class DependentVectorsError(LatticeError):
    pass

class NotPrimitiveError(LatticeError):
    pass

class NotUnimodularError(LatticeError):
    pass

class NotAnIsometryError(LatticeError):
    pass

class PellInputError(ValueError):
    pass

class InadmissibleDegreeError(ValueError):
    pass

class MukaiVectorError(ValueError):
    pass

class GlueError(RuntimeError):
    """Raised when a gluing that must exist for an admissible degree fails."""
