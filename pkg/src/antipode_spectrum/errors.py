"""Exception hierarchy shared by all modules."""


class SpectrumError(Exception):
    """Base class for every error raised by this package."""


# -- scalar backends ---------------------------------------------------------

class FieldMismatch(SpectrumError):
    """Operands live in different cyclotomic fields or factored contexts."""


class DivisionByZero(SpectrumError):
    pass


class NotFactorable(SpectrumError):
    """Expression cannot be written as constant * monomial * product of
    (L_alpha * z^a - z^-a) atoms."""


# -- grothendieck / modcat ---------------------------------------------------

class ZeroGlobalDimension(SpectrumError):
    pass


class DimensionMismatch(SpectrumError):
    pass


class NonConvergence(SpectrumError):
    """Perron iteration exceeded its budget."""


class NotInvertibleClass(SpectrumError):
    pass


class MissingDims(SpectrumError):
    pass


# -- spectrum ----------------------------------------------------------------

class EmptyEigenspace(SpectrumError):
    pass


class AmbiguousM(SpectrumError):
    """Dimension character has multiplicity > 1 and no candidate was given."""


class ZeroEntry(SpectrumError):
    """Candidate m-vector has a vanishing coordinate."""


class NotInEigenspace(SpectrumError):
    pass


class JDependence(SpectrumError):
    """The m-bar vector computed from different columns of Q_M disagrees."""


class InvalidTwist(SpectrumError):
    pass


# -- pivotalization ----------------------------------------------------------

class SignSplitMismatch(SpectrumError):
    """N+ and N- do not sum to the unsigned action matrices."""


class NonRealSigns(SpectrumError):
    pass


# -- families ----------------------------------------------------------------

class BadParameters(SpectrumError):
    pass


class NotACharacter(SpectrumError):
    pass


class NotASubgroup(SpectrumError):
    pass


# -- cli ---------------------------------------------------------------------

class ParseError(SpectrumError):
    """Bad scalar literal or malformed spec document.

    ``location`` is a human-readable position (offset in a literal, or a
    JSON path in a spec file).
    """

    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = f"{message} (at {location})"
        super().__init__(message)


class SchemaError(ParseError):
    pass
