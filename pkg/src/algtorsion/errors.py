"""Exception taxonomy shared by all modules.

Every failure mode that callers are expected to branch on gets its own
class.  The CLI maps these onto exit codes: construction and parse
problems exit 2, NotNice exits 3, NoProvenance exits 4, violated
internal invariants exit 5.
"""


class AlgTorsionError(Exception):
    """Base class for all package errors."""


# -- construction / parsing (exit 2) --------------------------------------

class ParseError(AlgTorsionError):
    pass


class DuplicatePoint(ParseError):
    pass


class OpenFaceTrace(AlgTorsionError):
    pass


class GenusMismatch(AlgTorsionError):
    pass


class MissingBasepoint(AlgTorsionError):
    pass


class UnknownCurve(AlgTorsionError):
    pass


class UnsupportedPage(AlgTorsionError):
    pass


class InvalidArcBasis(AlgTorsionError):
    pass


class InvalidMonodromy(AlgTorsionError):
    pass


# -- niceness (exit 3) -----------------------------------------------------

class NotNice(AlgTorsionError):
    def __init__(self, message, offending_regions=()):
        super().__init__(message)
        self.offending_regions = list(offending_regions)


# -- provenance (exit 4) ---------------------------------------------------

class NoProvenance(AlgTorsionError):
    pass


# -- invariant violations (exit 5) ------------------------------------------

class InvariantViolation(AlgTorsionError):
    pass


class NonIntegerIndex(InvariantViolation):
    pass


class FormulaMismatch(InvariantViolation):
    pass


class OddJPlus(InvariantViolation):
    pass


class DifferentialNotSquareZero(InvariantViolation):
    pass


class LeibnizViolation(InvariantViolation):
    pass


class NotACycle(InvariantViolation):
    pass


class AdmissibilityWarning(UserWarning):
    """Differential requested on a diagram that is not weakly admissible."""


EXIT_CODE_BY_ERROR = [
    (NotNice, 3),
    (NoProvenance, 4),
    (InvariantViolation, 5),
    (AlgTorsionError, 2),
]


def exit_code_for(err):
    for cls, code in EXIT_CODE_BY_ERROR:
        if isinstance(err, cls):
            return code
    return 1
