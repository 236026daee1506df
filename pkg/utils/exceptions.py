"""
Error hierarchy for the classification engine.
Every error carries a stable code; `describe_error` turns a code into a short explanation.
"""


class BundleEngineError(Exception):
    code = "ENGINE_ERROR"

    def __init__(self, message: str = ""):
        super().__init__(message or describe_error(self.code))
        self.message = message or describe_error(self.code)


class UnsupportedCombination(BundleEngineError):
    code = "UNSUPPORTED_COMBINATION"


class NotInGroup(BundleEngineError):
    code = "NOT_IN_GROUP"


class Singular(BundleEngineError):
    code = "SINGULAR"


class NotHermitian(BundleEngineError):
    code = "NOT_HERMITIAN"


class NotPositiveDefinite(BundleEngineError):
    code = "NOT_POSITIVE_DEFINITE"


class DimensionMismatch(BundleEngineError):
    code = "DIMENSION_MISMATCH"


class UnsupportedGroup(BundleEngineError):
    code = "UNSUPPORTED_GROUP"


class NotACocycle(BundleEngineError):
    code = "NOT_A_COCYCLE"


class NoClassExists(BundleEngineError):
    code = "NO_CLASS_EXISTS"


class NoAdjointModel(BundleEngineError):
    code = "NO_ADJOINT_MODEL"


class NotATwist(BundleEngineError):
    code = "NOT_A_TWIST"


class WitnessFailed(BundleEngineError):
    code = "WITNESS_FAILED"


class InvalidTopology(BundleEngineError):
    code = "INVALID_TOPOLOGY"


class UnsupportedFamily(BundleEngineError):
    code = "UNSUPPORTED_FAMILY"


class TooLarge(BundleEngineError):
    code = "TOO_LARGE"


class UsageError(BundleEngineError):
    code = "USAGE"


def describe_error(code: str) -> str:
    """Translates an error code into a one-line explanation."""
    mappings = {
        "UNSUPPORTED_COMBINATION": "The family/structure pair is not supported.",
        "NOT_IN_GROUP": "The matrix is not an element of the group at the working tolerance.",
        "SINGULAR": "The matrix is not invertible.",
        "NOT_HERMITIAN": "The matrix is not hermitian at the working tolerance.",
        "NOT_POSITIVE_DEFINITE": "The matrix is not hermitian positive-definite.",
        "DIMENSION_MISMATCH": "Matrix dimensions do not match the group.",
        "UNSUPPORTED_GROUP": "No canonical forms are modelled for this group and central class.",
        "NOT_A_COCYCLE": "The matrix does not satisfy sigma(h) h = c.",
        "NO_CLASS_EXISTS": "The shifted cohomology set is empty; no class can be returned.",
        "NO_ADJOINT_MODEL": "The adjoint quotient of this family is not modelled.",
        "NOT_A_TWIST": "The twisting element does not satisfy sigma(k) k = central.",
        "WITNESS_FAILED": "No witness b with b^-1 h sigma(b) = canonical was found within tolerance.",
        "INVALID_TOPOLOGY": "The (genus, type, circles) triple is not a real curve.",
        "UNSUPPORTED_FAMILY": "Component counts are only available for GL with either structure.",
        "TOO_LARGE": "The brute-force oracle is limited in the number of fixed circles.",
        "USAGE": "Invalid command line.",
    }
    return mappings.get(code, "Unknown engine error.")
