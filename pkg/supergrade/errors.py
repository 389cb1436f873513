"""
Supergrade - Error Types

Every failure the library raises on purpose derives from SupergradeError.
Mathematical verdicts (an identity that fails, a map that is not a
homomorphism) are never exceptions; they come back as reports. Exceptions
are reserved for input that cannot be processed at all.
"""

from typing import Any, Dict, Optional


class SupergradeError(Exception):
    """Base class. `details` is merged into JSON error output by the CLI."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = dict(details or {})

    def to_dict(self) -> Dict[str, Any]:
        return {"error": type(self).__name__, "message": self.message, **self.details}


class ScalarParseError(SupergradeError):
    def __init__(self, text: str, position: int, reason: str):
        super().__init__(
            f"cannot parse scalar {text!r} at column {position + 1}: {reason}",
            {"text": text, "column": position + 1},
        )
        self.position = position


class CyclicBindingError(SupergradeError):
    pass


class ParametricRankError(SupergradeError):
    def __init__(self, column: int, entry: str):
        super().__init__(
            f"parametric rank: pivot candidate {entry} in column {column} depends on parameters",
            {"column": column, "entry": entry},
        )


class ParityError(SupergradeError):
    pass


class DimensionMismatch(SupergradeError):
    pass


class NotGradedError(SupergradeError):
    def __init__(self, left_layer: int, right_layer: int, parity: str, reason: str):
        super().__init__(
            f"gr not graded: {reason}",
            {"left_layer": left_layer, "right_layer": right_layer, "parity": parity},
        )
        self.left_layer = left_layer
        self.right_layer = right_layer
        self.parity = parity


class PreconditionError(SupergradeError):
    pass


class UnknownEntryError(SupergradeError):
    pass


class ArgumentRangeError(SupergradeError):
    pass


class StructureError(SupergradeError):
    pass


class NonRationalScaleError(SupergradeError):
    pass


class MoveInapplicableError(SupergradeError):
    pass
