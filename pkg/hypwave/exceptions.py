"""Error hierarchy shared by the library, the CLI and the HTTP surface.

Every error carries a stable ``code`` string and the process ``exit_code``
the command line maps it to.
"""


class HypwaveError(Exception):
    code = "HYPWAVE_ERROR"
    exit_code = 1

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def to_dict(self) -> dict:
        return {"code": self.code, "detail": self.message}


# Parameter family -> exit 2

class ParameterError(HypwaveError, ValueError):
    code = "PARAMETER"
    exit_code = 2


class BandRangeError(ParameterError):
    code = "BAND_RANGE"


class UnsupportedParameterError(ParameterError):
    code = "UNSUPPORTED_PARAMETER"


class DegenerateInputError(ParameterError):
    code = "DEGENERATE_INPUT"


class InsufficientDataError(ParameterError):
    code = "INSUFFICIENT_DATA"


class SupportViolationError(ParameterError):
    code = "SUPPORT_VIOLATION"


# File format family -> exit 3

class FieldFormatError(HypwaveError):
    code = "FILE_FORMAT"
    exit_code = 3


class MalformedHeaderError(FieldFormatError):
    code = "MALFORMED_HEADER"


class GridMismatchError(FieldFormatError):
    code = "GRID_MISMATCH"


class TruncatedPayloadError(FieldFormatError):
    code = "TRUNCATED_PAYLOAD"


class UnsupportedDimensionError(FieldFormatError):
    code = "UNSUPPORTED_DIMENSION"


class AdmissibilityError(HypwaveError):
    code = "ADMISSIBILITY"
    exit_code = 4
