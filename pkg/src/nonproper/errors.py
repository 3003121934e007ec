"""Exception hierarchy.

Every error carries a module-qualified ``code`` and the process exit status
the command-line front-end maps it to (2 input error, 3 resource/precision).
"""

from __future__ import annotations


class NonproperError(Exception):
    code = "nonproper.error"
    exit_status = 1

    def __init__(self, message: str, *, code: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code


class InputError(NonproperError):
    code = "input.invalid"
    exit_status = 2


class ParseError(InputError):
    code = "poly_core.syntax"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NonDominantError(InputError):
    code = "poly_core.non_dominant"


class DegreeError(InputError):
    code = "poly_core.degree_zero"


class ResourceLimitError(NonproperError):
    code = "resultant_elim.term_cap"
    exit_status = 3


class PrecisionError(NonproperError):
    code = "puiseux_engine.precision"
    exit_status = 3


class TruncationError(NonproperError):
    code = "puiseux_engine.truncation"
    exit_status = 3


class DepthCapError(NonproperError):
    code = "dicritical_search.depth_cap"
    exit_status = 3
