from typing import Any, Optional


class PolyaggError(ValueError):
    code: str = "error"

    def __init__(self, message: str, location: Optional[str] = None, witness: Any = None):
        super().__init__(message)
        self.message = message
        self.location = location
        self.witness = witness

    def serialize(self) -> dict:
        return {"code": self.code, "location": self.location, "message": self.message,
                "witness": None if self.witness is None else repr(self.witness)}

    def __str__(self):
        out = self.code
        if self.location is not None:
            out += f" at {self.location}"
        out += f": {self.message}"
        if self.witness is not None:
            out += f" (witness={self.witness!r})"
        return out


class SizeBlowup(PolyaggError):
    code = "size-blowup"


class LawViolation(PolyaggError):
    code = "law-violation"


class ParseError(PolyaggError):
    code = "parse-error"


class TypeMismatch(PolyaggError):
    code = "type-mismatch"


class NotEtale(PolyaggError):
    code = "not-etale"


class NotDualizable(PolyaggError):
    code = "not-dualizable"


class WrongShape(PolyaggError):
    code = "wrong-shape"


class RowTooLarge(PolyaggError):
    code = "row-too-large"


class UnknownSuite(PolyaggError):
    code = "unknown-suite"
