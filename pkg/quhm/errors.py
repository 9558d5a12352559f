import typing

if typing.TYPE_CHECKING:  # pragma: no cover
    from quhm.checks import Report


class QuhmError(Exception):
    """
    Base class of every error raised by quhm.
    """


class ParameterError(QuhmError, ValueError):
    """
    Raised when a construction receives parameters it cannot work with.
    Subclass of "ValueError" as these are bad argument values.
    """


class NotAPrimePowerError(ParameterError):
    """
    Raised when a field order is not a prime power.
    The factorization found is kept in ``factors`` as evidence.
    """

    factors: typing.Dict[int, int]

    def __init__(self, q: int, factors: typing.Dict[int, int]) -> None:
        self.factors = dict(factors)
        shown = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in sorted(factors.items()))
        super().__init__(f"{q} is not a prime power ({q} = {shown or q})")


class OrderCapExceededError(ParameterError):
    """
    Raised when a matrix would exceed the configured order cap.
    """

    order: int
    cap: int

    def __init__(self, order: int, cap: int) -> None:
        self.order = order
        self.cap = cap
        super().__init__(f"Order {order} exceeds the configured cap of {cap}")


class CoreKindError(ParameterError):
    """
    Raised when a symmetric core is given where a skew core is needed, or the other way around.
    """


class MatrixError(QuhmError):
    """
    Raised when the exact matrix kernel cannot carry out an operation.
    """


class MatrixShapeError(MatrixError, ValueError):
    """
    Raised when matrix orders do not match.
    """


class MatrixEntryError(MatrixError, ValueError):
    """
    Raised when an entry is outside of the alphabet a matrix type allows.
    """


class MatrixOverflowError(MatrixError, OverflowError):
    """
    Raised when a checked bound shows an operation could leave the 64-bit range.
    """


class VerificationError(QuhmError):
    """
    Raised when an object fails the checks its constructor runs on it.
    The failing report is available as ``report``.
    """

    report: "Report"

    def __init__(self, message: str, report: "Report") -> None:
        self.report = report
        super().__init__(message)


class DocumentError(QuhmError, ValueError):
    """
    Raised when a matrix document cannot be parsed or is inconsistent.
    """
