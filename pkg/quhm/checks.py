import typing
from enum import Enum

from quhm.errors import VerificationError

Coordinate = typing.Tuple[int, ...]


class Verdict(Enum):
    """
    An enum representing the outcome of a single check.

    Available verdicts are:

    * PASSED  : The identity holds exactly.
    * FAILED  : The identity does not hold, a witness is usually attached.
    * SKIPPED : The check does not apply to this object.
    """

    PASSED = "passed"
    FAILED = "failed"
    SKIPPED = "skipped"


class CheckResult:
    """
    Outcome of one exact check.

    A result is truthy when it passed, so checkers can be used directly in conditions
    while still carrying a witness for debugging:

    .. code-block:: python

       result = verify_amicable(a, b)
       if not result:
           print(result.witness)

    Parameters
    ----------
    name : :py:class:`str`
        Short identifier of the check, e.g. ``"amicable"``.
    verdict : :py:class:`Verdict`
        The outcome.
    witness : Optional, tuple of :py:class:`int`
        First failing coordinate (row, column) or row index, if any.
    residual : Optional, :py:class:`int`
        Largest absolute deviation from the expected value, if meaningful.
    detail : Optional, :py:class:`str`
        Free-form explanation.
    """

    name: str
    verdict: Verdict
    witness: typing.Optional[Coordinate]
    residual: typing.Optional[int]
    detail: str

    def __init__(
        self,
        name: str,
        verdict: Verdict,
        *,
        witness: typing.Optional[Coordinate] = None,
        residual: typing.Optional[int] = None,
        detail: str = "",
    ) -> None:
        self.name = name
        self.verdict = verdict
        self.witness = witness
        self.residual = residual
        self.detail = detail

    @classmethod
    def passing(cls, name: str, detail: str = "") -> "CheckResult":
        return cls(name, Verdict.PASSED, detail=detail)

    @classmethod
    def failing(
        cls,
        name: str,
        *,
        witness: typing.Optional[Coordinate] = None,
        residual: typing.Optional[int] = None,
        detail: str = "",
    ) -> "CheckResult":
        return cls(name, Verdict.FAILED, witness=witness, residual=residual, detail=detail)

    @classmethod
    def skipped(cls, name: str, detail: str = "") -> "CheckResult":
        return cls(name, Verdict.SKIPPED, detail=detail)

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASSED

    def __bool__(self) -> bool:
        return self.passed

    def __repr__(self) -> str:  # pragma: no cover
        return f"<CheckResult name={self.name} verdict={self.verdict.value}>"

    def render(self) -> str:
        """
        One line of human-readable text for this result.
        """
        line = f"{self.name:<24} {self.verdict.value.upper()}"
        extras = []
        if self.witness is not None:
            extras.append(f"at {self.witness}")
        if self.residual is not None:
            extras.append(f"residual {self.residual}")
        if self.detail:
            extras.append(self.detail)
        return f"{line}  {'; '.join(extras)}" if extras else line


class Report:
    """
    An ordered collection of :py:class:`CheckResult`.

    A report passes when none of its results failed. Skipped results do not count.
    """

    subject: str
    results: typing.List[CheckResult]

    def __init__(
        self, subject: str, results: typing.Optional[typing.Iterable[CheckResult]] = None
    ) -> None:
        self.subject = subject
        self.results = list(results or ())

    def __repr__(self) -> str:  # pragma: no cover
        return f"<Report subject={self.subject} passed={self.passed}>"

    def __iter__(self) -> typing.Iterator[CheckResult]:
        return iter(self.results)

    def __len__(self) -> int:
        return len(self.results)

    def __bool__(self) -> bool:
        return self.passed

    def __getitem__(self, name: str) -> CheckResult:
        for result in self.results:
            if result.name == name:
                return result
        raise KeyError(name)

    def add(self, result: CheckResult) -> CheckResult:
        self.results.append(result)
        return result

    def extend(self, other: "Report") -> None:
        self.results.extend(other.results)

    @property
    def passed(self) -> bool:
        return all(result.verdict is not Verdict.FAILED for result in self.results)

    @property
    def failures(self) -> typing.List[CheckResult]:
        return [result for result in self.results if result.verdict is Verdict.FAILED]

    @property
    def names(self) -> typing.List[str]:
        """
        Names of the checks that ran and passed, in order.
        """
        return [result.name for result in self.results if result.passed]

    def raise_for_failure(self) -> None:
        """
        Raise if any check failed.

        Raises
        ------
        :py:exc:`VerificationError` :
            With the first failure in the message and this report attached.
        """
        failures = self.failures
        if failures:
            raise VerificationError(f"{self.subject}: {failures[0].render()}", self)

    def render(self) -> str:
        lines = [f"{self.subject}: {'PASS' if self.passed else 'FAIL'}"]
        lines.extend(f"  {result.render()}" for result in self.results)
        return "\n".join(lines)
