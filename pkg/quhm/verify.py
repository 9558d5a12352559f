"""
Independent checkers for unit, Butson and quaternary unit Hadamard matrices.

Every verdict is computed over the integers by clearing the denominators ``sqrt(q + 1)``
and ``sqrt(q)``; no tolerance is involved anywhere.
"""
import logging
import typing

import numpy as np

from quhm import exactmat
from quhm.checks import CheckResult, Report
from quhm.config import get_settings
from quhm.errors import MatrixShapeError, ParameterError
from quhm.exactmat import AnyMatrix, GaussMatrix, IntMatrix

if typing.TYPE_CHECKING:  # pragma: no cover
    from quhm.constructions import QuhMatrix
    from quhm.cores import CoreMatrix

log = logging.getLogger(__name__)

BUTSON_PARAMETERS: typing.Dict[int, int] = {1: 8, 3: 6}
"""
QUH parameters whose entries are roots of unity, mapped to the root order k.
"""


class ExcessValue:
    """
    The excess of a QUH matrix, ``S(H) = (u + i v sqrt(q)) / sqrt(q + 1)``.

    Parameters
    ----------
    q : :py:class:`int`
        The QUH parameter.
    u : :py:class:`int`
        Sum of the real-part pattern.
    v : :py:class:`int`
        Sum of the imaginary-part pattern.
    """

    q: int
    u: int
    v: int

    def __init__(self, q: int, u: int, v: int) -> None:
        self.q = q
        self.u = u
        self.v = v

    def __repr__(self) -> str:  # pragma: no cover
        return f"<ExcessValue q={self.q} u={self.u} v={self.v}>"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExcessValue):
            return NotImplemented
        return (self.q, self.u, self.v) == (other.q, other.u, other.v)

    __hash__ = None  # type: ignore[assignment]

    @property
    def magnitude_squared_times_qplus1(self) -> int:
        """
        ``(q + 1) |S(H)|^2 = u^2 + q v^2``, exact.
        """
        return self.u**2 + self.q * self.v**2

    def magnitude_squared(self) -> typing.Tuple[int, int]:
        """
        ``|S(H)|^2`` as a fraction ``(numerator, q + 1)``.
        """
        return self.magnitude_squared_times_qplus1, self.q + 1


def _equality_check(
    name: str, actual: AnyMatrix, expected: AnyMatrix, detail: str = ""
) -> CheckResult:
    witness = exactmat.first_difference(actual, expected)
    if witness is None:
        return CheckResult.passing(name, detail)
    return CheckResult.failing(
        name, witness=witness, residual=exactmat.max_deviation(actual, expected), detail=detail
    )


def verify_amicable(a: AnyMatrix, b: AnyMatrix) -> CheckResult:
    """
    Whether ``a b* == b a*`` exactly (``a b^T == b a^T`` for real matrices).

    Returns
    -------
    :py:class:`quhm.checks.CheckResult` :
        On failure the witness is the first coordinate where the two products differ.

    Raises
    ------
    :py:exc:`quhm.errors.MatrixShapeError` :
        If the orders differ.
    """
    if a.shape != b.shape:
        raise MatrixShapeError(f"Cannot compare orders {a.shape} and {b.shape}")
    return _equality_check("amicable", exactmat.gram(a, b), exactmat.gram(b, a))


def verify_pair_identity(a: AnyMatrix, b: AnyMatrix, q_param: int) -> CheckResult:
    """
    Whether ``a a* + q_param b b* == (q_param + 1) n I`` exactly.

    The residual of a failure is the largest absolute deviation.
    """
    n = a.shape[0]
    total = exactmat.scalar_combine(1, exactmat.gram(a, a), q_param, exactmat.gram(b, b))
    expected = exactmat.scaled_identity((q_param + 1) * n, n)
    return _equality_check("pair-identity", total, expected, f"q_param={q_param}")


def verify_quaternary_entries(matrix: GaussMatrix) -> CheckResult:
    """
    Whether every entry is one of 1, -1, i, -i.
    """
    witness = matrix.first_non_quaternary()
    if witness is None:
        return CheckResult.passing("quaternary-entries")
    return CheckResult.failing("quaternary-entries", witness=witness)


def verify_unit_hadamard(matrix: typing.Union[GaussMatrix, "QuhMatrix"]) -> Report:
    """
    Whether a matrix is unit Hadamard.

    For a :py:class:`quhm.exactmat.GaussMatrix`: ``M M* == n I`` and every entry in
    {1, -1, i, -i}. For a QUH matrix ``(A + i sqrt(q) B) / sqrt(q + 1)`` it is the pair of
    exact identities amicability and ``A A^T + q B B^T = (q + 1) n I``, which together are
    equivalent to ``H H* = n I``.
    """
    if isinstance(matrix, GaussMatrix):
        n = matrix.order
        report = Report(f"unit Hadamard matrix of order {n}")
        report.add(verify_quaternary_entries(matrix))
        report.add(
            _equality_check(
                "unit-hadamard",
                exactmat.gram(matrix, matrix),
                exactmat.scaled_identity(n, n),
            )
        )
        return report
    report = Report(f"QUH({matrix.n}, {matrix.q_param})")
    report.add(verify_amicable(matrix.A, matrix.B))
    report.add(verify_pair_identity(matrix.A, matrix.B, matrix.q_param))
    return report


def verify_gauss_amicable(c: AnyMatrix, d: AnyMatrix) -> CheckResult:
    """
    Hermitian amicability ``c d* == d c*`` of a Gaussian pair. Real operands are promoted to
    Gaussian matrices first, so the conjugate transpose is always taken.
    """
    return verify_amicable(c.to_gauss(), d.to_gauss())


def butson_parameter_admissible(q_param: int) -> bool:
    """
    Whether ``(1 + i sqrt(q_param)) / sqrt(q_param + 1)`` is a root of unity: exactly for
    ``q_param`` 1 and 3.
    """
    return q_param in BUTSON_PARAMETERS


class ButsonVerdict:
    """
    Outcome of :py:func:`verify_butson`. Truthy when the matrix is Butson.
    """

    is_butson: bool
    k: typing.Optional[int]
    unreal: bool

    def __init__(self, is_butson: bool, k: typing.Optional[int], unreal: bool) -> None:
        self.is_butson = is_butson
        self.k = k
        self.unreal = unreal

    def __repr__(self) -> str:  # pragma: no cover
        return f"<ButsonVerdict is_butson={self.is_butson} k={self.k} unreal={self.unreal}>"

    def __bool__(self) -> bool:
        return self.is_butson

    def label(self, n: int) -> str:
        if not self.is_butson:
            return "not Butson"
        return f"BH({n},{self.k})" + (", unreal" if self.unreal else "")


def _has_no_real_entry(matrix: "QuhMatrix") -> bool:
    # Imaginary part of every entry is sqrt(q/(q+1)) * B[i, j], zero only where B is.
    return bool(np.all(matrix.B.entries != 0))


def verify_butson(matrix: "QuhMatrix") -> ButsonVerdict:
    """
    Whether a QUH matrix is Butson: for ``q_param == 3`` its entries are sixth roots of
    unity, for ``q_param == 1`` eighth roots of unity. The unreality flag is computed, not
    assumed.
    """
    k = BUTSON_PARAMETERS.get(matrix.q_param)
    unreal = _has_no_real_entry(matrix)
    if k is None:
        return ButsonVerdict(False, None, unreal)
    return ButsonVerdict(True, k, unreal)


def butson_exponents(matrix: "QuhMatrix") -> IntMatrix:
    """
    Exponent matrix ``L`` with ``H[i, j] = exp(2 pi i L[i, j] / k)`` for a Butson QUH matrix.

    For ``q_param == 3`` (k = 6), ``(1 + i sqrt 3)/2`` is ``1``, ``(-1 + i sqrt 3)/2`` is
    ``2``, ``(-1 - i sqrt 3)/2`` is ``4`` and ``(1 - i sqrt 3)/2`` is ``5``. For
    ``q_param == 1`` (k = 8) the same sign patterns give ``1, 3, 5, 7``.

    Raises
    ------
    :py:exc:`quhm.errors.ParameterError` :
        If the parameter is not Butson-admissible.
    """
    k = BUTSON_PARAMETERS.get(matrix.q_param)
    if k is None:
        raise ParameterError(f"QUH parameter {matrix.q_param} gives no roots of unity")
    # Keyed by (sign of real part, sign of imaginary part).
    table = {
        6: {(1, 1): 1, (-1, 1): 2, (-1, -1): 4, (1, -1): 5},
        8: {(1, 1): 1, (-1, 1): 3, (-1, -1): 5, (1, -1): 7},
    }[k]
    a, b = matrix.A.entries, matrix.B.entries
    out = np.empty_like(a)
    for (sa, sb), exponent in table.items():
        out[(a == sa) & (b == sb)] = exponent
    return IntMatrix(out)


def excess(matrix: "QuhMatrix") -> ExcessValue:
    """
    The excess of a QUH matrix, ``u = S(A)`` and ``v = S(B)``.
    """
    u = exactmat.total_sum(matrix.A)
    v = exactmat.total_sum(matrix.B)
    assert isinstance(u, int) and isinstance(v, int)
    return ExcessValue(matrix.q_param, u, v)


def regular_rows(matrix: "QuhMatrix") -> CheckResult:
    """
    Row regularity ``|S(R_i)| = sqrt(n)`` for every row, in the cleared form
    ``(sum of A row)^2 + q (sum of B row)^2 = (q + 1) n``. The witness is the first bad row.
    """
    n, q = matrix.n, matrix.q_param
    sums_a = matrix.A.entries.sum(axis=1, dtype=object)
    sums_b = matrix.B.entries.sum(axis=1, dtype=object)
    target = (q + 1) * n
    for i, (sa, sb) in enumerate(zip(sums_a, sums_b)):
        value = int(sa) ** 2 + q * int(sb) ** 2
        if value != target:
            return CheckResult.failing(
                "regular", witness=(i,), residual=abs(value - target), detail="row"
            )
    return CheckResult.passing("regular")


def is_regular(matrix: "QuhMatrix") -> bool:
    return regular_rows(matrix).passed


def best_bound(matrix: "QuhMatrix") -> Report:
    """
    Best's bound ``|S(H)| <= n sqrt(n)`` in the cleared form
    ``u^2 + q v^2 <= (q + 1) n^3``, with the equality verdict next to the row regularity
    verdict. Equality holds exactly when every row is regular.
    """
    value = excess(matrix)
    cleared = value.magnitude_squared_times_qplus1
    limit = (matrix.q_param + 1) * matrix.n**3
    report = Report(f"excess of QUH({matrix.n}, {matrix.q_param})")
    if cleared <= limit:
        report.add(CheckResult.passing("best-bound", f"{cleared} <= {limit}"))
    else:
        report.add(CheckResult.failing("best-bound", residual=cleared - limit))
    if cleared == limit:
        report.add(CheckResult.passing("best-equality", f"u={value.u} v={value.v}"))
    else:
        report.add(
            CheckResult.failing(
                "best-equality", residual=limit - cleared, detail=f"u={value.u} v={value.v}"
            )
        )
    report.add(regular_rows(matrix))
    return report


class ExcessRow:
    """
    One depth of :py:func:`check_excess_lemma`.
    """

    m: int
    sum_j: int
    sum_a: int
    expected_j: int
    expected_a: int
    recurrence_ok: typing.Optional[bool]

    def __init__(
        self,
        m: int,
        sum_j: int,
        sum_a: int,
        expected_j: int,
        expected_a: int,
        recurrence_ok: typing.Optional[bool],
    ) -> None:
        self.m = m
        self.sum_j = sum_j
        self.sum_a = sum_a
        self.expected_j = expected_j
        self.expected_a = expected_a
        self.recurrence_ok = recurrence_ok

    @property
    def closed_form_ok(self) -> bool:
        return self.sum_j == self.expected_j and self.sum_a == self.expected_a

    def render(self) -> str:
        recurrence = {None: "-", True: "ok", False: "FAIL"}[self.recurrence_ok]
        return (
            f"{self.m:>3} {self.sum_j:>16} {self.expected_j:>16} "
            f"{self.sum_a:>16} {self.expected_a:>16} {recurrence:>10}"
        )


def excess_closed_forms(q: int, m: int) -> typing.Tuple[int, int]:
    """
    The closed forms of ``S(J_m)`` and ``S(A_m)``: ``q^(3k)`` for both when ``m = 2k``,
    ``q^(3k+2)`` and ``q^(3k+1)`` when ``m = 2k + 1``.
    """
    k, odd = divmod(m, 2)
    if odd:
        return q ** (3 * k + 2), q ** (3 * k + 1)
    return q ** (3 * k), q ** (3 * k)


def check_excess_lemma(
    core: "CoreMatrix", m_max: int, *, order_cap: typing.Optional[int] = None
) -> typing.Tuple[Report, typing.List[ExcessRow]]:
    """
    Recompute ``S(J_m)`` and ``S(A_m)`` for every depth up to ``m_max`` within the order cap,
    compare them with their closed forms and check ``S(X_m) = q^3 S(X_(m-2))``.

    Returns
    -------
    Tuple of :py:class:`quhm.checks.Report` and list of :py:class:`ExcessRow` :
        The report has one ``closed-form`` and one ``recurrence`` result per depth; the rows
        feed table output.
    """
    from quhm.constructions import iterate_ja

    cap = get_settings().order_cap if order_cap is None else order_cap
    q = core.q
    report = Report(f"excess lemma for q={q}")
    rows: typing.List[ExcessRow] = []
    sums: typing.List[typing.Tuple[int, int]] = []
    for m, (j, a) in enumerate(iterate_ja(core, m_max, order_cap=cap)):
        sum_j, sum_a = exactmat.total_sum(j), exactmat.total_sum(a)
        assert isinstance(sum_j, int) and isinstance(sum_a, int)
        expected_j, expected_a = excess_closed_forms(q, m)
        recurrence: typing.Optional[bool] = None
        if m >= 2:
            before_j, before_a = sums[m - 2]
            recurrence = sum_j == q**3 * before_j and sum_a == q**3 * before_a
        sums.append((sum_j, sum_a))
        row = ExcessRow(m, sum_j, sum_a, expected_j, expected_a, recurrence)
        rows.append(row)
        if row.closed_form_ok:
            report.add(CheckResult.passing(f"closed-form m={m}"))
        else:
            report.add(
                CheckResult.failing(
                    f"closed-form m={m}",
                    detail=f"S(J)={sum_j} vs {expected_j}, S(A)={sum_a} vs {expected_a}",
                )
            )
        if recurrence is None:
            report.add(CheckResult.skipped(f"recurrence m={m}", "needs m >= 2"))
        elif recurrence:
            report.add(CheckResult.passing(f"recurrence m={m}"))
        else:
            report.add(CheckResult.failing(f"recurrence m={m}"))
    log.debug("Excess lemma for q=%d checked up to m=%d", q, len(rows) - 1)
    return report, rows
