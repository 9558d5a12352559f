"""
The recursive constructions built on a core.

From a skew core ``Q`` of order ``q``::

    J_0 = A_0 = [1]
    J_m = J_q (x) A_(m-1)
    A_m = I_q (x) J_(m-1) + Q (x) A_(m-1)

``(J_m, A_m)`` is an amicable pair with ``J J^T + q A A^T = q^m (q + 1) I`` and so gives the
quaternary unit Hadamard matrix ``(J_m + i sqrt(q) A_m) / sqrt(q + 1)``. The same recursion
accepts any seed pair in place of ``[1]``. A symmetric core drives the complex variant
``(C_m, D_m)`` and the quaternary Hadamard matrices of order ``q^m (q + 1)``.
"""
import logging
import math
import typing

import numpy as np

from quhm import exactmat
from quhm.checks import CheckResult, Report
from quhm.config import Settings, get_settings
from quhm.cores import CoreKind, CoreMatrix, conference_from_core
from quhm.errors import MatrixShapeError, ParameterError, VerificationError
from quhm.exactmat import GaussMatrix, IntMatrix, SignMatrix
from quhm.utils import check_order
from quhm.verify import (
    verify_amicable,
    verify_gauss_amicable,
    verify_pair_identity,
    verify_quaternary_entries,
    verify_unit_hadamard,
)

log = logging.getLogger(__name__)

SignPair = typing.Tuple[SignMatrix, SignMatrix]
GaussPair = typing.Tuple[GaussMatrix, GaussMatrix]


def _resolve(settings: typing.Optional[Settings], verify: typing.Optional[bool]) -> Settings:
    settings = settings or get_settings()
    if verify is not None and verify != settings.verify:
        settings = settings.model_copy(update={"verify": verify})
    return settings


class QuhMatrix:
    """
    A quaternary unit Hadamard matrix QUH(n, q_param), kept as its two sign patterns:
    ``H = (A + i sqrt(q_param) B) / sqrt(q_param + 1)``.

    A constructed instance is a certificate: the constructor checks that ``A`` and ``B`` are
    amicable and that ``A A^T + q_param B B^T = (q_param + 1) n I``.

    Parameters
    ----------
    a : :py:class:`quhm.exactmat.SignMatrix`
        The real-part pattern.
    b : :py:class:`quhm.exactmat.SignMatrix`
        The imaginary-part pattern.
    q_param : :py:class:`int`
        The QUH parameter, the core order for constructed matrices.
    m : Optional, :py:class:`int`
        Recursion depth, when known.
    check : :py:class:`bool`
        Verify the two identities. Defaults to True.

    Raises
    ------
    :py:exc:`quhm.errors.VerificationError` :
        If an identity fails. The report is attached.
    """

    q_param: int
    m: typing.Optional[int]
    n: int
    A: SignMatrix
    B: SignMatrix

    def __init__(
        self,
        a: IntMatrix,
        b: IntMatrix,
        q_param: int,
        m: typing.Optional[int] = None,
        *,
        check: bool = True,
    ) -> None:
        if q_param < 1:
            raise ParameterError(f"The QUH parameter must be positive, got {q_param}")
        self.A = a.cast(SignMatrix)
        self.B = b.cast(SignMatrix)
        if self.A.shape != self.B.shape:
            raise MatrixShapeError(f"Patterns of orders {self.A.order} and {self.B.order}")
        self.q_param = q_param
        self.m = m
        self.n = self.A.order
        if check:
            verify_unit_hadamard(self).raise_for_failure()

    def __repr__(self) -> str:  # pragma: no cover
        return f"<QuhMatrix n={self.n} q_param={self.q_param} m={self.m}>"

    @property
    def q(self) -> int:
        return self.q_param

    def to_complex(self) -> np.ndarray:
        """
        Floating-point materialization of ``H``. For inspection only, never for verdicts.
        """
        q = self.q_param
        return (
            self.A.entries.astype(np.float64) + 1j * math.sqrt(q) * self.B.entries
        ) / math.sqrt(q + 1)


class SeedPair:
    """
    A seed for the generalized recursion: an amicable +-1 pair ``(X, Y)`` of order ``n`` with
    ``X X^T + q Y Y^T = n (q + 1) I``.

    Raises
    ------
    :py:exc:`quhm.errors.VerificationError` :
        Naming the invariant that fails.
    """

    n: int
    X: SignMatrix
    Y: SignMatrix
    q: int

    def __init__(self, x: IntMatrix, y: IntMatrix, q: int) -> None:
        self.X = x.cast(SignMatrix)
        self.Y = y.cast(SignMatrix)
        if self.X.shape != self.Y.shape:
            raise MatrixShapeError(f"Seed orders {self.X.order} and {self.Y.order} differ")
        self.n = self.X.order
        self.q = q
        report = Report(f"seed pair of order {self.n} for q={q}")
        report.add(verify_amicable(self.X, self.Y))
        report.add(verify_pair_identity(self.X, self.Y, q))
        report.raise_for_failure()

    def __repr__(self) -> str:  # pragma: no cover
        return f"<SeedPair n={self.n} q={self.q}>"

    @classmethod
    def trivial(cls, q: int) -> "SeedPair":
        """
        The seed ``([1], [1])``, valid for every ``q``.
        """
        one = exactmat.ones(1)
        return cls(one, one, q)


def _step(core: CoreMatrix, x: SignMatrix, y: SignMatrix) -> SignPair:
    q = core.q
    x_next = exactmat.kron(exactmat.ones(q), y)
    y_next = exactmat.scalar_combine(
        1, exactmat.kron(exactmat.identity(q), x), 1, exactmat.kron(core.matrix, y)
    )
    return x_next.cast(SignMatrix), y_next.cast(SignMatrix)


def _iterate(
    core: CoreMatrix, x: SignMatrix, y: SignMatrix, m_max: int, order_cap: int
) -> typing.Iterator[SignPair]:
    yield x, y
    for level in range(1, m_max + 1):
        if x.order * core.q > order_cap:
            log.debug("Stopping at depth %d: next order exceeds the cap %d", level, order_cap)
            return
        x, y = _step(core, x, y)
        yield x, y


def iterate_ja(
    core: CoreMatrix, m_max: int, *, order_cap: typing.Optional[int] = None
) -> typing.Iterator[SignPair]:
    """
    Yield ``(J_m, A_m)`` for ``m = 0, 1, ...`` up to ``m_max``, stopping early once the
    next order would exceed the cap. Only the previous level is kept.
    """
    core.require(CoreKind.SKEW)
    cap = get_settings().order_cap if order_cap is None else order_cap
    one = exactmat.ones(1).cast(SignMatrix)
    return _iterate(core, one, one, m_max, cap)


def _check_pair(subject: str, x: SignMatrix, y: SignMatrix, q: int) -> Report:
    report = Report(subject)
    report.add(verify_amicable(x, y))
    report.add(verify_pair_identity(x, y, q))
    return report


def _recurse(
    core: CoreMatrix, x: SignMatrix, y: SignMatrix, m: int, settings: Settings
) -> SignPair:
    if m < 0:
        raise ParameterError(f"The depth must be non-negative, got {m}")
    core.require(CoreKind.SKEW)
    check_order(x.order * core.q**m, settings.order_cap)
    for _ in range(m):
        x, y = _step(core, x, y)
    log.debug("Recursion on q=%d reached order %d", core.q, x.order)
    if settings.verify:
        _check_pair(f"pair of order {x.order} for q={core.q}", x, y, core.q).raise_for_failure()
    return x, y


def construct_ja(
    core: CoreMatrix,
    m: int,
    *,
    settings: typing.Optional[Settings] = None,
    verify: typing.Optional[bool] = None,
) -> SignPair:
    """
    Build ``(J_m, A_m)`` from a skew core.

    Parameters
    ----------
    core : :py:class:`quhm.cores.CoreMatrix`
        A skew-symmetric core of order ``q``.
    m : :py:class:`int`
        The recursion depth, ``m >= 0``. The result has order ``q^m``.
    settings : Optional, :py:class:`quhm.config.Settings`
        Order cap and verification default.
    verify : Optional, :py:class:`bool`
        Override the verification default.

    Raises
    ------
    :py:exc:`quhm.errors.CoreKindError` :
        If the core is symmetric.
    :py:exc:`quhm.errors.OrderCapExceededError` :
        If ``q^m`` exceeds the order cap.
    :py:exc:`quhm.errors.VerificationError` :
        If verification is on and the pair fails an identity.
    """
    one = exactmat.ones(1).cast(SignMatrix)
    return _recurse(core, one, one, m, _resolve(settings, verify))


def construct_seeded(
    seed: SeedPair,
    core: CoreMatrix,
    m: int,
    *,
    settings: typing.Optional[Settings] = None,
    verify: typing.Optional[bool] = None,
) -> SignPair:
    """
    Build ``(X_m, Y_m)``: the recursion of :py:func:`construct_ja` started from a seed pair.

    The result has order ``n q^m`` and satisfies ``X X^T + q Y Y^T = n q^m (q + 1) I``.

    Raises
    ------
    :py:exc:`quhm.errors.ParameterError` :
        If the seed was made for another ``q`` than the core order.
    """
    if seed.q != core.q:
        raise ParameterError(f"Seed is for q={seed.q} but the core has order {core.q}")
    return _recurse(core, seed.X, seed.Y, m, _resolve(settings, verify))


def assemble_quh(
    j: IntMatrix,
    a: IntMatrix,
    q: int,
    m: typing.Optional[int] = None,
    *,
    check: bool = True,
) -> QuhMatrix:
    """
    ``(J + i sqrt(q) A) / sqrt(q + 1)`` as a :py:class:`QuhMatrix`, checked unless told not to.
    """
    if j.shape != a.shape:
        raise MatrixShapeError(f"Cannot assemble orders {j.shape} and {a.shape}")
    return QuhMatrix(j, a, q, m, check=check)


def construct_quh(
    core: CoreMatrix,
    m: int,
    *,
    settings: typing.Optional[Settings] = None,
    verify: typing.Optional[bool] = None,
) -> QuhMatrix:
    """
    The regular QUH(q^m, q) of a skew core.
    """
    settings = _resolve(settings, verify)
    j, a = construct_ja(core, m, settings=settings)
    return assemble_quh(j, a, core.q, m, check=settings.verify)


def _check_gauss_pair(subject: str, c: GaussMatrix, d: GaussMatrix, q: int) -> Report:
    report = Report(subject)
    report.add(verify_quaternary_entries(c))
    report.add(verify_quaternary_entries(d))
    report.add(verify_gauss_amicable(c, d))
    report.add(verify_pair_identity(c, d, q))
    return report


def construct_cd(
    core: CoreMatrix,
    m: int,
    *,
    settings: typing.Optional[Settings] = None,
    verify: typing.Optional[bool] = None,
) -> GaussPair:
    """
    Build ``(C_m, D_m)`` from a symmetric core::

        C_0 = D_0 = [1]
        C_m = J_q (x) D_(m-1)
        D_m = I_q (x) C_(m-1) + i Q (x) D_(m-1)

    Every entry is one of 1, -1, i, -i; the pair is amicable in the Hermitian sense and
    ``C C* + q D D* = q^m (q + 1) I``.

    Raises
    ------
    :py:exc:`quhm.errors.CoreKindError` :
        If the core is skew.
    """
    settings = _resolve(settings, verify)
    if m < 0:
        raise ParameterError(f"The depth must be non-negative, got {m}")
    core.require(CoreKind.SYMMETRIC)
    q = core.q
    check_order(q**m, settings.order_cap)
    c: GaussMatrix = exactmat.ones(1).to_gauss()
    d: GaussMatrix = exactmat.ones(1).to_gauss()
    for _ in range(m):
        c_next = exactmat.kron(exactmat.ones(q), d)
        d_next = exactmat.scalar_combine(
            1,
            exactmat.kron(exactmat.identity(q), c),
            exactmat.I_UNIT,
            exactmat.kron(core.matrix, d),
        )
        assert isinstance(c_next, GaussMatrix) and isinstance(d_next, GaussMatrix)
        c, d = c_next, d_next
    if settings.verify:
        subject = f"complex pair of order {c.order} for q={q}"
        _check_gauss_pair(subject, c, d, q).raise_for_failure()
    return c, d


def assemble_quaternary_hadamard(
    core: CoreMatrix,
    m: int,
    *,
    settings: typing.Optional[Settings] = None,
    verify: typing.Optional[bool] = None,
) -> GaussMatrix:
    """
    The quaternary Hadamard matrix ``[[0, j], [j^T, Q]] (x) D_m + i I_(q+1) (x) C_m`` of
    order ``q^m (q + 1)``.

    The matrix is always verified (``M M* = N I`` and entries in {1, -1, i, -i}) unless
    verification is turned off.

    Raises
    ------
    :py:exc:`quhm.errors.OrderCapExceededError` :
        If ``q^m (q + 1)`` exceeds the order cap.
    :py:exc:`quhm.errors.VerificationError` :
        If the matrix is not unit Hadamard, which points at a bad core.
    """
    settings = _resolve(settings, verify)
    core.require(CoreKind.SYMMETRIC)
    q = core.q
    check_order(q**m * (q + 1), settings.order_cap)
    c, d = construct_cd(core, m, settings=settings)
    conference = conference_from_core(core)
    matrix = exactmat.scalar_combine(
        1,
        exactmat.kron(conference, d),
        exactmat.I_UNIT,
        exactmat.kron(exactmat.identity(q + 1), c),
    )
    assert isinstance(matrix, GaussMatrix)
    if settings.verify:
        verify_unit_hadamard(matrix).raise_for_failure()
    return matrix


def hadamard_from_pair(
    a: IntMatrix,
    b: IntMatrix,
    skew_hadamard: IntMatrix,
    *,
    settings: typing.Optional[Settings] = None,
    verify: typing.Optional[bool] = None,
) -> SignMatrix:
    """
    A real Hadamard matrix from an amicable pair and a skew-type Hadamard matrix.

    With ``S = I + W`` skew-type Hadamard of order ``q + 1`` and ``(A, B)`` an amicable +-1
    pair of order ``n`` with ``A A^T + q B B^T = (q + 1) n I``, the matrix
    ``I_(q+1) (x) A + W (x) B`` is Hadamard of order ``(q + 1) n``.

    Raises
    ------
    :py:exc:`quhm.errors.VerificationError` :
        If the pair does not satisfy its identities for ``q = order(S) - 1``, or the result
        is not Hadamard.
    """
    settings = _resolve(settings, verify)
    s = skew_hadamard.cast(SignMatrix)
    q = s.order - 1
    a, b = a.cast(SignMatrix), b.cast(SignMatrix)
    check_order(s.order * a.order, settings.order_cap)
    subject = f"pair for a Hadamard matrix of order {s.order * a.order}"
    _check_pair(subject, a, b, q).raise_for_failure()
    w = exactmat.scalar_combine(1, s, -1, exactmat.identity(s.order))
    result = exactmat.scalar_combine(
        1, exactmat.kron(exactmat.identity(s.order), a), 1, exactmat.kron(w, b)
    ).cast(SignMatrix)
    if settings.verify:
        n = result.order
        actual = exactmat.gram(result, result)
        witness = exactmat.first_difference(actual, exactmat.scaled_identity(n, n))
        if witness is not None:
            failure = CheckResult.failing("hadamard", witness=witness)
            raise VerificationError(
                f"Hadamard matrix of order {n} fails H H^T = nI at {witness}",
                Report(f"Hadamard matrix of order {n}", [failure]),
            )
    return result

