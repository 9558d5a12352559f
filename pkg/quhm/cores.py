"""
Skew symmetric and symmetric cores: Jacobsthal matrices, extraction from skew-type
Hadamard matrices, Paley assembly and multicirculant detection.
"""
import logging
import math
import typing
from enum import Enum

import numpy as np

from quhm import exactmat
from quhm.checks import CheckResult, Report
from quhm.errors import CoreKindError, MatrixShapeError, ParameterError, VerificationError
from quhm.exactmat import AnyMatrix, IntMatrix, SignMatrix, TernaryMatrix
from quhm.gfield import build_field, character_table, difference_indices

log = logging.getLogger(__name__)


class CoreKind(Enum):
    """
    Symmetry type of a core.
    """

    SYMMETRIC = "symmetric"
    SKEW = "skew-symmetric"


class Provenance(Enum):
    """
    Where a core comes from.
    """

    JACOBSTHAL = "jacobsthal"
    EXTRACTED = "extracted"
    USER = "user-supplied"


def _first_true(mask: np.ndarray) -> typing.Optional[typing.Tuple[int, ...]]:
    if not mask.any():
        return None
    return tuple(int(v) for v in np.argwhere(mask)[0])


def _kind_of(entries: np.ndarray) -> typing.Optional[CoreKind]:
    # The order-1 core [0] is both; it belongs to the order-2 skew Hadamard matrix.
    if np.array_equal(entries.T, -entries):
        return CoreKind.SKEW
    if np.array_equal(entries.T, entries):
        return CoreKind.SYMMETRIC
    return None


def verify_core(matrix: IntMatrix) -> Report:
    """
    Check every core property of a square matrix.

    The report holds ``zero-diagonal``, ``off-diagonal-sign``, ``symmetry``,
    ``zero-line-sums`` and ``gram`` (``Q Q^T = q I - J``). Failures carry the first
    failing coordinate. The ``symmetry`` detail names the kind found.

    Parameters
    ----------
    matrix : :py:class:`quhm.exactmat.IntMatrix`
        A square candidate core.

    Returns
    -------
    :py:class:`quhm.checks.Report` :
        Never raises for mathematical failures.
    """
    q = matrix.order
    entries = matrix.entries
    report = Report(f"core of order {q}")

    diagonal = np.diag(entries) != 0
    witness = _first_true(diagonal)
    report.add(
        CheckResult.passing("zero-diagonal")
        if witness is None
        else CheckResult.failing("zero-diagonal", witness=(witness[0], witness[0]))
    )

    off = ~np.eye(q, dtype=bool) & (np.abs(entries) != 1)
    witness = _first_true(off)
    report.add(
        CheckResult.passing("off-diagonal-sign")
        if witness is None
        else CheckResult.failing("off-diagonal-sign", witness=witness)
    )

    kind = _kind_of(entries)
    if kind is None:
        # witness against whichever kind the matrix is closer to
        skew_bad = entries.T != -entries
        symmetric_bad = entries.T != entries
        witness = _first_true(
            skew_bad if skew_bad.sum() <= symmetric_bad.sum() else symmetric_bad
        )
        report.add(
            CheckResult.failing(
                "symmetry", witness=witness, detail="neither symmetric nor skew-symmetric"
            )
        )
    else:
        report.add(CheckResult.passing("symmetry", detail=f"kind={kind.value}"))

    row_bad = entries.sum(axis=1) != 0
    col_bad = entries.sum(axis=0) != 0
    if row_bad.any():
        report.add(
            CheckResult.failing(
                "zero-line-sums", witness=(int(np.argmax(row_bad)),), detail="row sum"
            )
        )
    elif col_bad.any():
        report.add(
            CheckResult.failing(
                "zero-line-sums", witness=(int(np.argmax(col_bad)),), detail="column sum"
            )
        )
    else:
        report.add(CheckResult.passing("zero-line-sums"))

    expected = IntMatrix(q * np.eye(q, dtype=np.int64) - np.ones((q, q), dtype=np.int64))
    actual = exactmat.gram(matrix, matrix)
    witness = exactmat.first_difference(actual, expected)
    report.add(
        CheckResult.passing("gram")
        if witness is None
        else CheckResult.failing(
            "gram", witness=witness, residual=exactmat.max_deviation(actual, expected)
        )
    )
    return report


class CoreMatrix:
    """
    A verified core of order ``q``: zero diagonal, +-1 elsewhere, zero line sums,
    ``Q Q^T = q I - J``, and either symmetric or skew-symmetric.

    Parameters
    ----------
    matrix : :py:class:`quhm.exactmat.IntMatrix` or array-like
        The candidate core.
    provenance : :py:class:`Provenance`
        Where the core comes from. Defaults to user-supplied.

    Raises
    ------
    :py:exc:`quhm.errors.VerificationError` :
        If any core property fails. The report is attached.
    """

    q: int
    matrix: TernaryMatrix
    kind: CoreKind
    provenance: Provenance

    def __init__(
        self,
        matrix: typing.Any,
        provenance: Provenance = Provenance.USER,
    ) -> None:
        candidate = matrix if isinstance(matrix, IntMatrix) else IntMatrix(matrix)
        verify_core(candidate).raise_for_failure()
        self.matrix = candidate.cast(TernaryMatrix)
        self.q = self.matrix.order
        kind = _kind_of(self.matrix.entries)
        assert kind is not None
        self.kind = kind
        self.provenance = provenance

    def __repr__(self) -> str:  # pragma: no cover
        return f"<CoreMatrix q={self.q} kind={self.kind.value} provenance={self.provenance.value}>"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoreMatrix):
            return NotImplemented
        return self.matrix == other.matrix

    __hash__ = None  # type: ignore[assignment]

    @property
    def is_skew(self) -> bool:
        return self.kind is CoreKind.SKEW

    def require(self, kind: CoreKind) -> "CoreMatrix":
        """
        Return this core if it has the given kind.

        Raises
        ------
        :py:exc:`quhm.errors.CoreKindError` :
            Otherwise.
        """
        if self.kind is not kind:
            raise CoreKindError(
                f"A {kind.value} core is required, got a {self.kind.value} core of order {self.q}"
            )
        return self


def core_from_matrix(matrix: typing.Any, provenance: Provenance = Provenance.USER) -> CoreMatrix:
    """
    Accept a user-supplied matrix as a core once :py:func:`verify_core` passes.
    """
    return CoreMatrix(matrix, provenance)


def jacobsthal(q: int) -> CoreMatrix:
    """
    The Jacobsthal matrix of GF(q): ``Q[i, j] = chi(a_i - a_j)`` in the canonical element
    ordering.

    The core is skew-symmetric when ``q % 4 == 3`` and symmetric when ``q % 4 == 1``.

    Raises
    ------
    :py:exc:`quhm.errors.ParameterError` :
        If ``q`` is even or not a prime power.
    """
    if q % 2 == 0:
        raise ParameterError(f"Jacobsthal matrices need an odd prime power, got {q}")
    spec = build_field(q)
    entries = character_table(q)[difference_indices(spec)]
    log.debug("Jacobsthal matrix of order %d built", q)
    return CoreMatrix(IntMatrix(entries), Provenance.JACOBSTHAL)


def verify_skew_hadamard(matrix: IntMatrix) -> Report:
    """
    Check that ``H`` is a skew-type Hadamard matrix: +-1 entries, ``H H^T = n I`` and
    ``H - I`` skew-symmetric.
    """
    n = matrix.order
    entries = matrix.entries
    report = Report(f"skew-type Hadamard matrix of order {n}")
    witness = _first_true(np.abs(entries) != 1)
    report.add(
        CheckResult.passing("sign-entries")
        if witness is None
        else CheckResult.failing("sign-entries", witness=witness)
    )
    expected = exactmat.scaled_identity(n, n)
    actual = exactmat.gram(matrix, matrix)
    witness = exactmat.first_difference(actual, expected)
    report.add(
        CheckResult.passing("hadamard")
        if witness is None
        else CheckResult.failing(
            "hadamard", witness=witness, residual=exactmat.max_deviation(actual, expected)
        )
    )
    w = entries - np.eye(n, dtype=np.int64)
    witness = _first_true(w.T != -w)
    report.add(
        CheckResult.passing("skew-type")
        if witness is None
        else CheckResult.failing("skew-type", witness=witness)
    )
    return report


def paley_skew_hadamard(q: int) -> SignMatrix:
    """
    The skew-type Hadamard matrix ``[[1, j], [-j^T, I + Q]]`` of order ``q + 1`` with ``Q``
    the Jacobsthal matrix of GF(q).

    Raises
    ------
    :py:exc:`quhm.errors.CoreKindError` :
        If ``q % 4 != 3``: the Jacobsthal core is not skew.
    :py:exc:`quhm.errors.VerificationError` :
        If the assembled matrix fails verification.
    """
    if q % 4 != 3:
        raise CoreKindError(f"Paley skew Hadamard matrices need q = 3 (mod 4), got {q}")
    return skew_hadamard_from_core(jacobsthal(q))


def skew_hadamard_from_core(core: CoreMatrix) -> SignMatrix:
    """
    Border a skew core into the normal form ``[[1, j], [-j^T, I + Q]]``.
    """
    core.require(CoreKind.SKEW)
    q = core.q
    h = np.empty((q + 1, q + 1), dtype=np.int64)
    h[0, 0] = 1
    h[0, 1:] = 1
    h[1:, 0] = -1
    h[1:, 1:] = np.eye(q, dtype=np.int64) + core.matrix.entries
    matrix = SignMatrix(h)
    verify_skew_hadamard(matrix).raise_for_failure()
    return matrix


def extract_core(matrix: IntMatrix) -> CoreMatrix:
    """
    Recover the skew core of a skew-type Hadamard matrix.

    Row ``k`` and column ``k`` are negated together (which keeps skew type) for every
    ``k >= 1`` with ``H[0, k] == -1``, reaching ``[[1, j], [-j^T, I + Q]]``.

    Raises
    ------
    :py:exc:`quhm.errors.VerificationError` :
        If the input is not a skew-type Hadamard matrix, or the normal form is not reached.
    """
    report = verify_skew_hadamard(matrix)
    report.raise_for_failure()
    entries = matrix.entries
    signs = np.where(entries[0] == -1, -1, 1).astype(np.int64)
    signs[0] = 1
    normal = entries * signs[:, None] * signs[None, :]
    if not (np.all(normal[0] == 1) and np.all(normal[1:, 0] == -1)):
        report.add(
            CheckResult.failing(
                "normal-form", detail="first row and column could not be normalized"
            )
        )
        report.raise_for_failure()
    q = matrix.order - 1
    core = normal[1:, 1:] - np.eye(q, dtype=np.int64)
    return CoreMatrix(IntMatrix(core), Provenance.EXTRACTED)


def symmetric_paley_conference(q: int) -> TernaryMatrix:
    """
    The symmetric conference matrix ``[[0, j], [j^T, Q]]`` of order ``q + 1`` for
    ``q % 4 == 1``, verified ``C C^T = q I``.
    """
    core = jacobsthal(q).require(CoreKind.SYMMETRIC)
    return conference_from_core(core)


def conference_from_core(core: CoreMatrix) -> TernaryMatrix:
    core.require(CoreKind.SYMMETRIC)
    q = core.q
    c = np.zeros((q + 1, q + 1), dtype=np.int64)
    c[0, 1:] = 1
    c[1:, 0] = 1
    c[1:, 1:] = core.matrix.entries
    matrix = TernaryMatrix(c)
    expected = exactmat.scaled_identity(q, q + 1)
    witness = exactmat.first_difference(exactmat.gram(matrix, matrix), expected)
    if witness is not None:
        raise VerificationError(
            f"conference matrix of order {q + 1} fails C C^T = qI at {witness}",
            Report("conference", [CheckResult.failing("gram", witness=witness)]),
        )
    return matrix


def _is_multicirculant(parts: typing.Sequence[np.ndarray], dims: typing.Sequence[int]) -> bool:
    n = parts[0].shape[0]
    if n == 1:
        return True
    k = dims[0]
    b = n // k
    shift = (np.arange(k)[None, :] - np.arange(k)[:, None]) % k
    firsts = []
    for part in parts:
        blocks = part.reshape(k, b, k, b).transpose(0, 2, 1, 3)
        # block (i, j) must equal block (0, j - i)
        if not np.array_equal(blocks, blocks[0][shift]):
            return False
        firsts.append(blocks[0])
    return all(
        _is_multicirculant([first[j] for first in firsts], dims[1:]) for j in range(k)
    )


def is_multicirculant(matrix: AnyMatrix, dims: typing.Sequence[int]) -> bool:
    """
    Whether a matrix is multicirculant for the factorization ``dims``.

    The outer level is block-circulant with ``dims[0] x dims[0]`` blocks of order
    ``prod(dims[1:])``, and the blocks are multicirculant for ``dims[1:]``, recursively.
    Order-1 matrices are multicirculant.

    Raises
    ------
    :py:exc:`quhm.errors.MatrixShapeError` :
        If the product of ``dims`` is not the order of the matrix.
    """
    n = matrix.shape[0]
    if matrix.shape[0] != matrix.shape[1]:
        raise MatrixShapeError(f"Multicirculant matrices are square, got {matrix.shape}")
    if math.prod(dims) != n or any(d < 1 for d in dims):
        raise MatrixShapeError(f"Factorization {list(dims)} does not multiply to order {n}")
    if isinstance(matrix, IntMatrix):
        parts = [matrix.entries]
    else:
        parts = [matrix.re, matrix.im]
    return _is_multicirculant(parts, list(dims))
