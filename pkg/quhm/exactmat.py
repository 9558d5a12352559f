"""
Exact dense matrices: integer, ternary, sign and Gaussian-integer.

Entries are stored as read-only ``numpy.int64`` arrays. Every operation bounds its result
before computing it and raises :py:exc:`quhm.errors.MatrixOverflowError` instead of wrapping.
Products whose bound stays below 2^53 go through float64 BLAS, which is exact in that range.
"""
import logging
import typing

import numpy as np

from quhm.errors import MatrixEntryError, MatrixOverflowError, MatrixShapeError

log = logging.getLogger(__name__)

INT64_MAX = 2**63 - 1
FLOAT_EXACT = 2**53

GaussInt = typing.Tuple[int, int]
Scalar = typing.Union[int, GaussInt]
I_UNIT: GaussInt = (0, 1)

_M = typing.TypeVar("_M", bound="IntMatrix")


def _freeze(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def _max_abs(array: np.ndarray) -> int:
    return int(np.abs(array).max()) if array.size else 0


def _check_bound(bound: int, what: str) -> None:
    if bound > INT64_MAX:
        raise MatrixOverflowError(f"{what}: bound {bound} leaves the 64-bit range")


def _product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact ``a @ b`` on int64 arrays."""
    bound = a.shape[1] * _max_abs(a) * _max_abs(b)
    _check_bound(bound, "product")
    if bound < FLOAT_EXACT:
        return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
    log.debug("Product bound %d above 2^53, using the int64 kernel", bound)
    return a @ b


class IntMatrix:
    """
    A dense matrix of exact integers, ``rows x cols``.

    Instances are immutable values. Subclasses narrow the allowed entries through
    ``ALPHABET`` and are checked on construction.

    Parameters
    ----------
    entries : array-like
        Row-major integer entries. Copied into a read-only int64 array.

    Raises
    ------
    :py:exc:`quhm.errors.MatrixShapeError` :
        If the entries are not a non-empty 2-D array (or not square for square types).
    :py:exc:`quhm.errors.MatrixEntryError` :
        If an entry is not an integer or lies outside of ``ALPHABET``.
    """

    ALPHABET: typing.ClassVar[typing.Optional[typing.FrozenSet[int]]] = None
    SQUARE: typing.ClassVar[bool] = False

    entries: np.ndarray

    def __init__(self, entries: typing.Any) -> None:
        if isinstance(entries, IntMatrix):
            array = entries.entries
        else:
            raw = np.asarray(entries)
            if raw.dtype.kind not in "iub" and raw.size:
                if raw.dtype.kind == "f" and np.all(np.mod(raw, 1) == 0):
                    raw = raw.astype(np.int64)
                else:
                    raise MatrixEntryError(f"Entries must be integers, got dtype {raw.dtype}")
            array = raw.astype(np.int64)
        if array.ndim != 2 or not array.size:
            raise MatrixShapeError(f"Expected a non-empty 2-D matrix, got shape {array.shape}")
        if self.SQUARE and array.shape[0] != array.shape[1]:
            raise MatrixShapeError(f"Expected a square matrix, got shape {array.shape}")
        if self.ALPHABET is not None:
            bad = ~np.isin(array, list(self.ALPHABET))
            if bad.any():
                i, j = (int(v) for v in np.argwhere(bad)[0])
                raise MatrixEntryError(
                    f"{type(self).__name__} entry {int(array[i, j])} at {(i, j)} is outside "
                    f"{sorted(self.ALPHABET)}"
                )
        self.entries = _freeze(array.copy())

    def __repr__(self) -> str:  # pragma: no cover
        return f"<{type(self).__name__} {self.rows}x{self.cols}>"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.entries, other.entries))

    __hash__ = None  # type: ignore[assignment]

    def __getitem__(self, index: typing.Tuple[int, int]) -> int:
        return int(self.entries[index])

    @property
    def rows(self) -> int:
        return int(self.entries.shape[0])

    @property
    def cols(self) -> int:
        return int(self.entries.shape[1])

    @property
    def shape(self) -> typing.Tuple[int, int]:
        return self.rows, self.cols

    @property
    def order(self) -> int:
        """
        The order of a square matrix.

        Raises
        ------
        :py:exc:`quhm.errors.MatrixShapeError` :
            If the matrix is not square.
        """
        if self.rows != self.cols:
            raise MatrixShapeError(f"A {self.rows}x{self.cols} matrix has no order")
        return self.rows

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def max_abs(self) -> int:
        return _max_abs(self.entries)

    def transpose(self: _M) -> _M:
        return type(self)(self.entries.T)

    def negate(self: _M) -> _M:
        return type(self)(-self.entries)

    def to_list(self) -> typing.List[typing.List[int]]:
        return [[int(v) for v in row] for row in self.entries]

    def to_gauss(self) -> "GaussMatrix":
        return GaussMatrix(self.entries, np.zeros_like(self.entries))

    def cast(self, cls: typing.Type[_M]) -> _M:
        """
        Re-check this matrix as another matrix type, e.g. ``m.cast(SignMatrix)``.
        """
        return cls(self.entries)


class TernaryMatrix(IntMatrix):
    """
    A square matrix with entries in {-1, 0, 1}.
    """

    ALPHABET = frozenset((-1, 0, 1))
    SQUARE = True


class SignMatrix(TernaryMatrix):
    """
    A square matrix with entries in {-1, 1}.
    """

    ALPHABET = frozenset((-1, 1))


class GaussMatrix:
    """
    A square matrix of Gaussian integers ``re + im*i``, kept as two int64 arrays.

    The quaternary entry domain {1, -1, i, -i} is the case ``|re| + |im| == 1``, see
    :py:meth:`is_quaternary`.
    """

    re: np.ndarray
    im: np.ndarray

    def __init__(self, re: typing.Any, im: typing.Any) -> None:
        real = IntMatrix(re).entries
        imag = IntMatrix(im).entries
        if real.shape != imag.shape:
            raise MatrixShapeError(f"Real part {real.shape} and imaginary part {imag.shape}")
        if real.shape[0] != real.shape[1]:
            raise MatrixShapeError(f"Expected a square matrix, got shape {real.shape}")
        self.re = real
        self.im = imag

    @classmethod
    def from_pairs(
        cls, rows: typing.Sequence[typing.Sequence[typing.Sequence[int]]]
    ) -> "GaussMatrix":
        """
        Build from nested ``[re, im]`` pairs.
        """
        try:
            array = np.asarray(rows, dtype=np.int64)
        except (TypeError, ValueError) as e:
            raise MatrixEntryError("Gaussian entries must be [re, im] integer pairs") from e
        if array.ndim != 3 or array.shape[2] != 2:
            raise MatrixShapeError(f"Expected n x n x 2 pairs, got shape {array.shape}")
        return cls(array[:, :, 0], array[:, :, 1])

    def __repr__(self) -> str:  # pragma: no cover
        return f"<GaussMatrix {self.order}x{self.order}>"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntMatrix):
            other = other.to_gauss()
        if not isinstance(other, GaussMatrix):
            return NotImplemented
        return bool(np.array_equal(self.re, other.re) and np.array_equal(self.im, other.im))

    __hash__ = None  # type: ignore[assignment]

    def __getitem__(self, index: typing.Tuple[int, int]) -> GaussInt:
        return int(self.re[index]), int(self.im[index])

    @property
    def order(self) -> int:
        return int(self.re.shape[0])

    @property
    def shape(self) -> typing.Tuple[int, int]:
        return self.order, self.order

    def max_abs(self) -> int:
        return max(_max_abs(self.re), _max_abs(self.im))

    def conj_transpose(self) -> "GaussMatrix":
        return GaussMatrix(self.re.T, -self.im.T)

    def transpose(self) -> "GaussMatrix":
        return GaussMatrix(self.re.T, self.im.T)

    def to_gauss(self) -> "GaussMatrix":
        return self

    def to_pairs(self) -> typing.List[typing.List[typing.List[int]]]:
        return [
            [[int(a), int(b)] for a, b in zip(row_re, row_im)]
            for row_re, row_im in zip(self.re, self.im)
        ]

    def to_complex(self) -> np.ndarray:
        return self.re.astype(np.float64) + 1j * self.im.astype(np.float64)

    def first_non_quaternary(self) -> typing.Optional[typing.Tuple[int, int]]:
        """
        First coordinate whose entry is not one of 1, -1, i, -i.
        """
        bad = (np.abs(self.re) + np.abs(self.im)) != 1
        if not bad.any():
            return None
        i, j = (int(v) for v in np.argwhere(bad)[0])
        return i, j

    def is_quaternary(self) -> bool:
        return self.first_non_quaternary() is None


AnyMatrix = typing.Union[IntMatrix, GaussMatrix]


# Builders


def identity(n: int) -> TernaryMatrix:
    """
    I_n.
    """
    return TernaryMatrix(np.eye(n, dtype=np.int64))


def ones(rows: int, cols: typing.Optional[int] = None) -> IntMatrix:
    """
    The all-ones matrix: J_n when square, j_n when ``rows == 1``.
    """
    cols = rows if cols is None else cols
    array = np.ones((rows, cols), dtype=np.int64)
    return SignMatrix(array) if rows == cols else IntMatrix(array)


def zeros(rows: int, cols: typing.Optional[int] = None) -> IntMatrix:
    cols = rows if cols is None else cols
    return IntMatrix(np.zeros((rows, cols), dtype=np.int64))


def circulant(first_row: typing.Sequence[int]) -> IntMatrix:
    """
    circ(a_1, ..., a_n): row ``i`` is the first row shifted right by ``i``.
    """
    row = np.asarray(first_row, dtype=np.int64)
    return IntMatrix(np.stack([np.roll(row, i) for i in range(row.size)]))


# Operations


def _narrowest(a: typing.Any, b: typing.Any) -> typing.Type[IntMatrix]:
    for cls in (SignMatrix, TernaryMatrix):
        if isinstance(a, cls) and isinstance(b, cls):
            return cls
    return IntMatrix


def _parts(m: AnyMatrix) -> typing.Tuple[np.ndarray, np.ndarray]:
    if isinstance(m, IntMatrix):
        return m.entries, np.zeros_like(m.entries)
    return m.re, m.im


def _scalar_parts(c: Scalar) -> GaussInt:
    if isinstance(c, tuple):
        return int(c[0]), int(c[1])
    return int(c), 0


def kron(a: AnyMatrix, b: AnyMatrix) -> AnyMatrix:
    """
    Kronecker product. Block ``(i, j)`` of the result is ``a[i, j] * b``.

    Sign and ternary types are preserved when both factors share them. A Gaussian factor
    makes the result Gaussian.

    Raises
    ------
    :py:exc:`quhm.errors.MatrixOverflowError` :
        If the entry bound leaves the 64-bit range.
    """
    if isinstance(a, IntMatrix) and isinstance(b, IntMatrix):
        _check_bound(a.max_abs() * b.max_abs(), "kron")
        return _narrowest(a, b)(np.kron(a.entries, b.entries))
    ar, ai = _parts(a)
    br, bi = _parts(b)
    _check_bound(2 * a.max_abs() * b.max_abs(), "kron")
    return GaussMatrix(np.kron(ar, br) - np.kron(ai, bi), np.kron(ar, bi) + np.kron(ai, br))


def _check_inner(a: AnyMatrix, b_rows: int, a_cols: int, what: str) -> None:
    if a_cols != b_rows:
        raise MatrixShapeError(f"{what}: inner dimensions {a_cols} and {b_rows} differ")


def gram(a: AnyMatrix, b: AnyMatrix) -> AnyMatrix:
    """
    ``a @ b.T`` for real matrices, ``a @ b*`` (conjugate transpose of the second argument)
    as soon as one of them is Gaussian.

    Raises
    ------
    :py:exc:`quhm.errors.MatrixShapeError` :
        If the column counts differ.
    :py:exc:`quhm.errors.MatrixOverflowError` :
        If the entry bound leaves the 64-bit range.
    """
    if isinstance(a, IntMatrix) and isinstance(b, IntMatrix):
        _check_inner(a, b.cols, a.cols, "gram")
        return IntMatrix(_product(a.entries, b.entries.T))
    ar, ai = _parts(a)
    br, bi = _parts(b)
    _check_inner(a, br.shape[1], ar.shape[1], "gram")
    _check_bound(2 * ar.shape[1] * a.max_abs() * b.max_abs(), "gram")
    # (ar + i ai)(br - i bi)^T
    re = _product(ar, br.T) + _product(ai, bi.T)
    im = _product(ai, br.T) - _product(ar, bi.T)
    return GaussMatrix(re, im)


def matmul(a: AnyMatrix, b: AnyMatrix) -> AnyMatrix:
    """
    Plain product ``a @ b``, exact, with the same overflow discipline as :py:func:`gram`.
    """
    if isinstance(a, IntMatrix) and isinstance(b, IntMatrix):
        _check_inner(a, b.rows, a.cols, "matmul")
        return IntMatrix(_product(a.entries, b.entries))
    ar, ai = _parts(a)
    br, bi = _parts(b)
    _check_inner(a, br.shape[0], ar.shape[1], "matmul")
    _check_bound(2 * ar.shape[1] * a.max_abs() * b.max_abs(), "matmul")
    return GaussMatrix(
        _product(ar, br) - _product(ai, bi),
        _product(ar, bi) + _product(ai, br),
    )


def scalar_combine(c1: Scalar, m1: AnyMatrix, c2: Scalar, m2: AnyMatrix) -> AnyMatrix:
    """
    ``c1*m1 + c2*m2`` exactly.

    Scalars are integers or Gaussian integers given as ``(re, im)``; :py:data:`I_UNIT` is
    ``i``. The result is Gaussian when a scalar or a matrix is.

    Raises
    ------
    :py:exc:`quhm.errors.MatrixShapeError` :
        If the shapes differ.
    :py:exc:`quhm.errors.MatrixOverflowError` :
        If the entry bound leaves the 64-bit range.
    """
    if m1.shape != m2.shape:
        raise MatrixShapeError(f"Cannot combine shapes {m1.shape} and {m2.shape}")
    (a1, b1), (a2, b2) = _scalar_parts(c1), _scalar_parts(c2)
    bound = (abs(a1) + abs(b1)) * m1.max_abs() + (abs(a2) + abs(b2)) * m2.max_abs()
    _check_bound(bound, "scalar_combine")
    if isinstance(m1, IntMatrix) and isinstance(m2, IntMatrix) and not (b1 or b2):
        return IntMatrix(a1 * m1.entries + a2 * m2.entries)
    r1, i1 = _parts(m1)
    r2, i2 = _parts(m2)
    return GaussMatrix(
        a1 * r1 - b1 * i1 + a2 * r2 - b2 * i2,
        a1 * i1 + b1 * r1 + a2 * i2 + b2 * r2,
    )


def total_sum(m: AnyMatrix) -> Scalar:
    """
    S(M), the sum of all entries: an int, or ``(re, im)`` for a Gaussian matrix.
    """
    if isinstance(m, IntMatrix):
        return int(m.entries.sum(dtype=object))
    return int(m.re.sum(dtype=object)), int(m.im.sum(dtype=object))


def row_sums(m: AnyMatrix) -> typing.List[Scalar]:
    """
    S(R_i) for every row, exact.
    """
    if isinstance(m, IntMatrix):
        return [int(v) for v in m.entries.sum(axis=1, dtype=object)]
    return [
        (int(a), int(b))
        for a, b in zip(m.re.sum(axis=1, dtype=object), m.im.sum(axis=1, dtype=object))
    ]


def first_difference(
    m1: AnyMatrix, m2: AnyMatrix
) -> typing.Optional[typing.Tuple[int, int]]:
    """
    First coordinate, in row-major order, where two equally shaped matrices differ.
    """
    if m1.shape != m2.shape:
        raise MatrixShapeError(f"Cannot compare shapes {m1.shape} and {m2.shape}")
    r1, i1 = _parts(m1)
    r2, i2 = _parts(m2)
    diff = (r1 != r2) | (i1 != i2)
    if not diff.any():
        return None
    i, j = (int(v) for v in np.argwhere(diff)[0])
    return i, j


def max_deviation(m1: AnyMatrix, m2: AnyMatrix) -> int:
    """
    Largest ``|re| + |im|`` of the entrywise difference.
    """
    r1, i1 = _parts(m1)
    r2, i2 = _parts(m2)
    return int((np.abs(r1 - r2) + np.abs(i1 - i2)).max())


def scaled_identity(c: int, n: int) -> IntMatrix:
    return IntMatrix(c * np.eye(n, dtype=np.int64))
