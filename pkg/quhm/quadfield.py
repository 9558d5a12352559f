"""
Exact arithmetic in the imaginary quadratic field Q(sqrt(-q)).

Scalars are :py:class:`QuadComplex` values ``(a + b sqrt(-q)) / d`` and matrices are
:py:class:`QuadMatrix` values ``(X + Y sqrt(-q)) / d`` with integer matrices ``X`` and ``Y``.
Both are kept in lowest terms with ``d > 0``.
"""
import itertools
import math
import typing
from fractions import Fraction

import numpy as np

from quhm.errors import MatrixShapeError, ParameterError
from quhm.exactmat import IntMatrix

Rational = typing.Union[int, Fraction]


def _gcd_all(values: typing.Iterable[int]) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, int(v))
        if g == 1:
            break
    return g


class QuadComplex:
    """
    The number ``(a + b sqrt(-q)) / d``.

    Parameters
    ----------
    a, b : :py:class:`int`
        Rational and radical numerators.
    d : :py:class:`int`
        Non-zero denominator. Normalized to be positive and coprime to ``gcd(a, b)``.
    q : :py:class:`int`
        The radicand, positive.

    Raises
    ------
    :py:exc:`quhm.errors.ParameterError` :
        If ``d`` is zero or ``q`` is not positive.
    """

    __slots__ = ("a", "b", "d", "q")

    a: int
    b: int
    d: int
    q: int

    def __init__(self, a: int, b: int = 0, d: int = 1, *, q: int) -> None:
        if d == 0:
            raise ParameterError("Zero denominator")
        if q < 1:
            raise ParameterError(f"The radicand must be positive, got {q}")
        if d < 0:
            a, b, d = -a, -b, -d
        g = math.gcd(math.gcd(a, b), d)
        self.a, self.b, self.d, self.q = a // g, b // g, d // g, q

    @classmethod
    def from_rational(cls, value: Rational, *, q: int) -> "QuadComplex":
        value = Fraction(value)
        return cls(value.numerator, 0, value.denominator, q=q)

    @classmethod
    def sqrt_minus_q(cls, q: int) -> "QuadComplex":
        return cls(0, 1, 1, q=q)

    def __repr__(self) -> str:  # pragma: no cover
        return f"<QuadComplex {self}>"

    def __str__(self) -> str:
        radical = f"sqrt(-{self.q})"
        if self.b == 0:
            numerator = str(self.a)
        elif self.a == 0:
            numerator = {1: radical, -1: f"-{radical}"}.get(self.b, f"{self.b}*{radical}")
        else:
            sign = "+" if self.b > 0 else "-"
            coefficient = "" if abs(self.b) == 1 else f"{abs(self.b)}*"
            numerator = f"({self.a}{sign}{coefficient}{radical})"
        return numerator if self.d == 1 else f"{numerator}/{self.d}"

    def _coerce(self, other: object) -> "QuadComplex":
        if isinstance(other, QuadComplex):
            if other.q != self.q:
                raise ParameterError(f"Cannot mix sqrt(-{self.q}) and sqrt(-{other.q})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadComplex.from_rational(other, q=self.q)
        raise TypeError(f"Cannot combine QuadComplex with {type(other).__name__}")

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QuadComplex.from_rational(other, q=self.q)
        if not isinstance(other, QuadComplex):
            return NotImplemented
        return (self.a, self.b, self.d, self.q) == (other.a, other.b, other.d, other.q)

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.d, self.q))

    def __add__(self, other: object) -> "QuadComplex":
        o = self._coerce(other)
        return QuadComplex(
            self.a * o.d + o.a * self.d, self.b * o.d + o.b * self.d, self.d * o.d, q=self.q
        )

    __radd__ = __add__

    def __neg__(self) -> "QuadComplex":
        return QuadComplex(-self.a, -self.b, self.d, q=self.q)

    def __sub__(self, other: object) -> "QuadComplex":
        return self + (-self._coerce(other))

    def __rsub__(self, other: object) -> "QuadComplex":
        return self._coerce(other) - self

    def __mul__(self, other: object) -> "QuadComplex":
        o = self._coerce(other)
        return QuadComplex(
            self.a * o.a - self.q * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.d * o.d,
            q=self.q,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadComplex":
        return QuadComplex(self.a, -self.b, self.d, q=self.q)

    def norm(self) -> Fraction:
        """
        ``|z|^2 = (a^2 + q b^2) / d^2``.
        """
        return Fraction(self.a * self.a + self.q * self.b * self.b, self.d * self.d)

    def inverse(self) -> "QuadComplex":
        """
        Raises
        ------
        :py:exc:`ZeroDivisionError` :
            For zero.
        """
        if self.is_zero:
            raise ZeroDivisionError("QuadComplex zero has no inverse")
        n = self.a * self.a + self.q * self.b * self.b
        return QuadComplex(self.a * self.d, -self.b * self.d, n, q=self.q)

    def __truediv__(self, other: object) -> "QuadComplex":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other: object) -> "QuadComplex":
        return self._coerce(other) * self.inverse()

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def to_complex(self) -> complex:
        return complex(self.a, self.b * math.sqrt(self.q)) / self.d


def invert(
    matrix: typing.Sequence[typing.Sequence[QuadComplex]],
) -> typing.List[typing.List[QuadComplex]]:
    """
    Inverse of a small square matrix over Q(sqrt(-q)) by Gauss-Jordan elimination.

    Raises
    ------
    :py:exc:`quhm.errors.ParameterError` :
        If the matrix is singular.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix) or not n:
        raise MatrixShapeError("Only non-empty square matrices can be inverted")
    q = matrix[0][0].q
    one = QuadComplex(1, q=q)
    zero = QuadComplex(0, q=q)
    work = [
        list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(matrix)
    ]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not work[r][col].is_zero), None)
        if pivot is None:
            raise ParameterError("Singular matrix")
        work[col], work[pivot] = work[pivot], work[col]
        factor = work[col][col].inverse()
        work[col] = [v * factor for v in work[col]]
        for r in range(n):
            if r != col and not work[r][col].is_zero:
                scale = work[r][col]
                work[r] = [v - scale * p for v, p in zip(work[r], work[col])]
    return [row[n:] for row in work]


class QuadMatrix:
    """
    A dense matrix ``(X + Y sqrt(-q)) / d`` over Q(sqrt(-q)).

    ``X`` and ``Y`` are object arrays of Python integers, so no product can overflow.
    Values are reduced by the gcd of every numerator entry and ``d``.
    """

    x: np.ndarray
    y: np.ndarray
    d: int
    q: int

    def __init__(self, x: typing.Any, y: typing.Any, d: int = 1, *, q: int) -> None:
        x = np.array(x, dtype=object)
        y = np.array(y, dtype=object)
        if x.shape != y.shape or x.ndim != 2:
            raise MatrixShapeError(f"Parts of shapes {x.shape} and {y.shape}")
        if d == 0:
            raise ParameterError("Zero denominator")
        if d < 0:
            x, y, d = -x, -y, -d
        g = _gcd_all(itertools.chain(x.flat, y.flat, (d,)))
        if g > 1:
            x, y, d = x // g, y // g, d // g
        self.x, self.y, self.d, self.q = x, y, int(d), q

    @classmethod
    def from_int(cls, matrix: typing.Union[IntMatrix, np.ndarray], *, q: int) -> "QuadMatrix":
        entries = matrix.entries if isinstance(matrix, IntMatrix) else np.asarray(matrix)
        x = entries.astype(object)
        return cls(x, np.zeros_like(x), q=q)

    @classmethod
    def from_entries(
        cls, rows: typing.Sequence[typing.Sequence[QuadComplex]]
    ) -> "QuadMatrix":
        q = rows[0][0].q
        d = 1
        for row in rows:
            for value in row:
                d = d * value.d // math.gcd(d, value.d)
        x = [[value.a * (d // value.d) for value in row] for row in rows]
        y = [[value.b * (d // value.d) for value in row] for row in rows]
        return cls(x, y, d, q=q)

    @classmethod
    def zeros(cls, rows: int, cols: int, *, q: int) -> "QuadMatrix":
        x = np.zeros((rows, cols), dtype=object)
        return cls(x, x.copy(), q=q)

    def __repr__(self) -> str:  # pragma: no cover
        return f"<QuadMatrix {self.shape[0]}x{self.shape[1]} q={self.q}>"

    @property
    def shape(self) -> typing.Tuple[int, int]:
        return typing.cast(typing.Tuple[int, int], self.x.shape)

    def __getitem__(self, index: typing.Tuple[int, int]) -> QuadComplex:
        return QuadComplex(int(self.x[index]), int(self.y[index]), self.d, q=self.q)

    def entries(self) -> typing.List[typing.List[QuadComplex]]:
        rows, cols = self.shape
        return [[self[i, j] for j in range(cols)] for i in range(rows)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuadMatrix):
            return NotImplemented
        return (
            self.q == other.q
            and self.d == other.d
            and self.shape == other.shape
            and bool(np.array_equal(self.x, other.x) and np.array_equal(self.y, other.y))
        )

    __hash__ = None  # type: ignore[assignment]

    def _same_field(self, other: "QuadMatrix") -> None:
        if other.q != self.q:
            raise ParameterError(f"Cannot mix sqrt(-{self.q}) and sqrt(-{other.q})")

    def __add__(self, other: "QuadMatrix") -> "QuadMatrix":
        self._same_field(other)
        if self.shape != other.shape:
            raise MatrixShapeError(f"Cannot add shapes {self.shape} and {other.shape}")
        return QuadMatrix(
            self.x * other.d + other.x * self.d,
            self.y * other.d + other.y * self.d,
            self.d * other.d,
            q=self.q,
        )

    def __sub__(self, other: "QuadMatrix") -> "QuadMatrix":
        return self + other.scale(QuadComplex(-1, q=self.q))

    def scale(self, c: QuadComplex) -> "QuadMatrix":
        """
        ``c`` times this matrix.
        """
        return QuadMatrix(
            c.a * self.x - self.q * c.b * self.y,
            c.a * self.y + c.b * self.x,
            c.d * self.d,
            q=self.q,
        )

    def __matmul__(self, other: "QuadMatrix") -> "QuadMatrix":
        self._same_field(other)
        if self.shape[1] != other.shape[0]:
            raise MatrixShapeError(f"Cannot multiply shapes {self.shape} and {other.shape}")
        return QuadMatrix(
            self.x.dot(other.x) - self.q * self.y.dot(other.y),
            self.x.dot(other.y) + self.y.dot(other.x),
            self.d * other.d,
            q=self.q,
        )

    def kron(self, other: "QuadMatrix") -> "QuadMatrix":
        self._same_field(other)
        return QuadMatrix(
            np.kron(self.x, other.x) - self.q * np.kron(self.y, other.y),
            np.kron(self.x, other.y) + np.kron(self.y, other.x),
            self.d * other.d,
            q=self.q,
        )

    @property
    def is_zero(self) -> bool:
        return not (self.x.any() or self.y.any())

