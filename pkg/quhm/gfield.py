"""
Finite fields GF(p^e) with a canonical element ordering and the quadratic character.

Elements are coefficient vectors over the basis ``1, x, ..., x^(e-1)``. Element ``k`` of the
canonical ordering has the base-p digits of ``k`` as coefficients, least significant digit
first, so the additive group acts on indices as coordinate-wise cyclic shifts of Z_p^e.
"""
import functools
import itertools
import logging
import typing

import numpy as np
import pydantic

from quhm.errors import ParameterError
from quhm.utils import digits, from_digits, is_prime, prime_power

log = logging.getLogger(__name__)

Poly = typing.Tuple[int, ...]
FieldOp = typing.Literal["add", "sub", "mul", "neg"]


def _trim(a: typing.Sequence[int]) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _poly_mod(a: typing.Sequence[int], modulus: Poly, p: int) -> Poly:
    """Remainder of ``a`` by a monic ``modulus`` over GF(p)."""
    rem = [c % p for c in a]
    deg = len(modulus) - 1
    for top in range(len(rem) - 1, deg - 1, -1):
        factor = rem[top]
        if factor:
            shift = top - deg
            for i, c in enumerate(modulus):
                rem[shift + i] = (rem[shift + i] - factor * c) % p
    return _trim(rem[:deg])


def _poly_mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _monic_polynomials(degree: int, p: int) -> typing.Iterator[Poly]:
    """Monic polynomials of a degree, low coefficients as the least significant digits."""
    for k in range(p**degree):
        yield digits(k, p, degree) + (1,)


def is_irreducible(modulus: Poly, p: int) -> bool:
    """
    Trial division by every monic polynomial of degree at most ``deg / 2``.
    """
    degree = len(modulus) - 1
    if degree < 1 or modulus[-1] != 1:
        return False
    for d in range(1, degree // 2 + 1):
        for divisor in _monic_polynomials(d, p):
            if not _poly_mod(modulus, divisor, p):
                return False
    return True


@functools.lru_cache(maxsize=None)
def smallest_irreducible(p: int, e: int) -> Poly:
    """
    The first monic irreducible polynomial of degree ``e`` over GF(p), enumerating the
    coefficients below the leading one as base-p digits, constant term least significant.
    """
    for candidate in _monic_polynomials(e, p):
        if is_irreducible(candidate, p):
            return candidate
    raise ParameterError(f"No irreducible polynomial of degree {e} over GF({p})")  # unreachable


class FieldElement(pydantic.BaseModel):
    """
    An element of GF(p^e), as ``e`` residues for the basis ``1, x, ..., x^(e-1)``.
    """

    model_config = pydantic.ConfigDict(frozen=True)

    coeffs: typing.Tuple[int, ...]

    def __str__(self) -> str:
        terms = []
        for power, c in reversed(list(enumerate(self.coeffs))):
            if not c:
                continue
            if power == 0:
                terms.append(str(c))
            else:
                base = "x" if power == 1 else f"x^{power}"
                terms.append(base if c == 1 else f"{c}{base}")
        return "+".join(terms) or "0"

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)


class FieldSpec(pydantic.BaseModel):
    """
    Description of GF(q), q = p^e.

    Use :py:func:`build_field` rather than building one by hand: it picks the canonical
    modulus. A hand-built spec is still validated, including irreducibility of the modulus.

    For ``e == 1`` the modulus is the placeholder ``(0, 1)`` and is never consulted.
    """

    model_config = pydantic.ConfigDict(frozen=True)

    p: int
    e: int = pydantic.Field(ge=1)
    q: int
    modulus: Poly

    @pydantic.model_validator(mode="after")
    def _check_field(self) -> "FieldSpec":
        if not is_prime(self.p):
            raise ValueError(f"Characteristic {self.p} is not prime")
        if self.q != self.p**self.e:
            raise ValueError(f"Order {self.q} is not {self.p}^{self.e}")
        if len(self.modulus) != self.e + 1 or self.modulus[-1] != 1:
            raise ValueError("Modulus must be monic of degree e")
        if any(not 0 <= c < self.p for c in self.modulus):
            raise ValueError("Modulus coefficients must be reduced mod p")
        if self.e > 1 and not is_irreducible(self.modulus, self.p):
            raise ValueError(f"Modulus {self.modulus} is reducible over GF({self.p})")
        return self

    def __repr__(self) -> str:  # pragma: no cover
        return f"<FieldSpec GF({self.q}) p={self.p} e={self.e} modulus={self.modulus}>"

    # Internal tuple arithmetic, elements as full-length coefficient tuples.

    def _pad(self, a: typing.Sequence[int]) -> Poly:
        return tuple(a) + (0,) * (self.e - len(a))

    def _add(self, a: Poly, b: Poly) -> Poly:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def _sub(self, a: Poly, b: Poly) -> Poly:
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def _neg(self, a: Poly) -> Poly:
        return tuple(-x % self.p for x in a)

    def _mul(self, a: Poly, b: Poly) -> Poly:
        if self.e == 1:
            return ((a[0] * b[0]) % self.p,)
        return self._pad(_poly_mod(_poly_mul(_trim(a), _trim(b), self.p), self.modulus, self.p))

    def _pow(self, a: Poly, exponent: int) -> Poly:
        result = self._pad((1,))
        base = a
        while exponent:
            if exponent & 1:
                result = self._mul(result, base)
            base = self._mul(base, base)
            exponent >>= 1
        return result

    def element(self, index: int) -> FieldElement:
        """
        The element at position ``index`` of the canonical ordering.
        """
        if not 0 <= index < self.q:
            raise ParameterError(f"Index {index} outside GF({self.q})")
        return FieldElement(coeffs=digits(index, self.p, self.e))

    def index(self, x: FieldElement) -> int:
        """
        Position of ``x`` in the canonical ordering.
        """
        self.validate_element(x)
        return from_digits(x.coeffs, self.p)

    def validate_element(self, x: FieldElement) -> FieldElement:
        if len(x.coeffs) != self.e or any(not 0 <= c < self.p for c in x.coeffs):
            raise ParameterError(f"{x.coeffs} is not a reduced element of GF({self.q})")
        return x

    @property
    def zero(self) -> FieldElement:
        return self.element(0)

    @property
    def one(self) -> FieldElement:
        return self.element(1)

    def add(self, x: FieldElement, y: FieldElement) -> FieldElement:
        return FieldElement(coeffs=self._add(x.coeffs, y.coeffs))

    def sub(self, x: FieldElement, y: FieldElement) -> FieldElement:
        return FieldElement(coeffs=self._sub(x.coeffs, y.coeffs))

    def neg(self, x: FieldElement) -> FieldElement:
        return FieldElement(coeffs=self._neg(x.coeffs))

    def mul(self, x: FieldElement, y: FieldElement) -> FieldElement:
        return FieldElement(coeffs=self._mul(x.coeffs, y.coeffs))

    def pow(self, x: FieldElement, exponent: int) -> FieldElement:
        return FieldElement(coeffs=self._pow(x.coeffs, exponent))


@functools.lru_cache(maxsize=None)
def build_field(q: int) -> FieldSpec:
    """
    Build GF(q) with the canonical modulus.

    Parameters
    ----------
    q : :py:class:`int`
        The field order, a prime power.

    Returns
    -------
    :py:class:`FieldSpec` :
        A deterministic spec. The modulus is the first monic irreducible polynomial of
        degree ``e`` in base-p digit order.

    Raises
    ------
    :py:exc:`quhm.errors.NotAPrimePowerError` :
        If ``q`` is not a prime power.
    """
    p, e = prime_power(q)
    modulus: Poly = (0, 1) if e == 1 else smallest_irreducible(p, e)
    log.debug("GF(%d): p=%d e=%d modulus=%s", q, p, e, modulus)
    return FieldSpec(p=p, e=e, q=q, modulus=modulus)


def enumerate_elements(spec: FieldSpec) -> typing.List[FieldElement]:
    """
    All elements of the field in canonical order: element ``k`` has the base-p digits of
    ``k`` as coefficients. Element 0 is the zero of the field.
    """
    return [FieldElement(coeffs=coeffs) for coeffs in _coefficient_tuples(spec)]


def _coefficient_tuples(spec: FieldSpec) -> typing.Iterator[Poly]:
    # itertools.product varies its last position fastest; reverse to put the constant
    # term in the least significant place.
    for reversed_digits in itertools.product(range(spec.p), repeat=spec.e):
        yield tuple(reversed(reversed_digits))


def field_arith(
    spec: FieldSpec,
    op: FieldOp,
    x: FieldElement,
    y: typing.Optional[FieldElement] = None,
) -> FieldElement:
    """
    Polynomial arithmetic modulo ``(p, modulus)``.

    Parameters
    ----------
    op : :py:class:`str`
        One of ``"add"``, ``"sub"``, ``"mul"`` and ``"neg"``. ``y`` is ignored by ``"neg"``.
    """
    spec.validate_element(x)
    if op == "neg":
        return spec.neg(x)
    if y is None:
        raise ParameterError(f"Operation '{op}' needs two operands")
    spec.validate_element(y)
    if op == "add":
        return spec.add(x, y)
    if op == "sub":
        return spec.sub(x, y)
    if op == "mul":
        return spec.mul(x, y)
    raise ParameterError(f"Unknown field operation '{op}'")


def quadratic_character(spec: FieldSpec, x: FieldElement) -> int:
    """
    The quadratic character of ``x``: 0 for zero, +1 for a nonzero square, -1 otherwise.

    Computed as ``x^((q-1)/2)`` by square-and-multiply.

    Raises
    ------
    :py:exc:`quhm.errors.ParameterError` :
        If the field has even order.
    """
    if spec.q % 2 == 0:
        raise ParameterError(f"The quadratic character needs an odd order, got {spec.q}")
    spec.validate_element(x)
    if x.is_zero:
        return 0
    power = spec._pow(x.coeffs, (spec.q - 1) // 2)
    if power == spec._pad((1,)):
        return 1
    if power == spec._pad((spec.p - 1,)):
        return -1
    raise ParameterError(f"{x} has power {power} outside of {{1, -1}}")  # pragma: no cover


def squares(spec: FieldSpec) -> typing.Set[int]:
    """
    Canonical indices of the nonzero squares, by enumeration.
    """
    return {
        from_digits(spec._mul(a, a), spec.p)
        for a in _coefficient_tuples(spec)
        if any(a)
    }


@functools.lru_cache(maxsize=None)
def character_table(q: int) -> np.ndarray:
    """
    The quadratic character of every element of GF(q), indexed canonically.
    """
    spec = build_field(q)
    table = np.array(
        [quadratic_character(spec, element) for element in enumerate_elements(spec)],
        dtype=np.int64,
    )
    table.setflags(write=False)
    return table


def digit_matrix(spec: FieldSpec) -> np.ndarray:
    """
    A ``q x e`` array of the coefficient digits of every element, canonical order.
    """
    index = np.arange(spec.q, dtype=np.int64)
    return np.stack([(index // spec.p**k) % spec.p for k in range(spec.e)], axis=1)


def difference_indices(spec: FieldSpec) -> np.ndarray:
    """
    A ``q x q`` array whose entry ``(i, j)`` is the canonical index of ``a_i - a_j``.
    """
    dig = digit_matrix(spec)
    diff = (dig[:, None, :] - dig[None, :, :]) % spec.p
    weights = spec.p ** np.arange(spec.e, dtype=np.int64)
    return (diff * weights).sum(axis=2)
