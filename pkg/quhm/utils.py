import typing

import sympy

from quhm.errors import NotAPrimePowerError, OrderCapExceededError, ParameterError


def prime_power(q: int) -> typing.Tuple[int, int]:
    """
    Split a prime power into its prime and exponent.

    Parameters
    ----------
    q : :py:class:`int`
        The number to decompose, must be at least 2.

    Returns
    -------
    Tuple of :py:class:`int` :
        ``(p, e)`` with ``q == p ** e``.

    Raises
    ------
    :py:exc:`NotAPrimePowerError` :
        If ``q`` has more than one prime factor, with the factorization as evidence.
    :py:exc:`ParameterError` :
        If ``q`` is smaller than 2.
    """
    if q < 2:
        raise ParameterError(f"{q} is not a prime power")
    factors: typing.Dict[int, int] = {int(p): int(e) for p, e in sympy.factorint(q).items()}
    if len(factors) != 1:
        raise NotAPrimePowerError(q, factors)
    ((p, e),) = factors.items()
    return p, e


def is_prime_power(q: int) -> bool:
    """
    Whether ``q`` is a prime power. Never raises.
    """
    try:
        prime_power(q)
    except ParameterError:
        return False
    return True


def is_prime(n: int) -> bool:
    """
    Whether ``n`` is prime, decided by :py:func:`sympy.isprime`.
    """
    return bool(sympy.isprime(n))


def prime_powers_up_to(limit: int, *, odd: bool = False) -> typing.List[int]:
    """
    All prime powers ``2 <= q <= limit``, in increasing order.
    """
    return [q for q in range(2, limit + 1) if (not odd or q % 2) and is_prime_power(q)]


def check_order(order: int, cap: int) -> int:
    """
    Refuse an order above the cap.

    Raises
    ------
    :py:exc:`OrderCapExceededError` :
        If ``order > cap``.
    """
    if order > cap:
        raise OrderCapExceededError(order, cap)
    return order


def digits(value: int, base: int, length: int) -> typing.Tuple[int, ...]:
    """
    The ``length`` base-``base`` digits of ``value``, least significant first.
    """
    out = []
    for _ in range(length):
        value, digit = divmod(value, base)
        out.append(digit)
    return tuple(out)


def from_digits(values: typing.Sequence[int], base: int) -> int:
    """
    Inverse of :py:func:`digits`.
    """
    total = 0
    for digit in reversed(values):
        total = total * base + digit
    return total


def parse_factorization(text: str) -> typing.List[int]:
    """
    Parse a ``--factorization`` value such as ``"3,3,3"``.

    Raises
    ------
    :py:exc:`ParameterError` :
        If any part is not an integer of at least 1.
    """
    try:
        dims = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise ParameterError(f"Invalid factorization '{text}'") from e
    if not dims or any(dim < 1 for dim in dims):
        raise ParameterError(f"Invalid factorization '{text}'")
    return dims
