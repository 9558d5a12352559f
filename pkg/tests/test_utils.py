import unittest

from quhm.errors import NotAPrimePowerError, OrderCapExceededError, ParameterError
from quhm.utils import (
    check_order,
    digits,
    from_digits,
    is_prime,
    is_prime_power,
    parse_factorization,
    prime_power,
    prime_powers_up_to,
)


class TestPrimePowers(unittest.TestCase):
    """
    Test prime power helpers.
    """

    def test_split(self):
        """
        Check that prime powers split into prime and exponent.
        """
        self.assertEqual(prime_power(7), (7, 1))
        self.assertEqual(prime_power(27), (3, 3))
        self.assertEqual(prime_power(1024), (2, 10))

    def test_refuse(self):
        """
        Check that composite numbers carry their factorization.
        """
        with self.assertRaises(NotAPrimePowerError) as ctx:
            prime_power(15)
        self.assertEqual(ctx.exception.factors, {3: 1, 5: 1})
        self.assertRaises(ParameterError, prime_power, 1)
        self.assertFalse(is_prime_power(12))
        self.assertTrue(is_prime_power(49))

    def test_predicates(self):
        """
        Check that the predicates answer without raising, even below 2.
        """
        powers = [q for q in range(-1, 12) if is_prime_power(q)]
        self.assertEqual(powers, [2, 3, 4, 5, 7, 8, 9, 11])
        self.assertEqual([n for n in range(-1, 12) if is_prime(n)], [2, 3, 5, 7, 11])

    def test_listing(self):
        """
        Check the list of odd prime powers.
        """
        self.assertEqual(
            prime_powers_up_to(30, odd=True), [3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29]
        )
        self.assertEqual(prime_powers_up_to(9), [2, 3, 4, 5, 7, 8, 9])


class TestHelpers(unittest.TestCase):
    """
    Test digit, cap and factorization helpers.
    """

    def test_digits(self):
        """
        Check that digits are least significant first.
        """
        self.assertEqual(digits(5, 3, 2), (2, 1))
        self.assertEqual(digits(5, 3, 4), (2, 1, 0, 0))
        self.assertEqual(from_digits((2, 1, 0, 0), 3), 5)

    def test_order_cap(self):
        """
        Check that orders above the cap are refused.
        """
        self.assertEqual(check_order(2048, 2048), 2048)
        with self.assertRaises(OrderCapExceededError) as ctx:
            check_order(2187, 2048)
        self.assertEqual((ctx.exception.order, ctx.exception.cap), (2187, 2048))

    def test_factorization(self):
        """
        Check the parser of factorization strings.
        """
        self.assertEqual(parse_factorization("3,3,3"), [3, 3, 3])
        self.assertEqual(parse_factorization("9"), [9])
        self.assertRaises(ParameterError, parse_factorization, "3,x")
        self.assertRaises(ParameterError, parse_factorization, "0,3")
        self.assertRaises(ParameterError, parse_factorization, "")
