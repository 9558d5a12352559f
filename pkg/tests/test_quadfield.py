import unittest
from fractions import Fraction

from quhm.errors import MatrixShapeError, ParameterError
from quhm.quadfield import QuadComplex, QuadMatrix, invert


class TestQuadComplex(unittest.TestCase):
    """
    Test exact numbers of Q(sqrt(-q)).
    """

    def test_normalization(self):
        """
        Check that values are kept in lowest terms with a positive denominator.
        """
        value = QuadComplex(2, 4, -6, q=3)
        self.assertEqual((value.a, value.b, value.d), (-1, -2, 3))
        self.assertEqual(QuadComplex(4, 0, 2, q=7), 2)
        self.assertRaises(ParameterError, QuadComplex, 1, 1, 0, q=3)

    def test_arithmetic(self):
        """
        Check that sqrt(-q) squared is -q and the field operations.
        """
        s = QuadComplex.sqrt_minus_q(7)
        self.assertEqual(s * s, -7)
        w = (QuadComplex(-1, q=7) + s) / 2
        self.assertEqual(str(w), "(-1+sqrt(-7))/2")
        self.assertEqual(w * w.conjugate(), 2)
        self.assertEqual(w.norm(), Fraction(2))
        self.assertEqual(w * w.inverse(), 1)
        self.assertEqual(1 - w, QuadComplex(3, -1, 2, q=7))
        self.assertTrue((w - w).is_zero)
        self.assertTrue(QuadComplex.from_rational(Fraction(3, 4), q=7).is_rational)

    def test_mixed_fields(self):
        """
        Check that values of different fields do not mix.
        """
        with self.assertRaises(ParameterError):
            QuadComplex(1, q=3) + QuadComplex(1, q=7)
        with self.assertRaises(ZeroDivisionError):
            QuadComplex(0, q=3).inverse()

    def test_complex_view(self):
        """
        Check the floating-point view.
        """
        self.assertAlmostEqual(abs(QuadComplex(1, 1, 2, q=3).to_complex()), 1.0)


class TestQuadMatrix(unittest.TestCase):
    """
    Test exact matrices over Q(sqrt(-q)).
    """

    def test_inverse(self):
        """
        Check that a matrix times its inverse is the identity.
        """
        s = QuadComplex.sqrt_minus_q(3)
        one = QuadComplex(1, q=3)
        rows = [[one, s], [s, one]]
        inverse = QuadMatrix.from_entries(invert(rows))
        product = QuadMatrix.from_entries(rows) @ inverse
        self.assertEqual(product, QuadMatrix([[1, 0], [0, 1]], [[0, 0], [0, 0]], q=3))

    def test_singular(self):
        """
        Check that singular and non-square matrices are refused.
        """
        one = QuadComplex(1, q=3)
        with self.assertRaises(ParameterError):
            invert([[one, one], [one, one]])
        with self.assertRaises(MatrixShapeError):
            invert([[one, one]])

    def test_reduction_and_kron(self):
        """
        Check gcd reduction and Kronecker products.
        """
        m = QuadMatrix([[2, 4]], [[0, 2]], 2, q=3)
        self.assertEqual((m.d, m.x.tolist()), (1, [[1, 2]]))
        self.assertEqual(m[0, 1], QuadComplex(2, 1, q=3))
        k = m.kron(QuadMatrix([[1], [1]], [[0], [0]], q=3))
        self.assertEqual(k.shape, (2, 2))
        self.assertTrue((k - k).is_zero)
