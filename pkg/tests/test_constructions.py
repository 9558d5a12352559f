import unittest

import numpy as np

from quhm.config import Settings
from quhm.constructions import (
    QuhMatrix,
    SeedPair,
    assemble_quaternary_hadamard,
    assemble_quh,
    construct_cd,
    construct_ja,
    construct_quh,
    construct_seeded,
    hadamard_from_pair,
    iterate_ja,
)
from quhm.cores import CoreMatrix, is_multicirculant, jacobsthal, paley_skew_hadamard
from quhm.errors import (
    CoreKindError,
    MatrixEntryError,
    OrderCapExceededError,
    ParameterError,
    VerificationError,
)
from quhm.exactmat import IntMatrix, SignMatrix, circulant, gram, ones, scaled_identity
from quhm.verify import verify_amicable, verify_pair_identity, verify_unit_hadamard


def random_hadamard_seed(rng: np.random.Generator, k: int) -> SignMatrix:
    """
    A Sylvester Hadamard matrix of order 2^k with random row and column signs and orders.
    """
    h = np.array([[1]], dtype=np.int64)
    for _ in range(k):
        h = np.block([[h, h], [h, -h]])
    n = h.shape[0]
    rows = rng.permutation(n)
    cols = rng.permutation(n)
    signs_r = rng.choice([-1, 1], size=n)
    signs_c = rng.choice([-1, 1], size=n)
    return SignMatrix(h[rows][:, cols] * signs_r[:, None] * signs_c[None, :])


class TestJARecursion(unittest.TestCase):
    """
    Test the (J_m, A_m) recursion on skew cores.
    """

    def test_first_level(self):
        """
        Check that J_1 = J_3 and A_1 = circ(1, -1, 1) for q = 3.
        """
        j, a = construct_ja(jacobsthal(3), 1)
        self.assertEqual(j, ones(3))
        self.assertEqual(a, circulant([1, -1, 1]))

    def test_depth_zero(self):
        """
        Check that depth 0 gives the pair ([1], [1]).
        """
        j, a = construct_ja(jacobsthal(7), 0)
        self.assertEqual(j.to_list(), [[1]])
        self.assertEqual(a.to_list(), [[1]])

    def test_identities(self):
        """
        Check amicability and the pair identity on a grid of cores and depths.
        """
        for q, m_max in ((3, 5), (7, 3), (11, 2), (19, 2), (23, 2), (27, 2)):
            core = jacobsthal(q)
            for m in range(m_max + 1):
                j, a = construct_ja(core, m, verify=False)
                self.assertEqual(j.order, q**m)
                self.assertTrue(verify_amicable(j, a).passed, (q, m))
                self.assertTrue(verify_pair_identity(j, a, q).passed, (q, m))

    def test_multicirculant_structure(self):
        """
        Check that J_m and A_m are multicirculant for the additive group of GF(q)^m.
        """
        grid = ((3, 5, [3]), (7, 3, [7]), (11, 2, [11]), (19, 2, [19]), (23, 2, [23]))
        for q, m_max, dims in grid + ((27, 2, [3, 3, 3]),):
            core = jacobsthal(q)
            for m in range(1, m_max + 1):
                j, a = construct_ja(core, m, verify=False)
                self.assertTrue(is_multicirculant(j, dims * m), (q, m))
                self.assertTrue(is_multicirculant(a, dims * m), (q, m))

    def test_iterate_stops_at_cap(self):
        """
        Check that iteration stops before the cap is exceeded.
        """
        orders = [j.order for j, _ in iterate_ja(jacobsthal(3), 10, order_cap=100)]
        self.assertEqual(orders, [1, 3, 9, 27, 81])

    def test_symmetric_core_refused(self):
        """
        Check that the recursion needs a skew core.
        """
        with self.assertRaises(CoreKindError):
            construct_ja(jacobsthal(5), 1)

    def test_order_cap(self):
        """
        Check the order cap and its override.
        """
        with self.assertRaises(OrderCapExceededError):
            construct_ja(jacobsthal(3), 7)
        j, _ = construct_ja(jacobsthal(3), 7, settings=Settings(order_cap=2187), verify=False)
        self.assertEqual(j.order, 2187)

    def test_negative_depth(self):
        """
        Check that negative depths are refused.
        """
        self.assertRaises(ParameterError, construct_ja, jacobsthal(3), -1)

    def test_user_core(self):
        """
        Check the recursion from a core given by hand.
        """
        core = CoreMatrix([[0, 1, -1], [-1, 0, 1], [1, -1, 0]])
        quh = construct_quh(core, 3)
        self.assertEqual(quh.n, 27)


class TestQuh(unittest.TestCase):
    """
    Test the QUH assembly.
    """

    def test_orders(self):
        """
        Check QUH(q^m, q) for a few parameters.
        """
        for q, m in ((3, 4), (7, 2), (11, 1)):
            quh = construct_quh(jacobsthal(q), m)
            self.assertEqual((quh.n, quh.q_param, quh.m), (q**m, q, m))
            self.assertTrue(verify_unit_hadamard(quh).passed)

    def test_flipped_entry(self):
        """
        Check that flipping one entry of A_2 breaks the pair identity.
        """
        j, a = construct_ja(jacobsthal(3), 2)
        entries = a.entries.copy()
        entries[4, 7] = -entries[4, 7]
        flipped = IntMatrix(entries)
        self.assertFalse(verify_pair_identity(j, flipped, 3).passed)
        with self.assertRaises(VerificationError) as ctx:
            assemble_quh(j, flipped, 3)
        self.assertFalse(ctx.exception.report.passed)
        unchecked = assemble_quh(j, flipped, 3, check=False)
        self.assertFalse(verify_unit_hadamard(unchecked).passed)

    def test_patterns_must_be_signs(self):
        """
        Check that zero entries are refused in a QUH pattern.
        """
        with self.assertRaises(MatrixEntryError):
            QuhMatrix(IntMatrix([[0]]), IntMatrix([[1]]), 3)

    def test_complex_materialization(self):
        """
        Check that the float view of H is unitary up to scaling on a grid of parameters.
        """
        grid = [(3, m) for m in range(1, 5)] + [(7, 1), (7, 2), (11, 1)]
        for q, m in grid:
            quh = construct_quh(jacobsthal(q), m)
            h = quh.to_complex()
            n = q**m
            self.assertTrue(np.allclose(h @ h.conj().T, n * np.eye(n)), (q, m))
            self.assertTrue(np.allclose(np.abs(h), 1), (q, m))

    def test_order_one(self):
        """
        Check that ([1], [1]) is a QUH(1, q) for every parameter.
        """
        for q in range(1, 10):
            quh = assemble_quh(ones(1), ones(1), q)
            self.assertEqual((quh.n, quh.q_param), (1, q))
            self.assertTrue(np.allclose(np.abs(quh.to_complex()), 1))


class TestSeeded(unittest.TestCase):
    """
    Test the seeded recursion.
    """

    def test_trivial_seed(self):
        """
        Check that the trivial seed reproduces (J_m, A_m).
        """
        core = jacobsthal(3)
        self.assertEqual(
            construct_seeded(SeedPair.trivial(3), core, 3), construct_ja(core, 3)
        )

    def test_pair_seed(self):
        """
        Check that seeding with (J_k, A_k) shifts the depth.
        """
        core = jacobsthal(7)
        j1, a1 = construct_ja(core, 1)
        x, y = construct_seeded(SeedPair(j1, a1, 7), core, 1)
        self.assertEqual((x, y), construct_ja(core, 2))

    def test_random_hadamard_seeds(self):
        """
        Check seeds (H, H) built from randomly signed and permuted Hadamard matrices.
        """
        rng = np.random.default_rng(20240917)
        for q in (3, 7):
            core = jacobsthal(q)
            for k in (1, 2, 3):
                h = random_hadamard_seed(rng, k)
                seed = SeedPair(h, h, q)
                x, y = construct_seeded(seed, core, 2, verify=False)
                n = 2**k * q**2
                self.assertEqual(x.order, n)
                self.assertTrue(verify_amicable(x, y).passed)
                self.assertTrue(verify_pair_identity(x, y, q).passed)

    def test_bad_seeds(self):
        """
        Check that invalid seeds and mismatched parameters are refused.
        """
        h = SignMatrix([[1, 1], [1, -1]])
        with self.assertRaises(VerificationError):
            SeedPair(h, ones(2), 3)
        with self.assertRaises(ParameterError):
            construct_seeded(SeedPair.trivial(7), jacobsthal(3), 1)


class TestComplexPairs(unittest.TestCase):
    """
    Test (C_m, D_m) and quaternary Hadamard matrices from symmetric cores.
    """

    def test_cd_identities(self):
        """
        Check the Gaussian pair identities.
        """
        for q, m in ((5, 2), (9, 1), (13, 1)):
            c, d = construct_cd(jacobsthal(q), m)
            self.assertEqual(c.order, q**m)
            self.assertTrue(c.is_quaternary() and d.is_quaternary())
            self.assertTrue(verify_amicable(c, d).passed)
            self.assertTrue(verify_pair_identity(c, d, q).passed)

    def test_quaternary_hadamard_orders(self):
        """
        Check the orders q^m (q + 1) and the unit Hadamard property.
        """
        cases = {
            (5, 0): 6,
            (5, 1): 30,
            (5, 2): 150,
            (5, 3): 750,
            (9, 0): 10,
            (9, 1): 90,
            (9, 2): 810,
            (13, 0): 14,
            (13, 1): 182,
        }
        for (q, m), order in cases.items():
            matrix = assemble_quaternary_hadamard(jacobsthal(q), m)
            self.assertEqual(matrix.order, order)
            self.assertTrue(matrix.is_quaternary())
            self.assertEqual(gram(matrix, matrix), scaled_identity(order, order).to_gauss())

    def test_skew_core_refused(self):
        """
        Check that the complex variant needs a symmetric core.
        """
        self.assertRaises(CoreKindError, construct_cd, jacobsthal(3), 1)
        self.assertRaises(CoreKindError, assemble_quaternary_hadamard, jacobsthal(7), 1)


class TestRealHadamard(unittest.TestCase):
    """
    Test real Hadamard matrices from sign pairs.
    """

    def test_from_ja(self):
        """
        Check I (x) J_m + W (x) A_m for q = 3 and 7.
        """
        for q, m in ((3, 1), (3, 3), (7, 1)):
            j, a = construct_ja(jacobsthal(q), m)
            h = hadamard_from_pair(j, a, paley_skew_hadamard(q))
            n = (q + 1) * q**m
            self.assertEqual(gram(h, h), scaled_identity(n, n))

    def test_wrong_parameter(self):
        """
        Check that the pair must match the skew Hadamard order.
        """
        j, a = construct_ja(jacobsthal(3), 1)
        with self.assertRaises(VerificationError):
            hadamard_from_pair(j, a, paley_skew_hadamard(7))
