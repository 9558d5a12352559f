import typing
import unittest

import numpy as np

from quhm.constructions import (
    QuhMatrix,
    assemble_quaternary_hadamard,
    construct_cd,
    construct_ja,
    construct_quh,
)
from quhm.cores import jacobsthal, verify_core
from quhm.errors import ParameterError
from quhm.exactmat import GaussMatrix, IntMatrix, SignMatrix
from quhm.verify import (
    ExcessValue,
    best_bound,
    butson_exponents,
    butson_parameter_admissible,
    check_excess_lemma,
    excess,
    excess_closed_forms,
    is_regular,
    regular_rows,
    verify_amicable,
    verify_butson,
    verify_gauss_amicable,
    verify_pair_identity,
    verify_unit_hadamard,
)


class TestPairChecks(unittest.TestCase):
    """
    Test amicability and the pair identity.
    """

    def test_witness(self):
        """
        Check that a failing amicability check points at a coordinate.
        """
        a = SignMatrix([[1, 1], [1, -1]])
        b = SignMatrix([[1, 1], [1, 1]])
        result = verify_amicable(a, b)
        self.assertFalse(result.passed)
        self.assertIsNotNone(result.witness)

    def test_residual(self):
        """
        Check that the pair identity reports its largest deviation.
        """
        j, a = construct_ja(jacobsthal(3), 1)
        self.assertTrue(verify_pair_identity(j, a, 3).passed)
        result = verify_pair_identity(j, a, 5)
        self.assertFalse(result.passed)
        self.assertGreater(result.residual, 0)

    def test_gaussian_unit_hadamard(self):
        """
        Check a small quaternary Hadamard matrix and a non-quaternary one.
        """
        good = GaussMatrix([[1, 0], [0, 1]], [[0, 1], [1, 0]])
        self.assertTrue(verify_unit_hadamard(good).passed)
        bad = GaussMatrix([[1, 1], [1, 1]], [[0, 0], [0, 0]])
        report = verify_unit_hadamard(bad)
        self.assertTrue(report["quaternary-entries"].passed)
        self.assertFalse(report["unit-hadamard"].passed)

    def test_gauss_amicable(self):
        """
        Check Hermitian amicability of (C_m, D_m) and its loss after one negated entry.
        """
        c, d = construct_cd(jacobsthal(5), 1)
        self.assertTrue(verify_gauss_amicable(c, d).passed)
        re, im = c.re.copy(), c.im.copy()
        re[2, 3], im[2, 3] = -re[2, 3], -im[2, 3]
        result = verify_gauss_amicable(GaussMatrix(re, im), d)
        self.assertFalse(result.passed)
        self.assertIn(2, result.witness)

    def test_unit_hadamard_matches_float_view(self):
        """
        Check that the exact QUH verdict agrees with ``H H* = n I`` in floating point, on
        random sign pairs and on signed permutations of constructed pairs.
        """
        rng = np.random.default_rng(99)
        candidates = []
        for _ in range(60):
            n = int(rng.integers(1, 7))
            a, b = rng.choice([-1, 1], size=(2, n, n))
            candidates.append((a, b, int(rng.choice([3, 5, 7]))))
        for q, m in ((3, 1), (3, 2), (7, 1)):
            j, a = construct_ja(jacobsthal(q), m)
            for _ in range(20):
                candidates.append((*signed_permutation(rng, j.entries, a.entries), q))
        valid = 0
        for a, b, q in candidates:
            quh = QuhMatrix(IntMatrix(a), IntMatrix(b), q, check=False)
            h = quh.to_complex()
            expected = bool(np.allclose(h @ h.conj().T, quh.n * np.eye(quh.n)))
            self.assertEqual(verify_unit_hadamard(quh).passed, expected, (a, b, q))
            valid += expected
        self.assertGreaterEqual(valid, 60)


def signed_permutation(
    rng: np.random.Generator, a: np.ndarray, b: np.ndarray
) -> typing.Tuple[np.ndarray, np.ndarray]:
    """
    ``(P a Q, P b Q)`` for one random pair of signed permutation matrices ``P`` and ``Q``.
    """
    n = a.shape[0]
    rows, cols = rng.permutation(n), rng.permutation(n)
    left = rng.choice([-1, 1], size=n)[:, None]
    right = rng.choice([-1, 1], size=n)[None, :]
    return (
        left * a[rows][:, cols] * right,
        left * b[rows][:, cols] * right,
    )


class TestSingleFlips(unittest.TestCase):
    """
    Test that negating one entry is always caught, with a witness on the changed line.
    """

    def test_core_flips(self):
        """
        Check the symmetry, line sum and Gram witnesses after flipping one off-diagonal entry
        of the core of GF(11).
        """
        rng = np.random.default_rng(11)
        core = jacobsthal(11).matrix.entries
        for _ in range(100):
            i, j = (int(v) for v in rng.choice(11, size=2, replace=False))
            entries = core.copy()
            entries[i, j] = -entries[i, j]
            report = verify_core(IntMatrix(entries))
            self.assertFalse(report.passed)
            self.assertIn(report["symmetry"].witness, ((i, j), (j, i)))
            self.assertEqual(report["zero-line-sums"].witness, (i,))
            self.assertIn(i, report["gram"].witness)

    def test_pair_flips(self):
        """
        Check amicability and the pair identity after flipping one entry of J_2 or A_2 for
        q = 7.
        """
        rng = np.random.default_rng(7)
        j, a = construct_ja(jacobsthal(7), 2)
        for trial in range(100):
            i, k = (int(v) for v in rng.integers(0, 49, size=2))
            flipped = [j.entries.copy(), a.entries.copy()]
            target = flipped[trial % 2]
            target[i, k] = -target[i, k]
            x, y = SignMatrix(flipped[0]), SignMatrix(flipped[1])
            amicable = verify_amicable(x, y)
            identity = verify_pair_identity(x, y, 7)
            self.assertFalse(amicable.passed)
            self.assertFalse(identity.passed)
            self.assertIn(i, amicable.witness)
            self.assertIn(i, identity.witness)
            r, s = amicable.witness
            xy, yx = x.entries @ y.entries.T, y.entries @ x.entries.T
            self.assertNotEqual(xy[r, s], yx[r, s])

    def test_quaternary_flips(self):
        """
        Check ``M M* = n I`` after negating one entry of the quaternary Hadamard matrix of
        order 30.
        """
        rng = np.random.default_rng(5)
        matrix = assemble_quaternary_hadamard(jacobsthal(5), 1)
        for _ in range(100):
            i, k = (int(v) for v in rng.integers(0, 30, size=2))
            re, im = matrix.re.copy(), matrix.im.copy()
            re[i, k], im[i, k] = -re[i, k], -im[i, k]
            report = verify_unit_hadamard(GaussMatrix(re, im))
            self.assertTrue(report["quaternary-entries"].passed)
            self.assertFalse(report["unit-hadamard"].passed)
            self.assertIn(i, report["unit-hadamard"].witness)


class TestButson(unittest.TestCase):
    """
    Test the Butson verdicts.
    """

    def test_admissible(self):
        """
        Check which parameters give roots of unity.
        """
        self.assertTrue(butson_parameter_admissible(1))
        self.assertTrue(butson_parameter_admissible(3))
        self.assertFalse(butson_parameter_admissible(7))

    def test_unreal_sixth_roots(self):
        """
        Check that QUH(3^m, 3) is an unreal BH(3^m, 6).
        """
        for m in range(1, 5):
            quh = construct_quh(jacobsthal(3), m)
            verdict = verify_butson(quh)
            self.assertEqual((verdict.is_butson, verdict.k, verdict.unreal), (True, 6, True))
            self.assertEqual(verdict.label(quh.n), f"BH({3 ** m},6), unreal")

    def test_not_butson(self):
        """
        Check that q = 7 gives no roots of unity.
        """
        quh = construct_quh(jacobsthal(7), 1)
        verdict = verify_butson(quh)
        self.assertFalse(verdict)
        self.assertEqual(verdict.label(7), "not Butson")
        with self.assertRaises(ParameterError):
            butson_exponents(quh)

    def test_exponents(self):
        """
        Check the exponent matrix of QUH(3, 3).
        """
        quh = construct_quh(jacobsthal(3), 1)
        self.assertEqual(butson_exponents(quh).to_list()[0], [1, 5, 1])


class TestExcess(unittest.TestCase):
    """
    Test excess, regularity and Best's bound.
    """

    def test_order_three(self):
        """
        Check u = 9, v = 3 and |S|^2 = 27 for QUH(3, 3).
        """
        quh = construct_quh(jacobsthal(3), 1)
        value = excess(quh)
        self.assertEqual(value, ExcessValue(3, 9, 3))
        self.assertEqual(value.magnitude_squared_times_qplus1, 108)
        self.assertEqual(value.magnitude_squared(), (108, 4))
        self.assertTrue(is_regular(quh))
        self.assertTrue(best_bound(quh).passed)

    def test_best_equality_grid(self):
        """
        Check u^2 + q v^2 = (q + 1) q^(3m) on constructed matrices.
        """
        for q, m in ((3, 1), (3, 2), (3, 3), (7, 1), (7, 2), (11, 2)):
            quh = construct_quh(jacobsthal(q), m)
            value = excess(quh)
            self.assertEqual(value.magnitude_squared_times_qplus1, (q + 1) * q ** (3 * m))
            report = best_bound(quh)
            self.assertTrue(report["best-equality"].passed)
            self.assertTrue(report["regular"].passed)

    def test_not_regular(self):
        """
        Check a unit Hadamard pair with a non-regular row.
        """
        h = IntMatrix([[1, 1], [1, -1]])
        quh = QuhMatrix(h, h, 3)
        result = regular_rows(quh)
        self.assertFalse(result.passed)
        self.assertEqual(result.witness, (0,))
        report = best_bound(quh)
        self.assertTrue(report["best-bound"].passed)
        self.assertFalse(report["best-equality"].passed)

    def test_closed_forms(self):
        """
        Check the closed forms of S(J_m) and S(A_m).
        """
        self.assertEqual(excess_closed_forms(3, 1), (9, 3))
        self.assertEqual(excess_closed_forms(7, 2), (343, 343))
        self.assertEqual(excess_closed_forms(3, 5), (3**8, 3**7))

    def test_lemma(self):
        """
        Check the recomputed sums against the closed forms and the recurrence.
        """
        report, rows = check_excess_lemma(jacobsthal(3), 4)
        self.assertTrue(report.passed)
        self.assertEqual([row.m for row in rows], [0, 1, 2, 3, 4])
        self.assertEqual((rows[1].sum_j, rows[1].sum_a), (9, 3))
        self.assertTrue(report["recurrence m=4"].passed)

        report, rows = check_excess_lemma(jacobsthal(7), 2)
        self.assertEqual((rows[2].sum_j, rows[2].sum_a), (343, 343))

    def test_lemma_stops_at_cap(self):
        """
        Check that the lemma table ends at the order cap.
        """
        _, rows = check_excess_lemma(jacobsthal(3), 10, order_cap=81)
        self.assertEqual(rows[-1].m, 4)
