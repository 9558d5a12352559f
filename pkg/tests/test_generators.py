import unittest

import pydantic

from quhm.constructions import QuhMatrix, SeedPair
from quhm.cores import CoreMatrix, jacobsthal
from quhm.errors import CoreKindError, OrderCapExceededError
from quhm.exactmat import GaussMatrix, SignMatrix
from quhm.generators import (
    GENERATORS,
    CDGenerator,
    CoreGenerator,
    Generator,
    JAGenerator,
    PaleyGenerator,
    QuhGenerator,
    SeededGenerator,
)


class TestGenerator(unittest.TestCase):
    """
    Test the quhm.generators.Generator object.
    """

    def test_create_generator(self):
        """
        Attempt to create a generator well-built with the correct parameters.
        """

        class PowerGen(Generator[int]):
            q: int

            def generate(self, m: int) -> int:
                return self.q**m

        generator = PowerGen(q=3)
        self.assertEqual(generator.generate(4), 81)
        self.assertEqual(generator.required_keys, ["q"])
        self.assertEqual(generator.optional_keys, ["verify", "order_cap"])
        self.assertRaises(pydantic.ValidationError, PowerGen)

    def test_settings_override(self):
        """
        Check that a generator applies its own order cap and verify flag.
        """
        generator = QuhGenerator(q=3, order_cap=4096, verify=False)
        self.assertEqual(generator.settings.order_cap, 4096)
        self.assertFalse(generator.settings.verify)
        with self.assertRaises(pydantic.ValidationError):
            generator.order_cap = 0


class TestCoreBasedGenerator(unittest.TestCase):
    """
    Test generators driven by a core.
    """

    def test_q_or_core(self):
        """
        Check that q or core must be given and that they must agree.
        """
        self.assertRaises(pydantic.ValidationError, QuhGenerator)
        self.assertRaises(pydantic.ValidationError, QuhGenerator, q=6)
        self.assertRaises(pydantic.ValidationError, QuhGenerator, q=7, core=jacobsthal(3))
        self.assertEqual(QuhGenerator(core=jacobsthal(7)).get_core().q, 7)

    def test_registry(self):
        """
        Check that every registered generator builds something for a valid core.
        """
        self.assertEqual(
            sorted(GENERATORS),
            ["cd", "core", "hadamard", "ja", "paley", "qhad", "quh", "seeded"],
        )
        self.assertIsInstance(CoreGenerator(q=9).generate(), CoreMatrix)
        j, a = JAGenerator(q=3).generate(2)
        self.assertEqual((j.order, a.order), (9, 9))
        self.assertIsInstance(QuhGenerator(q=7).generate(1), QuhMatrix)
        c, d = CDGenerator(q=5).generate(1)
        self.assertIsInstance(c, GaussMatrix)
        self.assertEqual(d.order, 5)
        self.assertIsInstance(GENERATORS["qhad"](q=5).generate(1), GaussMatrix)
        self.assertEqual(GENERATORS["hadamard"](q=3).generate(2).order, 36)
        paley = PaleyGenerator(q=11).generate()
        self.assertIsInstance(paley, SignMatrix)
        self.assertEqual(paley.order, 12)

    def test_seeded(self):
        """
        Check that the seeded generator requires a seed.
        """
        self.assertRaises(pydantic.ValidationError, SeededGenerator, q=3)
        x, y = SeededGenerator(q=3, seed=SeedPair.trivial(3)).generate(2)
        self.assertEqual(x.order, 9)

    def test_wrong_kind(self):
        """
        Check that constructions refuse cores of the wrong kind.
        """
        self.assertRaises(CoreKindError, CDGenerator(q=3).generate, 1)
        self.assertRaises(CoreKindError, PaleyGenerator(q=5).generate)

    def test_order_cap(self):
        """
        Check the default order cap and its override.
        """
        with self.assertRaises(OrderCapExceededError):
            QuhGenerator(q=3, verify=False).generate(7)
        quh = QuhGenerator(q=3, verify=False, order_cap=2187).generate(7)
        self.assertEqual(quh.n, 2187)
