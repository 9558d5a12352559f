import typing
from abc import ABC, abstractmethod

import pydantic

from quhm.config import Settings, get_settings
from quhm.constructions import (
    GaussPair,
    QuhMatrix,
    SeedPair,
    SignPair,
    assemble_quaternary_hadamard,
    construct_cd,
    construct_ja,
    construct_quh,
    construct_seeded,
    hadamard_from_pair,
)
from quhm.cores import (
    CoreKind,
    CoreMatrix,
    jacobsthal,
    skew_hadamard_from_core,
)
from quhm.exactmat import GaussMatrix, SignMatrix
from quhm.utils import prime_power

_GR = typing.TypeVar("_GR")


class Generator(ABC, pydantic.BaseModel, typing.Generic[_GR]):
    """
    Base class for all generators.

    A generator holds the validated parameters of one construction and builds it for a
    given depth. A generator looks like this:

    .. code-block:: python

       class MyGenerator(Generator[int]):
           q: int = ...

           def generate(self, m: int) -> int:
               return self.q**m

       MyGenerator(q=3).generate(2)  # 9
       MyGenerator()  # Raises an error, q is required.

    Parameters are checked by pydantic when the generator is created and when they are
    reassigned, so a generator that exists is always consistent.
    """

    model_config = pydantic.ConfigDict(
        validate_default=True,
        validate_assignment=True,
        arbitrary_types_allowed=True,
    )

    verify: bool = True
    """
    Whether the result is verified before it is returned.
    """
    order_cap: typing.Optional[int] = pydantic.Field(None, ge=1)
    """
    Overrides the process-wide order cap when set.
    """

    @property
    def required_keys(self) -> typing.List[str]:
        """
        List of all child's required keys.

        Returns
        -------
        List of :py:class:`str` :
            The list of required keys.
        """
        return [key for key, value in type(self).model_fields.items() if value.is_required()]

    @property
    def optional_keys(self) -> typing.List[str]:
        """
        List of all child's optional keys.

        Returns
        -------
        List of :py:class:`str` :
            The list of optional keys.
        """
        return [
            key for key, value in type(self).model_fields.items() if not value.is_required()
        ]

    @property
    def settings(self) -> Settings:
        """
        The process-wide settings with this generator's overrides applied.
        """
        update: typing.Dict[str, typing.Any] = {"verify": self.verify}
        if self.order_cap is not None:
            update["order_cap"] = self.order_cap
        return get_settings().model_copy(update=update)

    @abstractmethod
    def generate(self, m: int) -> _GR:
        """
        A method that needs to be implemented by the child class.

        Parameters
        ----------
        m : :py:class:`int`
            The recursion depth.
        """
        raise NotImplementedError()


class CoreBasedGenerator(Generator[_GR], typing.Generic[_GR]):
    """
    A generator driven by a core: the Jacobsthal core of ``q``, or a user-supplied ``core``.
    At least one of them must be given, and they must agree on the order.
    """

    q: typing.Optional[int] = None
    core: typing.Optional[CoreMatrix] = None

    @pydantic.field_validator("q")
    @classmethod
    def q_is_a_prime_power(cls, q: typing.Optional[int]) -> typing.Optional[int]:
        if q is not None:
            prime_power(q)
        return q

    @pydantic.model_validator(mode="after")
    def core_or_order(self) -> "CoreBasedGenerator[_GR]":
        if self.core is None and self.q is None:
            raise ValueError("Either q or core must be given")
        if self.core is not None and self.q is not None and self.core.q != self.q:
            raise ValueError(f"The core has order {self.core.q}, not {self.q}")
        return self

    def get_core(self) -> CoreMatrix:
        """
        The user core when there is one, the Jacobsthal core of ``q`` otherwise.
        """
        if self.core is not None:
            return self.core
        return jacobsthal(typing.cast(int, self.q))


class CoreGenerator(CoreBasedGenerator[CoreMatrix]):
    """
    Produces the core itself. The depth is ignored.
    """

    def generate(self, m: int = 0) -> CoreMatrix:
        return self.get_core()


class JAGenerator(CoreBasedGenerator[SignPair]):
    """
    Produces ``(J_m, A_m)`` from a skew core.
    """

    def generate(self, m: int) -> SignPair:
        return construct_ja(self.get_core(), m, settings=self.settings)


class SeededGenerator(CoreBasedGenerator[SignPair]):
    """
    Produces ``(X_m, Y_m)`` from a skew core and a seed pair.
    """

    seed: SeedPair = ...  # type: ignore[assignment]

    def generate(self, m: int) -> SignPair:
        return construct_seeded(self.seed, self.get_core(), m, settings=self.settings)


class QuhGenerator(CoreBasedGenerator[QuhMatrix]):
    """
    Produces the regular QUH(q^m, q) of a skew core.
    """

    def generate(self, m: int) -> QuhMatrix:
        return construct_quh(self.get_core(), m, settings=self.settings)


class CDGenerator(CoreBasedGenerator[GaussPair]):
    """
    Produces ``(C_m, D_m)`` from a symmetric core.
    """

    def generate(self, m: int) -> GaussPair:
        return construct_cd(self.get_core(), m, settings=self.settings)


class QuaternaryHadamardGenerator(CoreBasedGenerator[GaussMatrix]):
    """
    Produces the quaternary Hadamard matrix of order ``q^m (q + 1)`` from a symmetric core.
    """

    def generate(self, m: int) -> GaussMatrix:
        return assemble_quaternary_hadamard(self.get_core(), m, settings=self.settings)


class PaleyGenerator(CoreBasedGenerator[SignMatrix]):
    """
    Produces the skew-type Hadamard matrix of order ``q + 1`` bordered from a skew core.
    The depth is ignored.
    """

    def generate(self, m: int = 0) -> SignMatrix:
        return skew_hadamard_from_core(self.get_core().require(CoreKind.SKEW))


class PairHadamardGenerator(CoreBasedGenerator[SignMatrix]):
    """
    Produces the real Hadamard matrix ``I (x) J_m + W (x) A_m`` of order ``(q + 1) q^m``,
    with ``I + W`` the skew-type Hadamard matrix bordered from the same core.
    """

    def generate(self, m: int) -> SignMatrix:
        core = self.get_core()
        settings = self.settings
        j, a = construct_ja(core, m, settings=settings)
        return hadamard_from_pair(j, a, skew_hadamard_from_core(core), settings=settings)


GENERATORS: typing.Dict[str, typing.Type[CoreBasedGenerator[typing.Any]]] = {
    "core": CoreGenerator,
    "ja": JAGenerator,
    "seeded": SeededGenerator,
    "quh": QuhGenerator,
    "cd": CDGenerator,
    "qhad": QuaternaryHadamardGenerator,
    "hadamard": PairHadamardGenerator,
    "paley": PaleyGenerator,
}
"""
Generators by the name of the construction they build.
"""
