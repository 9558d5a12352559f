import logging
import os
import typing

import pydantic

log = logging.getLogger(__name__)

ORDER_CAP_ENV = "QUHM_ORDER_CAP"
DEFAULT_ORDER_CAP = 2048
DEFAULT_EIGENMATRIX_CAP = 729


class Settings(pydantic.BaseModel):
    """
    Runtime settings shared by the constructions and the scheme tools.

    Settings are validated on creation and on assignment, so a bad value is refused
    right away:

    .. code-block:: python

       settings = Settings(order_cap=4096)
       settings.order_cap = 0  # Raises a pydantic.ValidationError

    Use :py:meth:`Settings.from_env` to honour the ``QUHM_ORDER_CAP`` environment variable.
    """

    model_config = pydantic.ConfigDict(
        validate_default=True,
        validate_assignment=True,
    )

    order_cap: int = pydantic.Field(DEFAULT_ORDER_CAP, ge=1)
    """
    Largest matrix order any construction is allowed to produce.
    """
    eigenmatrix_cap: int = pydantic.Field(DEFAULT_EIGENMATRIX_CAP, ge=1)
    """
    Largest order of a materialized tensor eigenmatrix.
    """
    verify: bool = True
    """
    Whether constructors verify their own postconditions.
    """

    @classmethod
    def from_env(cls, environ: typing.Optional[typing.Mapping[str, str]] = None) -> "Settings":
        """
        Build settings, reading the order cap from ``QUHM_ORDER_CAP`` when it is set.

        Raises
        ------
        :py:exc:`pydantic.ValidationError` :
            If the variable is not a positive integer.
        """
        environ = os.environ if environ is None else environ
        raw = environ.get(ORDER_CAP_ENV)
        if raw is None or not raw.strip():
            return cls()
        log.debug("Order cap taken from %s=%s", ORDER_CAP_ENV, raw)
        return cls(order_cap=raw.strip())  # type: ignore[arg-type]


_settings: typing.Optional[Settings] = None


def get_settings() -> Settings:
    """
    Return the process-wide settings, read from the environment on first use.
    """
    global _settings
    if _settings is None:
        _settings = Settings.from_env()
    return _settings


def set_settings(settings: typing.Optional[Settings]) -> None:
    """
    Replace the process-wide settings. ``None`` makes the next call re-read the environment.
    """
    global _settings
    _settings = settings
