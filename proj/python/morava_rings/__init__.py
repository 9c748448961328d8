from ._core import *  # noqa: F401,F403
from ._core import MoravaError, InputError, InvariantFailure, PrecisionExhausted, SCHEMA  # noqa: F401
