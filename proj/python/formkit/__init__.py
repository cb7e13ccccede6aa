"""Semibounded forms, linear relations and their decompositions."""

from ._core import *  # noqa: F401,F403
from ._core import FormkitError, InvariantError, ParseError, PreconditionError  # noqa: F401
