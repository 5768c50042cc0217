"""Bezier curves by Pascal matrix methods."""

from ._pascalbez import *  # noqa: F401,F403
from ._pascalbez import __doc__  # noqa: F401
