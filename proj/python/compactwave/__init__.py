"""Python bindings for the compact fourth-order acoustic wave solver."""

from ._compactwave import *  # noqa: F401,F403
from ._compactwave import __doc__  # noqa: F401
