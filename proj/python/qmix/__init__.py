"""Conditional simulation of quantum channel mixtures.

Thin python layer over the compiled extension; see the project README for
how the module is built and what it exposes.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
