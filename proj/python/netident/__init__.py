"""Network identifiability from input/output data."""

from ._netident import *  # noqa: F401,F403
from ._netident import __doc__  # noqa: F401
