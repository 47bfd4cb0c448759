"""Coupled appraisal/expertise team-learning dynamics.

Thin re-export of the compiled extension; see the project README for the
model and the command-line driver.
"""

from tmsim._core import *  # noqa: F401,F403
from tmsim._core import __doc__  # noqa: F401

__version__ = "0.1.0"
