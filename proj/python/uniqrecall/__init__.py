"""Expected unique-information recall under random sampling from redundant data.

Thin re-export of the compiled extension; see the project README for the
matching command-line tool.
"""

from uniqrecall._core import *  # noqa: F401,F403
from uniqrecall._core import __version__  # noqa: F401
