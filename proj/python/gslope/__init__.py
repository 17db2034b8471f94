from ._gslope import *  # noqa: F401,F403
from ._gslope import __doc__  # noqa: F401
