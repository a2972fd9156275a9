from ._qgr import *  # noqa: F401,F403
