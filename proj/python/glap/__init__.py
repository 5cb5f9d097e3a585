from ._glap import *  # noqa: F401,F403
