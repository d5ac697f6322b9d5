"""Constructive small-data existence toolkit: Python interface."""

try:
    from ._core import *  # noqa: F401,F403
    from . import _core as core
except ImportError:  # in-tree builds leave _core next to the package
    from _core import *  # noqa: F401,F403
    import _core as core

__all__ = [name for name in dir(core) if not name.startswith("_")]
__version__ = "1.0.0"
