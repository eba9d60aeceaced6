"""Exact arithmetic for finite additive subgroups and their dilation invariants.

The compiled core lives in ``_dilation``. In an installed wheel it sits inside
this package; in a plain CMake build it is a top-level module on sys.path.
"""

try:
    from ._dilation import *  # noqa: F401,F403
    from ._dilation import __doc__ as _core_doc
except ImportError:
    from _dilation import *  # noqa: F401,F403
    from _dilation import __doc__ as _core_doc

__doc__ = _core_doc or __doc__
__version__ = "1.0.0"
