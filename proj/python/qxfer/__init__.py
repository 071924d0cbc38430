"""Python interface to the qxfer state-transfer simulator."""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __doc__ as _core_doc
except ImportError:  # in-tree use: extension lives in the CMake build dir
    import os
    import sys

    _ext_dir = os.environ.get("QXFER_EXT_DIR")
    if not _ext_dir:
        raise
    sys.path.insert(0, _ext_dir)
    from _core import *  # noqa: F401,F403
    from _core import __doc__ as _core_doc

__doc__ = _core_doc
