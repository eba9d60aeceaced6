import os
import sys

# A plain CMake build leaves the compiled module next to the other build
# artifacts; make it importable before the package __init__ runs.
_pymod_dir = os.environ.get("DILATION_PYMODULE_DIR")
if _pymod_dir and _pymod_dir not in sys.path:
    sys.path.insert(0, _pymod_dir)
