"""Build the optional compiled census kernel.

The package is fully functional without it (a pure-Python fallback is
selected at import time); set QRCENSUS_NO_EXT=1 to skip compilation.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("QRCENSUS_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/qrcensus/_speedups.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
