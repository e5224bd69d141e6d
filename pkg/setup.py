"""Build hook: compiles the optional fast kernels when Cython is available.

The package is fully functional without the extension; qstar._backend falls
back to the pure-Python twin at import time.  Set QSTAR_PURE_PYTHON=1 to skip
the build entirely.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("QSTAR_PURE_PYTHON") != "1" and os.path.exists(
    "src/qstar/_kernels.pyx"
):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("qstar._kernels", ["src/qstar/_kernels.pyx"])],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
