"""Build script: compiles the dense-simplex pivot kernel when Cython is available.

The package works without the extension (a numpy fallback is selected at
import time), so any build failure here is non-fatal.
"""
import sys

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/llgames/optim/_simplex_c.pyx"],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
    include_dirs = [numpy.get_include()]
except Exception as exc:  # pragma: no cover - degraded build
    print("llgames: building without compiled simplex kernel (%s)" % exc,
          file=sys.stderr)
    include_dirs = []

setup(ext_modules=ext_modules, include_dirs=include_dirs)
