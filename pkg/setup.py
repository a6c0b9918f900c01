"""Build script: compiles the F2 reduction kernel when Cython is available.

The package works without the extension (a pure-Python kernel is selected at
import time), so a failed extension build is not fatal.
"""

from setuptools import setup
from setuptools.extension import Extension

import os

ext_modules = []
try:
    from Cython.Build import cythonize

    if os.path.exists("src/psdef/_f2speed.pyx"):
        ext_modules = cythonize(
            [
                Extension(
                    "psdef._f2speed",
                    ["src/psdef/_f2speed.pyx"],
                    language="c++",
                    extra_compile_args=["-O3", "-std=c++17"],
                )
            ],
            language_level=3,
        )
except ImportError:
    pass

setup(ext_modules=ext_modules)
