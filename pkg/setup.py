import os

from setuptools import setup
from setuptools.extension import Extension

extensions = [Extension("deltacalc._ckernel", ["src/deltacalc/_ckernel.pyx"])]

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = [] if os.environ.get("DELTACALC_NO_EXT") else cythonize(extensions, quiet=True)

setup(ext_modules=ext_modules)
