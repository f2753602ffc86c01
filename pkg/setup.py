"""Build script for the optional compiled polynomial kernels.

The package works without the extension: ``qaffine.polykern`` falls back to
the pure-Python implementation when ``qaffine._cpoly`` cannot be imported.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("QAFFINE_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("qaffine._cpoly", ["src/qaffine/_cpoly.pyx"], extra_compile_args=["-O2"])],
            compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
        )

setup(ext_modules=ext_modules)
