import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SKEWSF_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("skewsf.kernels._core", ["src/skewsf/kernels/_core.pyx"])],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        # No Cython: the package still works through the reference kernels.
        ext_modules = []

setup(ext_modules=ext_modules)
