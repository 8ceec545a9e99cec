"""Builds the optional compiled scan kernel.

The package is fully functional without it (a numpy fallback is selected at
import time); building the extension just makes the moving-window scan faster.
Requires Cython and numpy in the build environment:

    python setup.py build_ext --inplace
"""
from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "dashgrid._kernels",
                ["src/dashgrid/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
