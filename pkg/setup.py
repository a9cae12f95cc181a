"""Builds the optional compiled enumeration kernel.

The package works without it (a numpy fallback is selected at import time);
run ``python setup.py build_ext --inplace`` or a normal pip install to get
the compiled version.
"""

import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "monobn._enumc",
                ["src/monobn/_enumc.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
