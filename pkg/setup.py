"""Builds the optional Cython kernel; the package works without it."""

import os

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # no Cython: pure numpy install
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("STEC_NO_EXT"):
    ext_modules = cythonize(
        [
            Extension(
                "stec._entropy_ext",
                ["src/stec/_entropy_ext.pyx"],
                include_dirs=[np.get_include()],
                # no -ffast-math / FMA contraction: results must match the reference bit for bit
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
