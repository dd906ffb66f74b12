"""Build hook for the optional compiled kernels.

The package works without them; ``berezin_lab._backend`` falls back to the
numpy implementations when ``berezin_lab._kernels`` is not importable.
"""
import os

import numpy as np
from setuptools import Extension, setup

ext_modules = []
if os.environ.get("BEREZIN_LAB_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "berezin_lab._kernels",
                    sources=["src/berezin_lab/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3", "-fcx-limited-range"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": 3},
        )

setup(ext_modules=ext_modules)
