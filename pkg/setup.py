import os
import warnings

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    warnings.warn("Cython not found; building without the compiled kernels.")
    cythonize = None

extensions = []
if cythonize is not None and not os.environ.get("SEPFACES_NO_EXT"):
    extensions = cythonize(
        [
            Extension(
                "sepfaces._ckernels",
                ["src/sepfaces/_ckernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=extensions)
