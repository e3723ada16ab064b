import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "diracomp._core",
                ["src/diracomp/_core.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "cdivision": True,
            "boundscheck": False,
            "wraparound": False,
        },
    )
except ImportError:
    # Without Cython the package still installs; the pure-Python backend
    # is selected at import time.
    extensions = []

setup(ext_modules=extensions)
