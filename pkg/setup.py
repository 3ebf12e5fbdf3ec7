"""Builds the optional compiled kernel extension.

The package works without it: newsauth._kernels falls back to the numpy
implementations when the extension is missing (see that package's README
section).  Compilation failures are therefore tolerated.
"""

import sys

from setuptools import setup

try:
    import numpy
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    extensions = cythonize(
        [
            Extension(
                "newsauth._kernels._core",
                ["src/newsauth/_kernels/_core.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"skipping compiled kernels ({exc}); numpy fallback will be used", file=sys.stderr)
    extensions = []

setup(ext_modules=extensions)
