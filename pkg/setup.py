"""Build script: compiles the hot-kernel extension when a toolchain is present.

The package works without the extension (a pure-Python twin is selected at
import time), so a failed compilation only costs speed, not functionality.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "ecsim._kernels",
                ["src/ecsim/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
