"""Build script for the optional compiled kernel.

The package is pure Python except for one hot-loop module,
``kerrqnd._kernels._core``, which is compiled from Cython when a
toolchain is available.  If Cython or a C compiler is missing the
build silently degrades to the pure-Python fallback; nothing else
depends on the extension being present.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "kerrqnd._kernels._core",
                sources=["src/kerrqnd/_kernels/_core.pyx"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
