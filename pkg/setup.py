"""Build script for the compiled kernel extension.

The package works without the extension (a pure-Python fallback is selected
at import time); building it makes word2vec training and layout optimization
one to two orders of magnitude faster.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "lingua_atlas._kernels._native",
                ["src/lingua_atlas/_kernels/_native.pyx"],
                include_dirs=[numpy.get_include()],
                # -ffp-contract=off keeps the C arithmetic bit-identical to
                # the pure-Python kernels (no FMA contraction).
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "initializedcheck": False,
        },
    )
except ImportError as exc:
    print(f"skipping compiled kernels ({exc}); pure-Python fallback will be used")

setup(ext_modules=ext_modules)
