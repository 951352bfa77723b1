"""Build script. The compiled kernel is optional: when Cython (and a C
toolchain) is available the extension hypercsa._kernels is built, otherwise
the package installs pure-Python and selects the fallback kernels at import.

Build the extension in place for development with:

    python setup.py build_ext --inplace
"""
import os

from setuptools import Extension, setup


def extension_modules():
    if os.environ.get("HYPERCSA_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "hypercsa._kernels",
        ["src/hypercsa/_kernels.pyx"],
        extra_compile_args=["-O3"],
        optional=True,
    )
    return cythonize(
        [ext],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )


setup(ext_modules=extension_modules())
