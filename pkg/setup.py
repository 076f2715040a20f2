import os

from setuptools import setup

# The enumeration kernels compile to a C extension when Cython is present;
# without it the package falls back to the pure-Python twins at import time.
# Set PREPLIM_PURE=1 to force a pure build.
ext_modules = []
if os.environ.get("PREPLIM_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/preplim/_kernels.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
