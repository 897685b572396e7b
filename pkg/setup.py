"""Build hook for the optional compiled kernels.

Without Cython or a C compiler the package still installs; the pure-Python
kernels are selected at import time.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("ladic.fieldcore._ckernels",
                   ["src/ladic/fieldcore/_ckernels.pyx"],
                   extra_compile_args=["-O3"],
                   optional=True)],
        language_level=3,
    )

setup(ext_modules=ext_modules)
