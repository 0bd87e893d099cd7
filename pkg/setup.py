import os

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if not os.path.exists("src/vcsolver/kernels/_native.pyx"):
    cythonize = None

# The compiled kernels are an optional accelerator: the package falls back to
# the pure-Python implementations in vcsolver.kernels.pure when the extension
# is unavailable, so a missing compiler must not break installation.
extensions = [
    Extension(
        "vcsolver.kernels._native",
        ["src/vcsolver/kernels/_native.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3"],
        optional=True,
    )
]

if cythonize is not None:
    ext_modules = cythonize(extensions, compiler_directives={"language_level": "3"})
else:
    ext_modules = []

setup(ext_modules=ext_modules)
