import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "ndwu_lab.kernels._core",
                ["src/ndwu_lab/kernels/_core.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    # Pure-python kernels are selected at import time if the extension is absent.
    ext_modules = []

setup(ext_modules=ext_modules)
