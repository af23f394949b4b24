import os

from setuptools import Extension, setup

# The compiled kernels are optional; without Cython the package falls back
# to the pure-Python implementation at import time.
ext_modules = []
if os.environ.get("PUISEUX_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "puiseux._ckernels",
                    ["src/puiseux/_ckernels.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O2"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
