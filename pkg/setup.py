import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("HOMFINSLER_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:  # build the pure-Python package only
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "homfinsler._kernels",
                    ["src/homfinsler/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
