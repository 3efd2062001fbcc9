import os

from setuptools import Extension, setup

# The compiled kernels are optional: without Cython (or a compiler) the
# package falls back to the pure-Python twins at import time.
ext_modules = []
if os.environ.get("ZESTSIM_NO_EXT", "") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("zestsim._ckernels", ["src/zestsim/_ckernels.pyx"],
                       extra_compile_args=["-O2", "-ffp-contract=off"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
