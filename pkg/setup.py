import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("FNMETRIC_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        # no fused multiply-add: the compiled kernels must round like the
        # pure-Python ones
        ext = Extension("fnmetric._ckernels", ["src/fnmetric/_ckernels.pyx"],
                        extra_compile_args=["-O2", "-ffp-contract=off"])
        ext_modules = cythonize([ext], compiler_directives={"language_level": 3}, quiet=True)

setup(ext_modules=ext_modules)
