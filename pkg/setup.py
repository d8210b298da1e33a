import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("CONJCAP_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "conjcap._kernels_c",
                    ["src/conjcap/_kernels_c.pyx"],
                    # -ffp-contract=off: forbid FMA contraction so the compiled
                    # kernels round exactly like the pure-Python twin.
                    extra_compile_args=["-O2", "-ffp-contract=off"],
                )
            ],
            language_level="3",
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
