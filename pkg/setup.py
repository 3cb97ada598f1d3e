import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("FOCKBUNDLE_PURE", "0") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "fockbundle._core",
                    ["src/fockbundle/_core.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        # Pure-Python install still works; fockbundle.backend falls back.
        ext_modules = []

setup(ext_modules=ext_modules)
