import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("AUDIOBERTSCORE_SKIP_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "audiobertscore._kernels",
                    ["src/audiobertscore/_kernels.pyx"],
                    extra_compile_args=["-O3"],
                    optional=True,
                )
            ],
            language_level=3,
            compiler_directives={
                "boundscheck": False,
                "wraparound": False,
                "initializedcheck": False,
                "cdivision": True,
                "embedsignature": True,
            },
        )
    except ImportError:
        # No Cython: install the pure-NumPy fallback only.
        ext_modules = []

setup(ext_modules=ext_modules)
