from setuptools import Extension, setup

# The compiled kernel is an accelerator, not a requirement: when Cython is
# missing the package installs pure-Python and chs._backend selects the numpy
# fallback at import time.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "chs._kernels",
                ["src/chs/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
