from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    # -ffp-contract=off: the pure-Python kernel must produce bit-identical
    # distances, so FMA contraction in the compiled kernel is disabled.
    ext_modules = cythonize(
        [
            Extension(
                "lexacq._kernels",
                ["src/lexacq/_kernels.pyx"],
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        language_level="3",
    )
else:
    # No Cython available: install with the pure-Python kernel only.
    ext_modules = []

setup(ext_modules=ext_modules)
