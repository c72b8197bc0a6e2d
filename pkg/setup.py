from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # No Cython: ship pure Python only; qadic.oracle falls back to _scan_py.
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "qadic._fastscan",
                ["src/qadic/_fastscan.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
