"""Build script: compiles the optional Cython kernel core.

If Cython or a C compiler is unavailable the build falls back to a
pure-python install; the package selects the NumPy kernel twin at import.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "expratio._kernels",
                sources=["src/expratio/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"expratio: building without compiled kernels ({exc})")

setup(ext_modules=ext_modules)
