"""Build script: compiles the optional clustering kernels extension.

The package works without the extension (a numpy fallback is selected at
import time), so any build failure here downgrades to a pure install
instead of aborting.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/insightd/analytics/_ckernels.pyx"],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    print(f"insightd: skipping compiled kernels ({exc}); pure fallback will be used")

setup(ext_modules=ext_modules)
