"""Build hook for the optional compiled kernels.

If Cython or a C compiler is missing, the package still installs and
falls back to ``deltaraag._pycore`` at import time.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("DELTARAAG_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("deltaraag._core", ["src/deltaraag/_core.pyx"], extra_compile_args=["-O3"])],
            language_level=3,
            quiet=True,
        )
    except Exception:  # pragma: no cover - build environment dependent
        ext_modules = []

setup(ext_modules=ext_modules)
