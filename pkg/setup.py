"""Build script: compiles the optional kernel extension when Cython and a
C toolchain are available; the package falls back to the pure-Python
kernel otherwise, so a failed extension build never blocks installation.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # toolchain missing: fall back
            print(f"sl1d: skipping compiled kernel ({exc}); "
                  "using the pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"sl1d: failed to compile {ext.name} ({exc}); "
                  "using the pure-Python fallback")


def extensions():
    if os.environ.get("SL1D_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [Extension("sl1d._core", ["src/sl1d/_core.pyx"])],
        language_level=3,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
