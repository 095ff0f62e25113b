"""Build script: compiles the optional Clenshaw kernel extension.

The extension is a pure speedup; if Cython or a C compiler is missing the
build falls back to a pure-Python install and `postrig.kernels` selects the
numpy backend at import time.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - any build failure is non-fatal
            print(f"postrig: skipping compiled kernels ({exc!r}); "
                  "pure-Python backend will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"postrig: could not build {ext.name} ({exc!r}); "
                  "pure-Python backend will be used")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension("postrig._kernels", ["src/postrig/_kernels.pyx"])
    return cythonize([ext], language_level="3")


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
