"""Build script: compiles the optional bitset kernel extension.

The package works without the extension (a pure-Python kernel is selected
at import time); any compiler or Cython failure downgrades the install to
pure mode instead of failing it.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Swallow compiler errors: the extension is a speedup, not a requirement."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - toolchain dependent
            print(f"warning: skipping compiled kernels ({exc}); pure-Python kernels will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - toolchain dependent
            print(f"warning: failed to build {ext.name} ({exc}); pure-Python kernels will be used")


def extensions():
    import os

    if not os.path.exists("src/lattice_tax/kernels/_fast.pyx"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:  # pragma: no cover - build environment dependent
        return []
    return cythonize(
        [Extension("lattice_tax.kernels._fast", ["src/lattice_tax/kernels/_fast.pyx"])],
        language_level=3,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
