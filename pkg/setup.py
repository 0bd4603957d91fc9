"""Build hooks for the optional compiled kernel.

The package is pure Python plus one Cython extension for the rational
arithmetic hot path.  If Cython or a C compiler is missing the build
falls through to the pure kernel, which implements the same interface.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class _OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing: fall back to pure kernel
            print(f"skipping compiled kernel ({exc}); using pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"skipping {ext.name} ({exc}); using pure-Python fallback")


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [Extension("realforms._kernel", ["src/realforms/_kernel.pyx"])],
        language_level=3,
    )


setup(ext_modules=_extensions(), cmdclass={"build_ext": _OptionalBuildExt})
