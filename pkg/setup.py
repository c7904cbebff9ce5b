"""Build script.

The compiled kernel extension is optional: if Cython or a C compiler is
unavailable the install falls back to the pure backend (selected at import
time by hermquot._kernels).  Set HERMQUOT_NO_EXT=1 to skip the extension
build entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Degrade to the pure-Python backend when the extension cannot build."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: skipping compiled kernels ({exc}); "
                  f"hermquot will use the pure backend")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: failed to build {ext.name} ({exc}); "
                  f"hermquot will use the pure backend")


ext_modules = []
cmdclass = {}
if os.environ.get("HERMQUOT_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "hermquot._kernels._corekern",
                    ["src/hermquot/_kernels/_corekern.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
        cmdclass["build_ext"] = OptionalBuildExt
    except ImportError:
        print("warning: Cython not available; building without compiled kernels")

setup(ext_modules=ext_modules, cmdclass=cmdclass)
