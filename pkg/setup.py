"""Build hook for the optional compiled search kernel.

The package works without the extension; tembed.ilp.kernel falls back to
the pure-Python implementation when the import fails.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "tembed.ilp._kernel",
                ["src/tembed/ilp/_kernel.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception:  # no Cython or no compiler: install pure-Python only
    extensions = []

setup(ext_modules=extensions)
