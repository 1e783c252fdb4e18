"""Build hook for the optional compiled kernel.

If Cython or a C compiler is unavailable the package still installs and
``tempo.kernel`` falls back to the pure-Python implementation.
"""
from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("tempo._kernel_c", ["src/tempo/_kernel_c.pyx"],
                   extra_compile_args=["-O3"])],
        language_level=3,
        quiet=True,
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    print(f"tempo: building without compiled kernel ({exc})")

setup(ext_modules=ext_modules)
