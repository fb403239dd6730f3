"""Build script: compiles the Euler-Maclaurin kernel extension when possible.

The package works without the extension (a numpy fallback is selected at
import time), so any failure here is downgraded to a warning rather than
aborting the install.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "lzeros.kernels._em_cy",
                ["src/lzeros/kernels/_em_cy.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3", "-ffp-contract=off"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    sys.stderr.write(
        "warning: Cython extension unavailable (%s); "
        "installing with the pure-numpy kernel only\n" % exc
    )

setup(ext_modules=ext_modules)
