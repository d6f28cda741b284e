"""Build script: compiles the clause-mask kernels when Cython is available.

The package is fully functional without the extension; ``kernels.py`` falls
back to the pure-Python twin at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("massfusion._ckernels", ["src/massfusion/_ckernels.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
