import os

from setuptools import setup

ext_modules = []
if os.environ.get("NCUR_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from Cython.Build import cythonize
        ext_modules = cythonize(["src/ncur/_kernels.pyx"], language_level=3, quiet=True)
    except ImportError:
        pass

setup(ext_modules=ext_modules)
