import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("PCALAB_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("pcalab._kernel", ["src/pcalab/_kernel.pyx"])],
            compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
            quiet=True,
        )

setup(ext_modules=ext_modules)
