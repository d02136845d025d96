from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/nearbip/_search/_speedups.pyx",
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # pure-Python install: the kernel selector falls back automatically
    ext_modules = []

setup(ext_modules=ext_modules)
