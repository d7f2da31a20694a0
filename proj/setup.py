import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

# The extension compiles the full C++ core; the CMake build is the primary
# path (library, CLI, tests) and this exists so `pip install .` works alone.
sources = sorted(glob.glob("src/*.cpp")) + ["bindings/pymodule.cpp"]

ext = Pybind11Extension(
    "fairdiv._core",
    sources,
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
