"""Builds the native extension; all other metadata lives in pyproject.toml."""

from glob import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

extension = Pybind11Extension(
    "kselect._kselect",
    sorted(glob("src/*.cpp")) + ["bindings/pymodule.cpp"],
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(ext_modules=[extension], cmdclass={"build_ext": build_ext})
