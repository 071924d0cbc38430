import os

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup


def eigen_include():
    for candidate in ("/usr/include/eigen3", "/usr/local/include/eigen3"):
        if os.path.isdir(candidate):
            return candidate
    raise RuntimeError("Eigen3 headers not found; install libeigen3-dev")


ext = Pybind11Extension(
    "qxfer._core",
    sources=[
        "python/bindings.cpp",
        "src/model.cpp",
        "src/hamiltonian.cpp",
        "src/propagator.cpp",
        "src/protocol.cpp",
    ],
    include_dirs=["include", eigen_include()],
    cxx_std=20,
    extra_compile_args=["-O3"],
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
