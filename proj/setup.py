from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

core_sources = [
    "src/families.cpp",
    "src/model.cpp",
    "src/quadrature.cpp",
    "src/simplex.cpp",
    "src/sampler.cpp",
    "src/estimation.cpp",
    "src/sim_study.cpp",
    "src/diagnostics.cpp",
    "src/csv.cpp",
]

ext = Pybind11Extension(
    "afcm._afcm",
    sources=["python/bindings.cpp"] + core_sources,
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
