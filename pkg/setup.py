"""Build the optional compiled kernels; the package falls back to numpy without them."""
import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover
    cythonize = None

extensions = [
    Extension(
        "toader_bounds._ckernels",
        ["src/toader_bounds/_ckernels.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        # bit-compatible IEEE arithmetic with the numpy fallback
        extra_compile_args=["-O2", "-fno-fast-math", "-ffp-contract=off"],
        optional=True,
    )
]

ext_modules = []
if cythonize is not None:
    try:
        ext_modules = cythonize(extensions, compiler_directives={"language_level": "3"})
    except Exception as exc:  # pragma: no cover
        print(f"warning: compiled kernels disabled ({exc}); numpy fallback only")

setup(ext_modules=ext_modules)
