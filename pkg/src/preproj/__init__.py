"""Exact homological calculus for preprojective algebras.

The package builds, entirely over the rationals:

* the preprojective algebra of a linear quiver with a loop at one end
  (family T) or of a plain linear quiver (family A), graded by path length;
* its periodic projective bimodule resolution, of period six, together
  with exactness and self-duality checks;
* Hochschild homology and cohomology with their internal grading, cyclic
  homology, and the canonical named generators of every group;
* the cup product, the duality between homology and cohomology, the
  contraction and Lie-derivative actions, the Connes differential, the
  induced BV operator and the Gerstenhaber bracket.

Every computation is exact; verification helpers raise ArithmeticError the
moment any identity fails, and the `preproj` command line runs the whole
battery and reports one line per check.
"""

__version__ = "0.1.0"

from .quiver import DoubleQuiver, type_t, type_a
from .algebra import PreprojectiveAlgebra, get_algebra

__all__ = [
    "DoubleQuiver",
    "type_t",
    "type_a",
    "PreprojectiveAlgebra",
    "get_algebra",
    "__version__",
]
