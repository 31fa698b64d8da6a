"""Exact quantum-group computations: folded quivers, highest-weight modules, crystals, R-matrices."""

from .cartan import CartanData, Weight, named, validate_cartan
from .crystal import build_crystal, crystal_isomorphic, fold_crystal, tensor_crystal
from .module import build_module
from .quiver import cartan_from_quiver, fold_from_cartan
from .tensor import TensorModule, braiding, compute_theta, verify_yang_baxter

__all__ = [
    "CartanData",
    "TensorModule",
    "Weight",
    "braiding",
    "build_crystal",
    "build_module",
    "cartan_from_quiver",
    "compute_theta",
    "crystal_isomorphic",
    "fold_crystal",
    "fold_from_cartan",
    "named",
    "tensor_crystal",
    "validate_cartan",
    "verify_yang_baxter",
]
