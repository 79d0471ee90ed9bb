"""Exact computations over quantum complete intersections: modules, bimodules,
minimal resolutions and rank varieties."""

from .algebra import AlgebraElement, AlgebraSpec, DiagonalAutomorphism, multiply, u_lambda
from .exactfield import FieldElement, FieldSpec, derive_a_bar, find_primitive_root
from .homology import complexity_estimate, is_projective, resolve, syzygy, top
from .modules import (
    BimoduleRep,
    ModuleMap,
    ModuleRep,
    cyclic_u_module,
    free_module,
    simple_module,
    tensor_bimodule_module,
    tensor_bimodules,
    twist,
    twisted_bimodule,
)
from .variety import ProjPoint, VarietySet, F_map, line_of, point_in_rank_variety, support_variety
from .verify import run_corollary_demo, run_counterexample

__all__ = [
    "AlgebraElement", "AlgebraSpec", "DiagonalAutomorphism", "multiply", "u_lambda",
    "FieldElement", "FieldSpec", "derive_a_bar", "find_primitive_root",
    "complexity_estimate", "is_projective", "resolve", "syzygy", "top",
    "BimoduleRep", "ModuleMap", "ModuleRep", "cyclic_u_module", "free_module", "simple_module",
    "tensor_bimodule_module", "tensor_bimodules", "twist", "twisted_bimodule",
    "ProjPoint", "VarietySet", "F_map", "line_of", "point_in_rank_variety", "support_variety",
    "run_corollary_demo", "run_counterexample",
]
