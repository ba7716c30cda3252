"""Exact invariant-form computations on the Iwasawa manifold.

Modules: scalars (Gaussian rationals, polynomials, jets), exterior (forms
on the invariant coframe), deformation (Kuranishi frames), cohomology,
hodge (metrics and Laplacians), mirror (intersection forms, coordinates,
mirror maps), checks (acceptance registry) and cli.
"""
from .scalars import GScalar, ParamPoint, parse_scalar
from .exterior import Form, parse_form, render
from .deformation import build_structure

__version__ = "1.0.0"
__all__ = ["GScalar", "ParamPoint", "parse_scalar", "Form", "parse_form", "render",
           "build_structure", "__version__"]
