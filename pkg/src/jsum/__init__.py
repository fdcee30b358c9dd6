"""Jacobi sums of order l^2 and 2l^2 over finite fields, computed exactly."""

from .cycring import CycInt, lambda_valuation
from .fieldtab import IndexedField, build_field, load_or_build
from .kernels import BACKEND

__all__ = ["BACKEND", "CycInt", "IndexedField", "build_field", "lambda_valuation", "load_or_build"]
__version__ = "0.1.0"
