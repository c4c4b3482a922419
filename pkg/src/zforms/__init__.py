"""Exact workbench for universal quadratic forms over totally real number fields."""

from .fields import FieldElement, FieldSpec, NumberField, load_field, resolve_field
from .lattice import ZForm, minima, parse_form

__all__ = [
    "FieldElement",
    "FieldSpec",
    "NumberField",
    "ZForm",
    "load_field",
    "minima",
    "parse_form",
    "resolve_field",
]
