"""The 27 periodic tilings whose quotients can be 2-uniform toroidal maps."""

from .io import SchemaError, builtin_specs, dump_spec, load_spec, spec, spec_to_dict, TILINGS_ENV
from .model import (
    AffineSymmetry,
    Edge,
    ExactCoord,
    QSqrt3,
    TilingSpec,
    Vertex,
    canonical_cycle,
    parse_vertex_type,
    same_vertex_type,
)
from .validate import ValidationReport, validate

V0 = {
    1: 12, 2: 8, 3: 4, 4: 3, 5: 7, 6: 14, 7: 7, 8: 4, 9: 12, 10: 8, 11: 12, 12: 3, 13: 4, 14: 12,
    15: 3, 16: 8, 17: 18, 18: 5, 19: 5, 20: 18, 21: 6, 22: 6, 23: 4, 24: 3, 25: 6, 26: 12, 27: 4,
}

__all__ = [
    "AffineSymmetry", "Edge", "ExactCoord", "QSqrt3", "SchemaError", "TilingSpec", "V0",
    "ValidationReport", "Vertex", "builtin_specs", "canonical_cycle", "dump_spec", "load_spec",
    "parse_vertex_type", "same_vertex_type", "spec", "spec_to_dict", "validate", "TILINGS_ENV",
]
