"""Exact ruler-and-compass constructions.

Coordinates live in a quadratic extension tower over the rationals, so every
incidence and length comparison is decided exactly.
"""
from .exactangle import RationalTurn, chord_sq, exact_cos_sin, is_constructible
from .exactfield import ConstructibleNumber, TowerContext, to_decimal
from .euclidplane import Circle, Line, Point, dist_sq, intersect
from .geoscript import Scene, format_scene, interpret, parse
from .polyverify import (
    TABLE_1, EdgeClaim, build_euclid_variant, build_paper_scene, compare_op_counts,
    identify_ngon, op_count, verify_edge, verify_table,
)
from .svg import RenderOptions, render_svg

__version__ = "0.1.0"

__all__ = [
    "Circle", "ConstructibleNumber", "EdgeClaim", "Line", "Point", "RationalTurn",
    "RenderOptions", "Scene", "TABLE_1", "TowerContext", "build_euclid_variant",
    "build_paper_scene", "chord_sq", "compare_op_counts", "dist_sq", "exact_cos_sin",
    "format_scene", "identify_ngon", "intersect", "interpret", "is_constructible",
    "op_count", "parse", "render_svg", "to_decimal", "verify_edge", "verify_table",
]
