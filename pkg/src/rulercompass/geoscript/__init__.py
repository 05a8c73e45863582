"""The ``.geo`` construction-script language."""
from .ast import ScriptAst, Selector, format_source
from .errors import (
    ConstructionError, GeoSyntaxError, ScriptAssertionError, ScriptError,
    SelectorAmbiguityError, StaticCheckError,
)
from .interpreter import Scene, Step, UnboundNameError, format_scene, interpret, select
from .parser import check, parse, parse_expr

__all__ = [
    "ConstructionError",
    "GeoSyntaxError",
    "Scene",
    "ScriptAssertionError",
    "ScriptAst",
    "ScriptError",
    "Selector",
    "SelectorAmbiguityError",
    "StaticCheckError",
    "Step",
    "UnboundNameError",
    "check",
    "format_scene",
    "format_source",
    "interpret",
    "parse",
    "parse_expr",
    "select",
]
