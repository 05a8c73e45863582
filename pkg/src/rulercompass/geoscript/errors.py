from __future__ import annotations

from typing import Optional

from .ast import Pos


class ScriptError(Exception):
    """Base class for script errors; carries the source position."""

    def __init__(self, message: str, pos: Optional[Pos] = None):
        self.message = message
        self.pos = pos
        super().__init__(f"{pos}: {message}" if pos is not None and pos.line else message)

    @property
    def line(self) -> Optional[int]:
        return self.pos.line if self.pos else None

    @property
    def col(self) -> Optional[int]:
        return self.pos.col if self.pos else None


class GeoSyntaxError(ScriptError):
    pass


class StaticCheckError(ScriptError):
    """Rebinding, use-before-definition or wrong object kind."""


class ConstructionError(ScriptError):
    """A construction step could not be carried out (empty or degenerate intersection)."""


class SelectorAmbiguityError(ConstructionError):
    pass


class ScriptAssertionError(ScriptError):
    pass
