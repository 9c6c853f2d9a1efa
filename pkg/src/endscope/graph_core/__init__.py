from .epvs import Epvs, VertexId, core, parse_vertex, set_algebra, tv
from .periodic import Component, components, is_connected
from .presentation import (
    EpgPresentation,
    PresentationError,
    TailSpec,
    ValidationReport,
    require_valid,
    validate,
)
from .textformat import ParseError, emit_presentation, parse_presentation
from .unfold import unfold
from .upis import Upis
from .zoo import ZOO, example

__all__ = [
    "Component",
    "Epvs",
    "EpgPresentation",
    "ParseError",
    "PresentationError",
    "TailSpec",
    "Upis",
    "ValidationReport",
    "VertexId",
    "ZOO",
    "components",
    "core",
    "emit_presentation",
    "example",
    "is_connected",
    "parse_presentation",
    "parse_vertex",
    "require_valid",
    "set_algebra",
    "tv",
    "unfold",
    "validate",
]
