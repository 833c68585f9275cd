"""Diagram groups over semigroup presentations.

Core objects: `Presentation` (oriented rewriting pairs), `Diagram`
(canonical factor chains with stacking, side-by-side sum and mirror),
`DiagramGroup` / `GroupElement` (reduced diagrams under stacking), plus the
cell-set Hilbert space embedding and the worked families in `thompson`,
`universal`, `wreath` and `zwrz`.
"""

from .presentation import (Presentation, PresentationError, parse_presentation,
                           render_presentation, word, word_str,
                           THOMPSON_F, UNIVERSAL_U, WREATH_W, CYCLIC_Z, PRESETS)
from .diagram import AtomicFactor, Diagram, DiagramError, random_diagram
from .groups import DiagramGroup, GroupElement, distance, cnd_form, element_ball, word_length
from .errors import ResourceCapError

__all__ = [
    "Presentation", "PresentationError", "parse_presentation", "render_presentation",
    "word", "word_str", "THOMPSON_F", "UNIVERSAL_U", "WREATH_W", "CYCLIC_Z", "PRESETS",
    "AtomicFactor", "Diagram", "DiagramError", "random_diagram",
    "DiagramGroup", "GroupElement", "distance", "cnd_form", "element_ball", "word_length",
    "ResourceCapError",
]

__version__ = "0.1.0"
