"""Torsion pairs in the cluster categories of type A_n and A_infinity.

Arcs of a polygon (or of the infinity-gon) stand for indecomposable objects,
Ptolemy diagrams for torsion classes, and D-mutation rotates arcs inside the
cells cut out by a rigid set D.
"""

from .arcs import (
    Arc,
    Diagram,
    ExchangeTriangle,
    Fountain,
    Model,
    crosses,
    exchange_triangles,
    ext1_dim,
    hom_dim,
    materialize,
    shift,
    shift_diagram,
)
from .document import parse, serialize
from .enumeration import OrbitGraph, all_ptolemy, orbit_graph, theorem_suite
from .errors import (
    ArcError,
    DiagramError,
    DocumentError,
    InvalidMutatingSet,
    MutationError,
    NotPtolemy,
    PtolemyError,
    TriangleCheckFailed,
    WindowOverflow,
)
from .mutation import (
    DCell,
    DCellPartition,
    d_cells,
    mutate,
    mutate_arc,
    validate_d,
    verify_all_triangles,
    verify_mutation_triangle,
)
from .render import export_dot, render_svg
from .torsion import (
    TorsionClassification,
    classify,
    core,
    ext_projectives,
    is_ptolemy,
    is_torsion_closure,
    perp_left,
    perp_right,
)

__all__ = [
    "Arc", "ArcError", "DCell", "DCellPartition", "Diagram", "DiagramError", "DocumentError",
    "ExchangeTriangle", "Fountain", "InvalidMutatingSet", "Model", "MutationError", "NotPtolemy",
    "OrbitGraph", "PtolemyError", "TorsionClassification", "TriangleCheckFailed", "WindowOverflow",
    "all_ptolemy", "classify", "core", "crosses", "d_cells", "exchange_triangles", "export_dot",
    "ext1_dim", "ext_projectives", "hom_dim", "is_ptolemy", "is_torsion_closure", "materialize",
    "mutate", "mutate_arc", "orbit_graph", "parse", "perp_left", "perp_right", "render_svg",
    "serialize", "shift", "shift_diagram", "theorem_suite", "validate_d", "verify_all_triangles",
    "verify_mutation_triangle",
]
