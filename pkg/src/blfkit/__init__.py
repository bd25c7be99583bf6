"""Base diagrams, surgery calculus and chart-level residue checks for
boundary Lefschetz fibrations on 4-manifolds."""

from .catalog import (
    CatalogEntry,
    DiscrepancyError,
    InadmissibleError,
    InvariantReport,
    building_block,
    family_X,
    family_Y,
    verify_entry,
)
from .diagram import (
    BoundaryCircle,
    DiagramError,
    DivisorComponent,
    DualPairError,
    DualPairEvidence,
    FibrationDiagram,
    LefschetzPoint,
    ValidationError,
    admits_elliptic_symplectic,
    admits_stable_gcs,
    canonical_form,
    corner_connected_sum,
    euler_characteristic,
    is_isomorphic,
    self_connected_sum,
    total_parity,
    trade_corner_to_lefschetz,
    trade_lefschetz_to_corner,
    validate,
)
from .homology2 import Cycle, MappingClass, apply, compose, dehn_twist, is_dual_pair, is_primitive
from .io import canonical_bytes, parse_diagram, serialize_diagram
from .render import render_svg

__version__ = "0.1.0"
