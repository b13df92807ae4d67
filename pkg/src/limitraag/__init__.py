"""Exact computation in coherent right-angled Artin groups, their centraliser
extensions, truncated Z[t]-completions and graph towers."""

from .errors import (
    BudgetExceeded,
    InputError,
    NonAbelianCentralizer,
    NotChordal,
    RaagError,
    Unsupported,
)
from .graph import CommutationGraph, is_chordal
from .words import NormalWord, equals, normalize, parse, root
from .raag import Raag
from .centralizers import centralizer, representatives, conjugacy_representative
from .amalgam import ExtensionGroup, extend
from .discrimination import make_psi, retract, separate, bp_scan
from .zt import PolyExp, build_ice, eval_at
from .towers import TowerPresentation, add_floor, build_tower, tree_decomposition

__version__ = "0.1.0"
