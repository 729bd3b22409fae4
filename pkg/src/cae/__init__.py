"""Arc combinatorics and thick subcategories of completed type A-infinity cluster categories."""

from .arcs import Arc, ArcKind, classify, crosses, ext1_dim, extension_middle, hom_dim, make_arc, suspend
from .homology import DirectSum, generator_M, standard_generator_E
from .partitions import Partition
from .surface import Acc, Reg, Surface

__all__ = [
    "Acc",
    "Arc",
    "ArcKind",
    "DirectSum",
    "Partition",
    "Reg",
    "Surface",
    "classify",
    "crosses",
    "ext1_dim",
    "extension_middle",
    "generator_M",
    "hom_dim",
    "make_arc",
    "standard_generator_E",
    "suspend",
]
