"""Adaptive physical-layer network coding for the three-way 4-PSK relay channel.

Subpackages cover the exact signal-set arithmetic (constellation), the
enumeration of singular fade subspaces (fadespace), relay map construction
and validation (latincube), distance metrics and adaptive map selection
(metrics), and the end-to-end Monte Carlo BER simulator (simulator).
"""

from .constellation import DiffClass, GaussianInt, classify_diff, diff_set, mu, mu_inv
from .fadespace import (
    DiffVector,
    SubspaceClass,
    canonical,
    class_by_id,
    class_of,
    enumerate_classes,
    is_removable,
    orbit_size,
    proportional,
)
from .latincube import (
    CellPartition,
    LabelNotInSliceError,
    Node,
    NonRemovableClassError,
    RelayMap,
    complete,
    constraints_for,
    exclusive_law_ok,
    invert,
    map_for_class,
    removes,
    xor_map,
)
from .metrics import (
    FadeState,
    MapCatalog,
    dmin_cluster,
    dmin_fade,
    effective_constellation,
    is_singular,
    select_map,
)
from .simulator import (
    BerRecord,
    ChannelModel,
    ConfigError,
    Scheme,
    SimConfig,
    bc_modulate,
    ma_phase_ml,
    node_decode,
    rician_sample,
    run_sim,
)

__all__ = [
    "BerRecord",
    "CellPartition",
    "ChannelModel",
    "ConfigError",
    "DiffClass",
    "DiffVector",
    "FadeState",
    "GaussianInt",
    "LabelNotInSliceError",
    "MapCatalog",
    "Node",
    "NonRemovableClassError",
    "RelayMap",
    "Scheme",
    "SimConfig",
    "SubspaceClass",
    "bc_modulate",
    "canonical",
    "class_by_id",
    "class_of",
    "classify_diff",
    "complete",
    "constraints_for",
    "diff_set",
    "dmin_cluster",
    "dmin_fade",
    "effective_constellation",
    "enumerate_classes",
    "exclusive_law_ok",
    "invert",
    "is_removable",
    "is_singular",
    "ma_phase_ml",
    "map_for_class",
    "mu",
    "mu_inv",
    "node_decode",
    "orbit_size",
    "proportional",
    "removes",
    "rician_sample",
    "run_sim",
    "select_map",
    "xor_map",
]
