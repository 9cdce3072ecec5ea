"""
Domain package for the persistence Quillen-McCord toolkit.

Pure computations on posets, persistence posets, simplicial complexes and
persistence modules, independent of files, the command line and rendering.
"""

from .barcodes import (
    AcyclicityResult,
    Barcode,
    Interval,
    acyclicity_measure,
    bottleneck_distance,
    interval_decomposition,
    min_interleaving_eps,
    module_from_barcode,
    point_module,
    rank_invariant,
)
from .homology import (
    HomologyBasis,
    PersistenceModule,
    betti_numbers,
    boundary_matrices,
    induced_homology_map,
    persistence_module_of,
    persistence_modules_of,
    validate_persistence_module,
)
from .oracle import OracleCaps, brute_force_interleaving_check
from .persistence import (
    INF,
    PersistencePoint,
    PersistencePoset,
    PersistencePosetMap,
    enumerate_persistence_points,
    persistence_fiber,
    persistence_mapping_cylinder,
    persistence_point,
    remove_persistence_point,
    validate_persistence_map,
    validate_persistence_poset,
)
from .poset import (
    FinitePoset,
    MonotoneMap,
    Side,
    mapping_cylinder,
    validate_monotone_map,
    validate_poset,
)
from .simplicial import (
    SimplicialComplex,
    SimplicialMap,
    induced_simplicial_map,
    is_contiguous,
    join,
    order_complex,
    star_link,
)

__all__ = [
    "INF",
    "FinitePoset",
    "MonotoneMap",
    "Side",
    "validate_poset",
    "validate_monotone_map",
    "mapping_cylinder",
    "PersistencePoset",
    "PersistencePoint",
    "PersistencePosetMap",
    "validate_persistence_poset",
    "validate_persistence_map",
    "persistence_point",
    "enumerate_persistence_points",
    "remove_persistence_point",
    "persistence_fiber",
    "persistence_mapping_cylinder",
    "SimplicialComplex",
    "SimplicialMap",
    "order_complex",
    "induced_simplicial_map",
    "join",
    "star_link",
    "is_contiguous",
    "HomologyBasis",
    "PersistenceModule",
    "boundary_matrices",
    "betti_numbers",
    "induced_homology_map",
    "persistence_module_of",
    "persistence_modules_of",
    "validate_persistence_module",
    "Interval",
    "Barcode",
    "AcyclicityResult",
    "rank_invariant",
    "interval_decomposition",
    "module_from_barcode",
    "point_module",
    "bottleneck_distance",
    "min_interleaving_eps",
    "acyclicity_measure",
    "OracleCaps",
    "brute_force_interleaving_check",
]
