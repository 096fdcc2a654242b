"""Vietoris-Rips persistent homology engine.

Pipeline: point cloud -> distance matrix -> Vietoris-Rips filtration ->
GF(2) column reduction -> persistence barcode -> Betti numbers / SVG
plots / p-Wasserstein comparisons. Everything is deterministic and pure;
see the README for the CLI walkthrough.
"""

from .errors import ComputationError, InputError, PhomError, ResourceError
from .geometry import (
    DistanceMatrix,
    PointCloud,
    distance_matrix,
    euclidean_distance,
    read_point_csv,
    rescale_unit_box,
    write_point_csv,
)
from .generators import (
    ModalResult,
    MsdConfig,
    gen_fibonacci_sphere,
    gen_msd_manifold,
    gen_sphere_latlon,
    natural_frequencies,
    read_msd_config,
    stiffness_matrix,
    write_msd_config,
)
from .homology import (
    BoundaryMatrix,
    SignedChain,
    betti_numbers,
    boundary_signed,
    boundary_squared_is_zero,
    build_boundary_matrix,
)
from .persistence import (
    Barcode,
    Pairing,
    PersistenceInterval,
    betti_curve,
    intervals,
    read_barcode_csv,
    reduce,
    write_barcode_csv,
)
from .svgplot import render_barcode_svg, render_diagram_svg
from .vr import (
    DIAMETER_EPS,
    EDGE_RULES,
    PAPER_2EPS,
    Filtration,
    Simplex,
    build_vr,
    fully_connected_eps,
    simplex_birth,
)
from .wasserstein import MatchingProblem, diagonal_cost, interval_cost, wasserstein_p

__version__ = "0.1.0"

__all__ = [
    "Barcode",
    "BoundaryMatrix",
    "ComputationError",
    "DIAMETER_EPS",
    "DistanceMatrix",
    "EDGE_RULES",
    "Filtration",
    "InputError",
    "MatchingProblem",
    "ModalResult",
    "MsdConfig",
    "PAPER_2EPS",
    "Pairing",
    "PersistenceInterval",
    "PhomError",
    "PointCloud",
    "ResourceError",
    "SignedChain",
    "Simplex",
    "betti_curve",
    "betti_numbers",
    "boundary_signed",
    "boundary_squared_is_zero",
    "build_boundary_matrix",
    "build_vr",
    "diagonal_cost",
    "distance_matrix",
    "euclidean_distance",
    "fully_connected_eps",
    "gen_fibonacci_sphere",
    "gen_msd_manifold",
    "gen_sphere_latlon",
    "interval_cost",
    "intervals",
    "natural_frequencies",
    "read_barcode_csv",
    "read_msd_config",
    "read_point_csv",
    "reduce",
    "render_barcode_svg",
    "render_diagram_svg",
    "rescale_unit_box",
    "simplex_birth",
    "stiffness_matrix",
    "wasserstein_p",
    "write_barcode_csv",
    "write_msd_config",
    "write_point_csv",
]
