"""Construct, decompose and verify Gallai colorings of complete graphs."""

__version__ = "0.1.0"

from .coloring import (
    ColorSubgraph,
    EdgeColoring,
    color_subgraph,
    new_uniform,
    random_gallai,
    read_coloring,
    substitute,
    write_coloring,
)
from .constructions import WitnessParams, efrs_witness, gr_bounds, two_color_cycle_witness
from .cycles import (
    CycleWitness,
    MultipartiteSpec,
    find_monochromatic_cycle,
    has_cycle_of_length,
    multipartite_odd_cycle,
    verify_cycle_witness,
    weave_join_cycle,
)
from .errors import (
    ConstructionError,
    FormatError,
    GforgeError,
    InvalidPartitionError,
    ParameterError,
    RainbowTriangleError,
)
from .search import Budget, SearchProblem, SearchReport, find_good_coloring, verify_upper
from .structure import (
    GallaiPartition,
    find_rainbow_triangle,
    gallai_partition,
    reduced_coloring,
    verify_partition,
)
