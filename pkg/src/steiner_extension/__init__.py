"""Steiner subgraph extension and p-edge-connected vertex deletion.

Representative-family dynamic programming over linear matroids, with
brute-force oracles for cross-checking.
"""

from .connectivity import (
    SegmentPartition,
    feasible_deletion,
    feasible_superset,
    is_p_edge_connected,
    min_cut_value,
    p_segments,
)
from .deletion import (
    enumerate_minimal_hitting_sets,
    solve_bdds,
    solve_pvc,
    solve_pw1ds,
    solve_scattered,
    solve_tdds,
)
from .generators import generate
from .graph import (
    EquivalentDigraph,
    Graph,
    GraphError,
    Ordering,
    TreeDecomposition,
    degeneracy_ordering,
    equivalent_digraph,
    ordering_from_cutwidth_layout,
    ordering_from_tree_decomposition,
)
from .instance_io import Instance, InstanceFormatError, parse_instance, write_instance
from .linalg import PrimeField
from .matroid import (
    ArcTriple,
    GroundElement,
    LinearMatroid,
    build_sse_matroid,
    direct_sum,
    graphic_representation,
    is_independent,
    out_partition_representation,
    truncate,
    uniform_representation,
)
from .obstructions import (
    Obstruction,
    Pw1Structure,
    closest_forbidden_pair,
    find_obstruction_t2c3c4,
    find_path_subgraph,
    find_td_obstruction,
    is_pathwidth_le1,
    pw1_structure,
    treedepth,
)
from .repfam import SetFamily, extends, reduce_family
from .sse import DpSlot, DpTable, SseResult, back_neighbor_sets, solve_extension

__version__ = "0.1.0"
