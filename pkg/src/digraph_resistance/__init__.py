"""Effective resistance on directed graphs: Lyapunov pipeline, closed forms, identity sweeps."""
from .closed_forms import (
    cycle_resistance,
    dispatch_resistance,
    edge_resistance,
    excess_decay_ratio,
    path_resistance,
    star_investigation,
    tree_excess,
    tree_r_n1,
    tree_recurrence,
    tree_resistance,
    tree_table,
)
from .edgelist import format_edge_list, parse_edge_list, read_edge_list
from .errors import *  # noqa: F401,F403
from .graph import (
    Cycle,
    DiGraph,
    Other,
    Path,
    Permutation,
    TwoBranchUnitTree,
    classify_connection,
    find_degree_permutation,
    is_connected,
    laplacian,
    strongly_connected_components,
    symmetrize,
)
from .lyapunov import (
    DEFAULT_TOL,
    ProjectionBasis,
    build_q,
    pipeline,
    resistance,
    resistance_matrix,
    solve_sigma,
    x_from_resistances,
    x_path_entry,
)
from .report import Report
from .series import CATALOG, IdentityId, SweepBounds, binomial, eval_identity

__version__ = "0.1.0"
