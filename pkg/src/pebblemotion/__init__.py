"""Pebble-movement problems on graphs: exact, approximate, and brute-force solvers.

Pebbles sit on vertices of a connected graph and must be moved so that their
final positions form a connected set, an independent set, a clique, or a
separator of two terminals, while minimizing the total movement, the maximum
movement, or the number of moved pebbles.
"""

from .approx import (
    approx_clique_max,
    approx_clique_num,
    approx_clique_sum,
    approx_ind_max,
    approx_stcut_max,
    approx_stcut_sum,
    exact_clique_num_mwc,
    maximum_independent_set,
    stcut_sum_via_num,
)
from .distribution import DistributionTable, optimal_distribution
from .errors import (
    GuardError,
    InstanceError,
    NoVertexCutError,
    ParseError,
    PebbleMotionError,
    SolverError,
)
from .gadgets import (
    Cnf3,
    GadgetInstance,
    gen_clique_max_from_domclique,
    gen_clique_num_from_vc,
    gen_clique_sum_from_vc,
    gen_ind_gadget,
    gen_stcut_gadget,
    parse_dimacs_cnf,
    sat_bruteforce,
)
from .graphs import Graph, RootedTree, bfs_distances, centroid, is_connected_subset
from .instance_io import parse_instance, parse_solution, write_instance, write_solution
from .model import (
    Goal,
    GoalKind,
    Guarantee,
    Infeasible,
    Instance,
    Measure,
    Solution,
    SolveReport,
    make_report,
    predicate_holds,
    solution_cost,
    validate,
)
from .oracle import oracle_bounded, oracle_ind, oracle_solve
from .paths import PathInstance, greedy_feasible, solve_ind_max_on_path_instance, solve_ind_max_path
from .primitives import (
    BipartiteGraph,
    Matching,
    max_bipartite_matching,
    max_independent_set_bipartite,
    max_weight_clique,
    min_st_vertex_cut,
    vertex_cover_2approx,
)
from .tree_dp import (
    solve_con_num_tree,
    solve_con_sum_tree,
    solve_ind_num_tree,
    solve_ind_sum_tree,
)

__version__ = "0.1.0"
