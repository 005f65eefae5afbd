"""Enhanced power graphs of finite groups and their invariants."""

from .errors import (BoundExceeded, EmptyGraphError, EpgError, InvalidGroupError,
                     NonConvergence, NotApplicable, NotNilpotentError, OrderLimitExceeded,
                     SearchBudgetExceeded, SpecSyntaxError)
from .graphs import (Graph, commuting_graph_full, complement, enhanced_power_graph,
                     induced_subgraph, power_graph, proper_enhanced_power_graph, remove_isolated)
from .groups import (Group, GroupSpec, build_group, classify_sylow, count_prime_order_subgroups,
                     cyclic_subgroup, element_order, is_nilpotent, load_cayley_table,
                     nilpotent_profile, parse_group_spec, sylow_decomposition)
from .metrics import (connected_components, diameter, domination_number_exact,
                      dominating_vertices, greedy_domination_upper, metric_report,
                      vertex_connectivity)
from .numtheory import euler_phi, gcd
from .oracle import (alpha_bound, beta_bound, predict, predict_component_count,
                     predict_diameter, predict_dom_set, predict_domination_number,
                     predict_kappa, predict_proper_connectivity, verify)
from .spectrum import (check_eta_theorem, check_join_relation, laplacian, laplacian_spectrum,
                       multiplicity_of_eigenvalue_n, spectral_radius_multiplicity,
                       spectrum_report)

__version__ = "0.1.0"
