"""Motif statistics for sparse step-graphon random graphs.

Library layout:

- ``motif``       exact motif combinatorics (isomorphism, density exponents,
                  joins, embedding counts)
- ``graphon``     step graphons and their exact density analytics
- ``sampler``     seeded generation of sparse graphon random graphs
- ``counting``    subgraph counts and the edge/label variance decomposition
- ``stats``       standardization, KS goodness of fit, variance ratios
- ``experiments`` Monte Carlo campaigns over the above
- ``cli``         command-line front end
"""

from .motif import (
    Motif,
    DensityProfile,
    JoinCatalog,
    named_motif,
    canonical_form,
    canonical_relabel,
    is_isomorphic,
    automorphism_count,
    copies_in_complete,
    density_exponents,
    vertex_join,
    join_catalog,
    count_embeddings,
)
from .graphon import (
    StepGraphon,
    RegularityReport,
    named_graphon,
    hom_density,
    multipoint_density,
    rooted_density,
    mean_rooted_density,
    degree_function,
    regularity_report,
    is_motif_regular,
    projection_variance,
    critical_edge_variance_share,
    critical_edge_variance_share_closed_form,
)
from .sampler import (
    SampledGraph,
    SparsitySchedule,
    sample,
    resample_edges,
    schedule_rho,
    classify_regime,
    critical_schedule,
)
from .counting import (
    Decomposition,
    OrdersReport,
    count,
    expected_count,
    conditional_expected_count,
    decompose,
    label_ustatistic,
    exact_variance,
    conditional_variance,
    mean_variance_orders,
)
from .stats import (
    NormalityReport,
    standardize,
    normal_cdf,
    ks_test,
    variance_ratio,
)
from .experiments import (
    ExperimentConfig,
    ExperimentResult,
    run_experiment,
    run_containment,
    run_clt,
    run_variance_ratio,
    run_critical_kappa,
    run_conditional_clt,
)

__version__ = "0.1.0"
