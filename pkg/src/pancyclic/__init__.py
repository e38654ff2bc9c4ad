"""Constructive cycle-spectrum certificates over a planted Hamilton cycle,
plus the seeded experiment harness around them."""

from .adversaries import (
    ADVERSARY_KINDS,
    BIPARTITE_EVEN,
    NEAR_BIPARTITE_ODD,
    TRIANGLE_BREAKER,
    UNIFORM_THIN,
    AdversarySpec,
    adversary_bipartite_even,
    adversary_near_bipartite_odd,
    adversary_triangle_breaker,
    adversary_uniform_thin,
    apply_adversary,
)
from .expansion import (
    ExpansionError,
    ShortCycleRun,
    SpecialVertexReport,
    exact_expansion_violator,
    find_special_vertex,
    peel_min_degree,
    posa_path,
    sampled_expansion_check,
    short_cycles_without_hamilton,
)
from .experiments import (
    CheckReport,
    ExperimentConfig,
    ExperimentReport,
    run_lemma_checks,
    run_spectrum,
    run_threshold_sweep,
)
from .geometry import (
    VARIANT_I,
    VARIANT_II,
    CrossingPair,
    CycleCertificate,
    DirectionSlice,
    Shortcut,
    circ_distance,
    cycles_from_crossing,
    cycles_from_shortcut,
    direction_of,
    direction_slice,
    hamilton_certificate,
    is_close_crossing,
    is_crossing,
    validate_shortcut,
    verify_certificate,
)
from .graphs import (
    CycleLabeling,
    Graph,
    read_edge_list,
    read_labeling,
    write_edge_list,
    write_labeling,
)
from .hypergraph import (
    BoundednessEstimate,
    DensityReport,
    GuardExceeded,
    ShortcutHypergraph,
    build_shortcut_hypergraph,
    check_density,
    count_shortcuts,
    estimate_boundedness,
    graph_edge_subset,
)
from .random_graphs import (
    GnpParams,
    RngSeed,
    chernoff_tail,
    plant_hamilton,
    sample_gnp,
    splitmix64,
    subsample_coupling,
)
from .spectrum import (
    NO_CROSSING,
    NO_ODD_CYCLE,
    NO_SHORTCUT,
    RANGE_EMPTY,
    CycleSpectrum,
    MissingLength,
    SpectrumRequest,
    find_all_cycles,
    find_medium_cycle,
    find_shortcut,
    find_tiny_cycles,
    good_directions,
    stage_failure,
)

__version__ = "0.1.0"
