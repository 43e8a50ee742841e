"""fanpart: embedding graphs into blowups of fans.

A library of partition and decomposition machinery for fan-partitions of
graphs: graph families and products, (k,w)-fan-partition checkers and
converters, tree-/star-decomposition utilities, executable constructive
transformations culminating in a pipeline that fan-partitions a graph from
an adhesion-bounded apexed tree-decomposition, pluggable flexible-fan
oracles, and brute-force verifiers for every definition at desk scale.
"""

from .errors import (
    BoundExceededError,
    InvalidCertificateError,
    InvalidDecompositionError,
    InvalidPartitionError,
    TooLargeError,
)
from .graphs import (
    Graph,
    blowup,
    connected_components,
    contains_subgraph,
    graph_power,
    has_minor,
    induced_subgraph,
    is_subgraph_of_fan,
    make_complete,
    make_cycle,
    make_fan,
    make_grid,
    make_ktree,
    make_path,
    make_star,
    quotient,
    read_edge_list,
    strong_product,
    write_edge_list,
)
from .partitions import (
    FanPartition,
    WidthReport,
    brute_force_fan_partition,
    brute_force_min_fan_width,
    check_fan_partition,
    check_path_partition,
    fan_partition_to_embedding,
    width,
)
from .treedecomp import (
    StarDecomposition,
    TreeDecomposition,
    WeightedTree,
    adhesion,
    exact_pathwidth,
    exact_treewidth,
    heuristic_treedecomp,
    split_to_stars,
    torso,
    validate,
    validate_star,
)
from .lemmas import (
    AuxiliaryGraph,
    OracleBounds,
    ProductEmbedding,
    SweepRow,
    absorb_apices,
    build_auxiliary,
    canonical_flexibility,
    contract_to_universal_fan,
    extend_pendants,
    lift_star_decomposition,
    minor_free_pipeline,
    pipeline_bounds,
    power_path_partition,
    sweep_flexibility,
    sweep_to_csv,
    tree_deletion_set,
    validate_product_embedding,
)
from .oracles import (
    ExactOracle,
    FlexOracleResult,
    SeparatorOracle,
    certified_oracle,
    exact_oracle,
    separator_oracle,
)

__version__ = "0.1.0"
