"""cwkit: certified clique-width expressions for chordal graph subclasses.

The toolkit bundles an immutable bitmask graph core with graph6 support, a
catalog of named small graphs, structural recognizers (chordality, split
partitions, modular decomposition, k-webs, spiders, pruning sequences), the
clique-width expression calculus, an exact small-graph solver, constructive
bounded-width builders, classification oracles, and a decomposition
certificate engine, all behind one CLI.
"""

from .core import (
    Graph,
    bipartite_complement,
    blocks,
    complement,
    delete_vertices,
    disjoint_union,
    induced_subgraph,
    subgraph_complement,
)
from .codec import parse_edge_list, parse_graph6, write_edge_list, write_graph6
from .catalog import CatalogError, catalog_lookup, catalog_names
from .iso import induced_subgraph_isomorphic, is_isomorphic
from .recognize import (
    KWeb,
    ModularDecompositionTree,
    Peo,
    PruningSequence,
    Spider,
    SplitPartition,
    chordal_peo,
    detect_kweb,
    detect_spider,
    find_hole,
    is_weakly_chordal,
    max_clique_chordal,
    modular_decomposition,
    pruning_sequence,
    simplicial_vertices,
    split_partition,
)
from .expr import (
    CwExpression,
    Join,
    Leaf,
    Rename,
    Union,
    evaluate,
    parse_expr,
    serialize,
    substitute_modules,
    validate,
    width,
)
from .exact import decide_cw_le, exact_cw
from .builders import (
    BuildReport,
    BuilderError,
    build_auto,
    build_bullfree_chordal,
    build_cliquetree_expr,
    build_cochair_chordal,
    build_cograph_expr,
    build_dh_expr,
    build_forest_expr,
    build_kweb_expr,
    build_maxdeg2_expr,
    build_thick_spider_expr,
)
from .classify import (
    ClassificationVerdict,
    classify_chordal,
    classify_split,
    classify_weakly_chordal,
)
from .certificate import (
    DecompositionCertificate,
    DecompositionError,
    decompose_blockwise,
    decompose_cok13_2p1,
    verify_certificate,
)
from .generate import GenSpec, SplitMix64, gen_chordal, gen_hfree_chordal, gen_split

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
