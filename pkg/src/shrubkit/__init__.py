"""Tree-models, SC-trees, conversions between depth-style graph measures,
exact desk-scale membership solvers, and a small CMSO1 logic engine."""

from .constructions import (
    biclique_model,
    clique_model,
    make_biclique,
    make_clique,
    make_path,
    path_model,
    subdivided_matching_biclique,
    subdivided_matching_biclique_model,
)
from .depth import (
    EliminationForest,
    closure,
    forest_from_text,
    forest_to_text,
    td_to_tm,
    tree_depth,
    validate_td,
)
from .errors import (
    DomainError,
    FormulaParseError,
    ResourceLimitError,
    ShrubError,
    SignatureConflict,
    ValidationError,
)
from .graph import (
    Graph,
    are_isomorphic,
    canonical_form,
    complement_on_subset,
    components,
    graph_from_text,
    graph_to_text,
    induced_subgraph,
    is_induced_subgraph,
    neighbourhood_diversity,
    relabel_graph,
    twin_partition,
)
from .lincw import (
    LinCwExpression,
    eval_lincw,
    lincw_from_text,
    lincw_to_text,
    tm_to_lincw,
)
from .rooted_tree import RootedTree, subtree_on
from .sc_model import (
    SCTree,
    evaluate_sc,
    pad_sc,
    sc_from_text,
    sc_to_text,
    sc_to_tm,
    tm_to_sc,
)
from .solver import (
    enumerate_graphs,
    minimal_obstructions,
    sc_membership,
    tm_membership,
    tmc_membership,
)
from .tree_model import (
    ColoredTree,
    CopiedTreeModel,
    TreeModel,
    add_leaf_level,
    canonical_code,
    colored_tree_from_text,
    colored_tree_to_text,
    complement_model,
    grow_leaf,
    infer_signature,
    lift_depth,
    model_from_text,
    model_to_text,
    realize,
    reduce_tree,
    restrict,
    verify,
    verify_k_copied,
)

__version__ = "0.1.0"
