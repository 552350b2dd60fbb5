from .evaluate import (
    DEFAULT_SET_QUANTIFIER_CAP,
    DEFAULT_VERTEX_CAP,
    RelStructure,
    evaluate,
)
from .formulas import (
    AllSet,
    AllVertex,
    And,
    Edge,
    Eq,
    ExistsSet,
    ExistsVertex,
    FalseConst,
    Formula,
    HasLabel,
    Iff,
    Implies,
    InSet,
    ModCount,
    Not,
    Or,
    RelAtom,
    TrueConst,
    format_formula,
    free_vars,
    is_sentence,
    mod_lcm,
    quantifier_count,
    set_quantifier_rank,
    substitute_fo,
)
from .interpret import Interpretation, apply_interpretation, rewrite_formula
from .parser import parse_formula
from .transduce import (
    Transduction,
    apply_transduction,
    k_copy,
    transduction_images,
)

__all__ = [
    "AllSet",
    "AllVertex",
    "And",
    "DEFAULT_SET_QUANTIFIER_CAP",
    "DEFAULT_VERTEX_CAP",
    "Edge",
    "Eq",
    "ExistsSet",
    "ExistsVertex",
    "FalseConst",
    "Formula",
    "HasLabel",
    "Iff",
    "Implies",
    "InSet",
    "Interpretation",
    "ModCount",
    "Not",
    "Or",
    "RelAtom",
    "RelStructure",
    "Transduction",
    "TrueConst",
    "apply_interpretation",
    "apply_transduction",
    "evaluate",
    "format_formula",
    "free_vars",
    "is_sentence",
    "k_copy",
    "mod_lcm",
    "parse_formula",
    "quantifier_count",
    "rewrite_formula",
    "set_quantifier_rank",
    "substitute_fo",
    "transduction_images",
]
