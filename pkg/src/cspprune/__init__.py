"""Binary CSP preprocessing by forbidden-pattern variable and value
elimination, with solution reconstruction and a brute-force oracle."""

from .ac import ACResult, enforce_ac, is_arc_consistent
from .algebra import (
    OccurrenceWitness,
    equivalent,
    is_irreducible,
    is_sub_pattern,
    occurs_anywhere,
    occurs_at,
    occurs_generic,
    reduction_closure,
    reductions,
)
from .catalog import get_pattern, list_catalog, normalize_name
from .engine import (
    DirectiveError,
    EngineConfig,
    EngineError,
    eliminate_value,
    eliminate_variable,
    parse_script,
    preprocess,
    val_eliminable,
    var_eliminable,
)
from .fixtures import FixtureError, fixture, list_fixtures, make_ij, random_instance
from .formats import (
    FormatError,
    instance_fingerprint,
    parse_instance,
    parse_pattern,
    parse_trace,
    serialize_instance,
    serialize_pattern,
    serialize_trace,
)
from .model import (
    Instance,
    InstanceError,
    Pattern,
    PatternError,
    is_partial_solution,
    is_solution,
    make_instance,
    make_pattern,
)
from .oracle import (
    SearchSpaceError,
    brute_occurs,
    count_solutions,
    enumerate_solutions,
    solve,
)
from .reconstruct import (
    ReconstructionError,
    greedy_solve,
    recover_all,
    recover_one,
    replay_forward,
)
from .trace import (
    RULE_IDS,
    VAL_RULES,
    VAR_RULES,
    ElimRecord,
    EliminationTrace,
)

__version__ = "1.0.0"

__all__ = [
    "ACResult",
    "DirectiveError",
    "ElimRecord",
    "EliminationTrace",
    "EngineConfig",
    "EngineError",
    "FixtureError",
    "FormatError",
    "Instance",
    "InstanceError",
    "OccurrenceWitness",
    "Pattern",
    "PatternError",
    "ReconstructionError",
    "RULE_IDS",
    "SearchSpaceError",
    "VAL_RULES",
    "VAR_RULES",
    "brute_occurs",
    "count_solutions",
    "eliminate_value",
    "eliminate_variable",
    "enforce_ac",
    "enumerate_solutions",
    "equivalent",
    "fixture",
    "get_pattern",
    "greedy_solve",
    "instance_fingerprint",
    "is_arc_consistent",
    "is_irreducible",
    "is_partial_solution",
    "is_solution",
    "is_sub_pattern",
    "list_catalog",
    "list_fixtures",
    "make_ij",
    "make_instance",
    "make_pattern",
    "normalize_name",
    "occurs_anywhere",
    "occurs_at",
    "occurs_generic",
    "parse_instance",
    "parse_pattern",
    "parse_script",
    "parse_trace",
    "preprocess",
    "random_instance",
    "recover_all",
    "recover_one",
    "reduction_closure",
    "reductions",
    "replay_forward",
    "serialize_instance",
    "serialize_pattern",
    "serialize_trace",
    "solve",
    "val_eliminable",
    "var_eliminable",
]
