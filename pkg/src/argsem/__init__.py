"""argsem: extension semantics, value orderings, and claim-aware attack closure
for argumentation graphs, with a line-based document format and a CLI."""

from .errors import (
    ArgumentationError,
    DocumentError,
    EnumerationCapError,
    FormulaSyntaxError,
    LabellingError,
    ShapeError,
    UnknownArgumentError,
)
from .formula import (
    And,
    Atom,
    Formula,
    Implies,
    Not,
    Or,
    parse_formula,
    render_formula,
    subformulae,
)
from .framework import AttackStatus, Framework, ValueOrder, build_framework
from .af import (
    DEFAULT_CAP,
    admissible_sets,
    is_acceptable,
    is_admissible,
    is_conflict_free,
    preferred_extensions,
    preferred_extensions_bruteforce,
    sort_extensions,
    stable_extensions,
    stable_extensions_bruteforce,
)
from .vaf import (
    Chain,
    ChainAnalysis,
    ClassificationReport,
    classify_by_enumeration,
    classify_by_paths,
    defeat_graph,
    defeats,
    dichromatic_cycle_preferred,
    enumerate_orders,
    extract_chains,
    order_for,
    vaf_preferred_extensions,
    vaf_stable_extensions,
)
from .saf import (
    CAP_SET,
    MAP_SET,
    ClosureTrace,
    PrincipleSet,
    apply_principles,
    argumentative_consequence,
    close_logically,
    consequence_over_collection,
    consequence_sets,
    consequence_sets_over_collection,
    is_logically_closed,
)
from .svaf import (
    consequence_base,
    is_value_closed,
    objective_consequence,
    subjective_consequence,
    subjective_consequence_witnesses,
    svaf_apply_principles,
    svaf_close_logically,
    svaf_consequence_sets,
    svaf_consequence_sets_objective,
    svaf_consequence_sets_subjective,
    svaf_defeats,
    svaf_validate,
    value_closure_missing,
)
from .document import load_document, parse_document, serialize_document
from .export import export_dot, render_figure

__version__ = "0.1.0"
