"""Signature-driven syntax with binding, rewriting and checked translations."""

from .rewrite import (
    FuelExhausted,
    Normal,
    Reach,
    RewriteRule,
    RuleError,
    RuleSet,
    Step,
    format_step,
    match_rule,
    normalize,
    reduces_to,
    successors,
)
from .sorts import (
    ArityMismatch,
    DegreeMismatch,
    Sort,
    SortError,
    SortSignature,
    SortTranslation,
    SortVar,
    UnknownConstructor,
    fold_sorts,
    format_sort,
    instantiate_sort_expr,
    validate_sort,
)
from .stdlib import UnknownBuiltin, builtin, ulc_constants
from .syntax import (
    ParseError,
    load_representation,
    load_signature,
    parse_context,
    parse_representation,
    parse_signature,
    parse_sort,
    parse_term,
    print_signature,
    print_term,
)
from .terms import (
    ArgSpec,
    Arity,
    BadIndex,
    Con,
    IllSorted,
    Term,
    TermSignature,
    UnknownArity,
    Var,
    bind,
    enumerate_terms,
    rename,
    shift,
    sort_of,
    subst1,
)
from .translation import (
    NatTemplate,
    Representation,
    SortClash,
    Unrepresented,
    check_all_rules,
    check_faithful,
    check_monad_morphism,
    check_satisfies,
    retype_context,
    translate,
)

__version__ = "0.1.0"
