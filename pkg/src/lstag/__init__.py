"""Tree adjoining grammar engine with synchronous pairing and link sharing."""

from .engine import (
    EnumerationBudget,
    EnumerationItem,
    EnumerationResult,
    enumerate_derivations,
    language_sample,
)
from .errors import (
    AddressNotFound,
    CardinalityViolation,
    ClassMismatch,
    Diagnostic,
    DuplicateAdjunction,
    EdgeAddressInvalid,
    GroupNotLive,
    IncompleteTree,
    InconsistentHistory,
    LinkNotFound,
    LstagError,
    NotASlot,
    NotInterior,
    OperationMismatch,
    ParseError,
    SymbolMismatch,
    UnknownTree,
    UnsupportedGuestLinks,
)
from .gorn import ROOT, GornAddress
from .grammarfile import (
    GrammarDocument,
    format_grammar,
    load_grammar,
    parse_grammar,
    restriction_diagnostics,
    usable_lstag_names,
    validate_document,
)
from .restrictions import Correspondence, check_left_contiguity, check_lexical_contiguity
from .sharing import (
    DerivationGraph,
    DerivationRecord,
    DerivedStructure,
    Fragment,
    LstagGrammar,
    LstagPair,
    SharedLinkGroup,
    SiteRef,
    as_structure,
    derivation_projections,
    link_share,
    lstag_compose,
    shared_substitute,
    structure_from_pair,
    validate_pair,
)
from .stag import Link, StagGrammar, StagPair, stag_compose
from .tag import (
    DerivationTree,
    ElementaryTree,
    TagGrammar,
    format_derivation_script,
    parse_derivation_script,
    replay,
    validate_derivation,
)
from .trees import (
    Foot,
    Interior,
    NodeKind,
    SubstitutionSlot,
    SyntaxTree,
    Terminal,
    TreeClass,
    adjoin,
    classify,
    format_tree,
    parse_tree,
    rebase_address,
    substitute,
    yield_string,
    yield_tokens,
)

__all__ = [
    "AddressNotFound",
    "CardinalityViolation",
    "ClassMismatch",
    "Correspondence",
    "DerivationGraph",
    "DerivationRecord",
    "DerivationTree",
    "DerivedStructure",
    "Diagnostic",
    "DuplicateAdjunction",
    "EdgeAddressInvalid",
    "ElementaryTree",
    "EnumerationBudget",
    "EnumerationItem",
    "EnumerationResult",
    "Foot",
    "Fragment",
    "GornAddress",
    "GrammarDocument",
    "GroupNotLive",
    "IncompleteTree",
    "InconsistentHistory",
    "Interior",
    "Link",
    "LinkNotFound",
    "LstagError",
    "LstagGrammar",
    "LstagPair",
    "NodeKind",
    "NotASlot",
    "NotInterior",
    "OperationMismatch",
    "ParseError",
    "ROOT",
    "SharedLinkGroup",
    "SiteRef",
    "StagGrammar",
    "StagPair",
    "SubstitutionSlot",
    "SymbolMismatch",
    "SyntaxTree",
    "TagGrammar",
    "Terminal",
    "TreeClass",
    "UnknownTree",
    "UnsupportedGuestLinks",
    "adjoin",
    "as_structure",
    "check_left_contiguity",
    "check_lexical_contiguity",
    "classify",
    "derivation_projections",
    "enumerate_derivations",
    "format_derivation_script",
    "format_grammar",
    "format_tree",
    "language_sample",
    "link_share",
    "load_grammar",
    "lstag_compose",
    "parse_derivation_script",
    "parse_grammar",
    "parse_tree",
    "rebase_address",
    "replay",
    "restriction_diagnostics",
    "shared_substitute",
    "stag_compose",
    "structure_from_pair",
    "substitute",
    "usable_lstag_names",
    "validate_derivation",
    "validate_document",
    "validate_pair",
    "yield_string",
    "yield_tokens",
]
