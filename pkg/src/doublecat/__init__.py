"""Finite double category toolkit.

A library plus CLI for finite categories, profunctors with coend
composition, finite strict double categories, category-valued lax double
presheaves, discrete double fibrations, the double Grothendieck construction
and its fiber inverse, the Yoneda isomorphism, and a representability
checker, all verified exhaustively at desk scale.

All structures are immutable once validated and every operation is a pure
function, so values can be shared freely.
"""

from .dblcat import (
    DoubleCat,
    DoubleFunctor,
    TerminalWitness,
    VerticalTransformation,
    build_double_category,
    double_terminal_objects,
    embed,
    hom_action,
    hom_category,
    hom_mu,
    hom_profunctor,
    horizontal_opposite,
    is_double_terminal,
    search_double_isomorphism,
    slice_double,
    underlying,
    validate_double_category,
    validate_double_functor,
    validate_vertical_transformation,
)
from .dfib import (
    DiscreteDoubleFibration,
    FiberData,
    check_dfib,
    ddel,
    ddel_2morphism,
    ddel_morphism,
    fiber_object,
    fiber_vertical,
    fibers,
    hmor_action,
    identity_fibration,
    phi_fibrational,
    slice_comparison,
    slice_fibration,
    square_action,
)
from .fincat import (
    CoendResult,
    FinCat,
    FinFunctor,
    NatTrans,
    ProfMorphism,
    Profunctor,
    TwoSidedFibWitness,
    check_two_sided_fibration,
    coend,
    compose_profunctors,
    compose_ts_fibrations,
    fib,
    identity_profunctor,
    tabulate,
    validate_category,
)
from .groth import (
    GrothResult,
    RepresentationReport,
    counit_epsilon,
    groth,
    groth_2morphism,
    groth_morphism,
    representation_check,
    unit_eta,
)
from .presheaf import (
    GlobularModification,
    HorizontalTransf,
    LaxDoublePresheaf,
    constant_presheaf,
    enumerate_transformations,
    is_represented_by,
    representable,
    representable_modification,
    representable_morphism,
    validate_presheaf,
    yoneda_phi,
    yoneda_psi,
)
from .randgen import RandomSpec, generate
from .util import BudgetExceeded, GenerationError, ValidationReport, Violation

__all__ = [
    "BudgetExceeded",
    "CoendResult",
    "DiscreteDoubleFibration",
    "DoubleCat",
    "DoubleFunctor",
    "FiberData",
    "FinCat",
    "FinFunctor",
    "GenerationError",
    "GlobularModification",
    "GrothResult",
    "HorizontalTransf",
    "LaxDoublePresheaf",
    "NatTrans",
    "ProfMorphism",
    "Profunctor",
    "RandomSpec",
    "RepresentationReport",
    "TerminalWitness",
    "TwoSidedFibWitness",
    "ValidationReport",
    "VerticalTransformation",
    "Violation",
    "build_double_category",
    "check_dfib",
    "check_two_sided_fibration",
    "coend",
    "compose_profunctors",
    "compose_ts_fibrations",
    "constant_presheaf",
    "counit_epsilon",
    "ddel",
    "ddel_2morphism",
    "ddel_morphism",
    "double_terminal_objects",
    "embed",
    "enumerate_transformations",
    "fib",
    "fiber_object",
    "fiber_vertical",
    "fibers",
    "generate",
    "groth",
    "groth_2morphism",
    "groth_morphism",
    "hmor_action",
    "hom_action",
    "hom_category",
    "hom_mu",
    "hom_profunctor",
    "horizontal_opposite",
    "identity_fibration",
    "identity_profunctor",
    "is_double_terminal",
    "is_represented_by",
    "phi_fibrational",
    "representable",
    "representable_modification",
    "representable_morphism",
    "representation_check",
    "search_double_isomorphism",
    "slice_comparison",
    "slice_double",
    "slice_fibration",
    "square_action",
    "tabulate",
    "underlying",
    "unit_eta",
    "validate_category",
    "validate_double_category",
    "validate_double_functor",
    "validate_presheaf",
    "validate_vertical_transformation",
    "yoneda_phi",
    "yoneda_psi",
]

__version__ = "0.1.0"
