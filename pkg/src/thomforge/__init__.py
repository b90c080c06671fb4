"""thomforge: exact-rational computations with finitely presented cdgas.

Core surface: presentations of free graded-commutative algebras with a
differential and truncation, their cohomology and quasi-isomorphism checks,
Thom models twisted by an Euler element, weight decompositions with the
purity route to formality, minimal Sullivan models, triple and lifted Massey
products, free graded Lie algebras with Thom-space Lie models, and bigraded
Hodge-type bookkeeping.
"""

__version__ = "0.1.0"

from .algebra import (
    CdgaMorphism,
    CdgaPresentation,
    Element,
    Generator,
    Monomial,
    basis,
    build_presentation,
    differentiate,
    multiply,
    random_homogeneous,
)
from .cohomology import GradedReport, cohomology, is_quasi_iso
from .errors import ParseError, ThomforgeError, ValidationError
from .grammar import make_cdga, parse_expression, presentation_to_json, presentation_to_text
from .hodge import FilteredThomModel, check_euler_purity, thom_mhs, validate_splitting, weights_from_splitting
from .massey import (
    MasseyProduct,
    MasseySystem,
    contains_zero,
    gamma,
    lift_massey_system,
    massey_sets_equal,
    phi,
    s_exponent,
    scale_product,
    thom_triple_correspondence,
    triple_massey,
)
from .minimal import has_decomposable_differential, minimal_model
from .quillen import (
    DglPresentation,
    FreeLieElement,
    LieGenerator,
    bracket,
    euler_dual_map,
    free_lie_basis,
    lie_generator,
    quadratic_dual_dgl,
    quillen_thom_model,
    validate_dgl,
)
from .thom import (
    SuspendedElement,
    ThomModel,
    compare_euler_reps,
    relative_cup,
    ring_table,
    thom_cohomology,
    thom_model,
    transport_thom,
)
from .weight import (
    FormalityCertificate,
    attach_weights,
    formality_certificate,
    positivity,
    pure_truncation,
    thom_weights,
    weight_scaling,
    weighted_cohomology,
)
