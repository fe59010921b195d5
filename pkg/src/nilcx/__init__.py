"""nilcx: exact Dolbeault cohomology and deformations of nilpotent Lie
algebras with abelian complex structures."""

__version__ = "0.1.0"

from .algfile import AlgebraFile, parse, parse_text, render, render_entry
from .catalog import CatalogEntry, get, names, verify_entry
from .cxs import (
    AlmostComplexStructure,
    ComplexFrame,
    InvariantForm,
    adapted_frame,
    exterior_derivative,
    is_abelian,
    is_integrable,
    j_ascending_series,
)
from .dolbeault import CohomologySpace, DolbeaultComplex, VectorForm
from .errors import (
    NotSolvableError,
    ParseError,
    PreconditionError,
    SelfCheckError,
    ValidationError,
)
from .kuranishi import (
    DeformationReport,
    DeformationSeries,
    DeformedStructure,
    ObstructionSet,
    classify_deformation,
    deform_structure,
    graded_center,
    infinitesimal_abelian_locus,
    kuranishi_series,
    mc_residual,
    obstructions,
    schouten,
    schouten_with_coform,
)
from .lie import Flag, LieAlgebra, ValidationReport, ascending_series, center, validate_lie
from .poly import Poly
from .scalars import GaussianRational, gr

__all__ = [
    "AlgebraFile",
    "AlmostComplexStructure",
    "CatalogEntry",
    "CohomologySpace",
    "ComplexFrame",
    "DeformationReport",
    "DeformationSeries",
    "DeformedStructure",
    "DolbeaultComplex",
    "Flag",
    "GaussianRational",
    "InvariantForm",
    "LieAlgebra",
    "NotSolvableError",
    "ObstructionSet",
    "ParseError",
    "Poly",
    "PreconditionError",
    "SelfCheckError",
    "ValidationError",
    "ValidationReport",
    "VectorForm",
    "__version__",
    "adapted_frame",
    "ascending_series",
    "center",
    "classify_deformation",
    "deform_structure",
    "exterior_derivative",
    "get",
    "gr",
    "graded_center",
    "infinitesimal_abelian_locus",
    "is_abelian",
    "is_integrable",
    "j_ascending_series",
    "kuranishi_series",
    "mc_residual",
    "names",
    "obstructions",
    "parse",
    "parse_text",
    "render",
    "render_entry",
    "schouten",
    "schouten_with_coform",
    "validate_lie",
    "verify_entry",
]
