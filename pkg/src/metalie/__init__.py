"""Finitely presented metabelian Lie algebras: normal forms, Fitting radical,
metabelian products and zero divisors, over exact rationals."""

from .catalog import free_algebra, letters, torsion_algebra
from .fp import (
    AlgebraPresentation,
    FittingAnswer,
    LinearRelatorError,
    abelian,
    compile,
    fitting_contains,
    nilpotent_quotient,
)
from .free import LeftNormedWord, commutant_presentation, fitting_contains_free, free_context, normalize
from .lie import AlgebraContext, ContextMismatch, LieElement
from .modules import (
    BudgetExceeded,
    FreeModuleElement,
    GroebnerBasis,
    ModulePresentation,
    buchberger,
    graded_dimension,
    groebner,
    is_member,
    normal_form,
)
from .poly import Monomial, Polynomial, VariableSet, parse_polynomial
from .product import (
    ProductModel,
    fitting_of_product,
    product_mul,
    product_presentation,
    verify_lemma_mprime,
    verify_product_theorems,
)
from .semidomain import (
    Classification,
    ZeroDivisorCertificate,
    classify,
    fit_vs_divisors,
    is_zero_divisor_pair,
    lemma_as_check,
    linear_torsion_free,
    product_semidomain,
)
from .text import ParseError, format_algebra, parse_algebra_file, parse_element
from .torsion import linear_torsion_search, saturation, stable_annihilator_power

__version__ = "0.1.0"

__all__ = [
    "abelian",
    "AlgebraContext",
    "AlgebraPresentation",
    "buchberger",
    "BudgetExceeded",
    "Classification",
    "classify",
    "commutant_presentation",
    "compile",
    "ContextMismatch",
    "fit_vs_divisors",
    "fitting_contains",
    "fitting_contains_free",
    "fitting_of_product",
    "FittingAnswer",
    "format_algebra",
    "free_algebra",
    "free_context",
    "FreeModuleElement",
    "graded_dimension",
    "groebner",
    "GroebnerBasis",
    "is_member",
    "is_zero_divisor_pair",
    "LeftNormedWord",
    "lemma_as_check",
    "letters",
    "LieElement",
    "linear_torsion_free",
    "linear_torsion_search",
    "LinearRelatorError",
    "ModulePresentation",
    "Monomial",
    "nilpotent_quotient",
    "normal_form",
    "normalize",
    "parse_algebra_file",
    "parse_element",
    "parse_polynomial",
    "ParseError",
    "Polynomial",
    "product_mul",
    "product_presentation",
    "product_semidomain",
    "ProductModel",
    "saturation",
    "stable_annihilator_power",
    "torsion_algebra",
    "VariableSet",
    "verify_lemma_mprime",
    "verify_product_theorems",
    "ZeroDivisorCertificate",
]
