"""Extensions of finite monoids and the data that classify them."""

from .biset import Biset, BisetHom, LQArrow, tensor
from .correspondence import (
    LaxMonoidalData,
    MonoidalNatTrans,
    fiber_data,
    grothendieck,
    hom_from_psi,
    psi_from_hom,
    validate_lax_data,
)
from .errors import AxiomFail, MonextError, ValidationError
from .monoid import (
    Congruence,
    ExactSequence,
    Extension,
    FiniteMonoid,
    MonoidHom,
    canonical_form,
    enumerate_monoids,
    validate_monoid,
)
from .oracle import cross_check_classification, enumerate_extensions_bruteforce
from .schreier import (
    SchreierData,
    build_schreier_extension,
    classify_schreier,
    extract_schreier_data,
    is_schreier_epi,
    validate_schreier_data,
)
from .weakly_schreier import (
    WSData,
    build_ws_extension,
    classify_ws,
    extract_ws_data,
    is_weakly_schreier_epi,
    validate_ws_data,
)

__all__ = [
    "AxiomFail", "Biset", "BisetHom", "Congruence", "ExactSequence", "Extension",
    "FiniteMonoid", "LQArrow", "LaxMonoidalData", "MonextError", "MonoidHom",
    "MonoidalNatTrans", "SchreierData", "ValidationError", "WSData",
    "build_schreier_extension", "build_ws_extension", "canonical_form", "classify_schreier",
    "classify_ws", "cross_check_classification", "enumerate_extensions_bruteforce",
    "enumerate_monoids", "extract_schreier_data", "extract_ws_data", "fiber_data",
    "grothendieck", "hom_from_psi", "is_schreier_epi", "is_weakly_schreier_epi",
    "psi_from_hom", "tensor", "validate_lax_data", "validate_monoid",
    "validate_schreier_data", "validate_ws_data",
]
