"""Exact l-weight monomial calculus and q-character tools for quantum affine algebras."""
from .cartan import CartanData, CartanError, build_cartan, cartan_from_label, parse_type
from .polykern import BACKEND
from .qchar import (
    CharacterTable,
    QCharacter,
    char_mul,
    char_trunc_geq,
    char_trunc_leq,
    triangular_decompose,
    validate_simple_character,
)
from .ratfunc import RatFunc
from .ylattice import Monomial, YLatticeError, a_monomial, decompose_over_A, format_monomial, leq, parse_monomial

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CartanData",
    "CartanError",
    "CharacterTable",
    "Monomial",
    "QCharacter",
    "RatFunc",
    "YLatticeError",
    "a_monomial",
    "build_cartan",
    "cartan_from_label",
    "char_mul",
    "char_trunc_geq",
    "char_trunc_leq",
    "decompose_over_A",
    "format_monomial",
    "leq",
    "parse_monomial",
    "parse_type",
    "triangular_decompose",
    "validate_simple_character",
]
