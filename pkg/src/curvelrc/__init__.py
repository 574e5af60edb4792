"""Locally recoverable codes from automorphism-group orbits on elliptic,
hyperelliptic and superelliptic curves over finite fields."""

from .gf import GF, FieldElement, make_field
from .recipes import (
    LrcCode,
    build_code,
    recipe_eff_involution,
    recipe_eff_noninvolution,
    recipe_genus2_43,
    recipe_hermitian,
    recipe_hyperell_genus_g,
    recipe_normtrace,
)
from .verify import verify_code

__version__ = "0.1.0"
