"""Harmonic cocycles of finitely generated groups in finite-dimensional unitary representations."""

__version__ = "0.1.0"

from .cocycle import Cocycle, coboundary, from_generator_values, mu_center, split_fixed
from .energy import directional_derivative, energy, energy_at
from .errors import HarmonicError, InputError, InvariantViolation, NumericalError
from .groups import (CyclicGroup, FreeAbelianGroup, FreeGroup, Group, HeisenbergGroup, PermGroup,
                     ProductGroup, group_from_json)
from .harmonic_functions import dirichlet_solve, harmonic_function_space, lipschitz_from_cocycle
from .harmonize import h1_dimensions, harmonize_direct, harmonize_iterative
from .induction import FiniteIndexSubgroup, alpha_cocycle, induce_cocycle, induce_rep
from .measure import FinMeasure, convolve, symmetrize, uniform_on_generators, validate_reasonable
from .products import decompose_product, restrict_factor
from .rep import UnitaryRep, fixed_subspace, pi_mu, validate_homomorphism

__all__ = [
    "Cocycle", "CyclicGroup", "FinMeasure", "FiniteIndexSubgroup", "FreeAbelianGroup", "FreeGroup",
    "Group", "HarmonicError", "HeisenbergGroup", "InputError", "InvariantViolation",
    "NumericalError", "PermGroup", "ProductGroup", "UnitaryRep", "alpha_cocycle", "coboundary",
    "convolve", "decompose_product", "directional_derivative", "dirichlet_solve", "energy",
    "energy_at", "fixed_subspace", "from_generator_values", "group_from_json",
    "h1_dimensions", "harmonic_function_space", "harmonize_direct", "harmonize_iterative",
    "induce_cocycle", "induce_rep", "lipschitz_from_cocycle", "mu_center", "pi_mu",
    "restrict_factor", "split_fixed", "symmetrize", "uniform_on_generators",
    "validate_homomorphism", "validate_reasonable",
]
