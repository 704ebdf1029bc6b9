"""Restriction to direct factors and the harmonic decomposition on products.

For a harmonic cocycle on ``G_1 x ... x G_k`` the component in the
``G``-fixed vectors is split off; what remains, restricted to each factor
``G_j``, takes values in the vectors invariant under the other factors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .cocycle import Cocycle, from_generator_values, split_fixed
from .errors import NotAProduct, NotGenerating, NotSymmetric
from .groups import ProductGroup
from .harmonize import h1_dimensions, harmonize_direct
from .measure import DEFAULT_GEN_RADIUS, is_symmetric, product_measure, support_generates
from .rep import Subspace, UnitaryRep, fixed_subspace, invariant_subspace, validate_homomorphism

INVARIANCE_TOL = 1e-8


def _product(G) -> ProductGroup:
    if not isinstance(G, ProductGroup):
        raise NotAProduct(f"{G} is not a direct product")
    return G


def restrict_factor(obj, j: int):
    """Restriction of a representation or cocycle to the factor ``G_j`` (0-based).

    ``pi|G_j(g) = pi(g, e)`` and ``b|G_j(g) = b(g, e)``.
    """
    if isinstance(obj, Cocycle):
        rep = restrict_factor(obj.rep, j)
        G = obj.group
        return from_generator_values(rep, [obj.values[i] for i in G.factor_generators(j)])
    G = _product(obj.group)
    if not 0 <= j < len(G.factors):
        raise IndexError(f"factor index {j} out of range for {len(G.factors)} factors")
    rep = UnitaryRep(G.factors[j], [obj.matrices[i] for i in G.factor_generators(j)], field=obj.field)
    if rep.dim:
        validate_homomorphism(rep)
    return rep


def complementary_invariants(rep: UnitaryRep, j: int) -> Subspace:
    """Vectors invariant under every factor other than ``G_j``."""
    G = _product(rep.group)
    others = [i for i in range(G.ngens) if G.factor_of_generator(i) != j]
    return invariant_subspace(rep, others)


@dataclass
class ProductDecomposition:
    harmonic_cocycle: Cocycle
    shift_vector: np.ndarray
    beta_fixed: Cocycle
    factor_cocycles: list
    residual: float
    invariance_residuals: list
    relator_residual: float

    def factor_restriction(self, j: int) -> Cocycle:
        return restrict_factor(self.factor_cocycles[j], j)

    def to_json(self) -> dict:
        return {
            "harmonic_cocycle": self.harmonic_cocycle.to_json()["gen_values"],
            "beta_fixed": self.beta_fixed.to_json()["gen_values"],
            "factor_cocycles": [b.to_json()["gen_values"] for b in self.factor_cocycles],
            "residual": self.residual,
            "invariance_residuals": list(self.invariance_residuals),
            "relator_residual": self.relator_residual,
        }


def _check_factor_measures(G: ProductGroup, mus, gen_radius):
    mus = list(mus)
    if len(mus) != len(G.factors):
        raise ValueError(f"need {len(G.factors)} factor measures, got {len(mus)}")
    for j, (f, m) in enumerate(zip(G.factors, mus)):
        if not is_symmetric(f, m):
            raise NotSymmetric(f"measure on factor {j} is not symmetric")
        if support_generates(f, m, gen_radius) is False:
            raise NotGenerating(f"measure on factor {j} does not generate the factor")
    return mus


def decompose_product(c: Cocycle, mus, gen_radius: int = DEFAULT_GEN_RADIUS) -> ProductDecomposition:
    """Split the harmonic representative of ``[c]`` as ``b_0 + b_1 + ... + b_k``.

    Harmonizes under the product measure, projects onto the ``G``-fixed
    vectors for ``b_0`` and takes ``b_j`` to be the restriction of the rest
    to ``G_j``, stored on the whole product (zero on other factors).
    """
    G = _product(c.group)
    mus = _check_factor_measures(G, mus, gen_radius)
    mu = product_measure(G, mus)
    report = harmonize_direct(c, mu, gen_radius)
    phi = report.harmonic_cocycle
    fixed, unfixed = split_fixed(phi)
    components = []
    inv_res = []
    rel_res = 0.0
    for j in range(len(G.factors)):
        vals = np.zeros_like(unfixed.values)
        rows = list(G.factor_generators(j))
        vals[rows] = unfixed.values[rows]
        bj = Cocycle(c.rep, vals)
        components.append(bj)
        P = complementary_invariants(c.rep, j).projector()
        off = vals - vals @ P.T
        inv_res.append(float(np.linalg.norm(off, axis=1).max()) if off.size else 0.0)
        for r in G.relators:
            rel_res = max(rel_res, float(np.linalg.norm(bj.evaluate_word(r)[1])))
    total = fixed.values + sum(b.values for b in components)
    diff = phi.values - total
    residual = float(np.linalg.norm(diff, axis=1).max()) if diff.size else 0.0
    return ProductDecomposition(phi, report.shift_vector, fixed, components, residual, inv_res, rel_res)


def dimension_additivity(rep: UnitaryRep, mus) -> dict:
    """Compare ``dim_harmonic(G)`` with the sum over the pieces of the decomposition.

    The pieces are ``Z^1`` of ``G`` acting trivially on its fixed vectors and,
    for each factor, the harmonic dimension of ``G_j`` on the vectors
    invariant under the other factors and orthogonal to the ``G``-fixed ones.
    """
    G = _product(rep.group)
    mus = list(mus)
    mu = product_measure(G, mus)
    lhs = h1_dimensions(rep, mu).dim_harmonic
    fixed = fixed_subspace(rep)
    fixed_term = h1_dimensions(rep.restrict_to(fixed.basis), mu).dim_Z1 if fixed.dim else 0
    terms = []
    unfixed = fixed.complement()
    for j in range(len(G.factors)):
        K = linalg.intersect(complementary_invariants(rep, j).basis, unfixed.basis)
        if K.shape[1] == 0:
            terms.append(0)
            continue
        sub = restrict_factor(rep.restrict_to(K), j)
        terms.append(h1_dimensions(sub, mus[j]).dim_harmonic)
    rhs = fixed_term + sum(terms)
    return {"lhs": lhs, "fixed_term": fixed_term, "factor_terms": terms, "rhs": rhs,
            "equal": lhs == rhs}
