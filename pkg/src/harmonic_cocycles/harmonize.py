"""Harmonic representatives of cohomology classes and cohomology dimensions.

The harmonic representative of ``[b]`` is ``b_v = b + dv`` where ``v`` solves
``(I - pi(mu)) v = mu(b)``; that is the center of ``b_v`` vanishes.  The
direct solver uses the pseudoinverse of the positive semidefinite operator
``I - pi(mu)``; the iterative solver repeatedly moves ``v`` by the current
center, which never increases the energy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .cocycle import (Cocycle, coboundary_operator, mu_center, relator_operator,
                      value_operator)
from .energy import EnergyFunction
from .errors import InconsistentSystem, InvariantViolation, NoConvergence, NotGenerating, NotSymmetric
from .measure import DEFAULT_GEN_RADIUS, FinMeasure, is_symmetric, support_generates, uniform_on_generators
from .rep import UnitaryRep, fixed_subspace, pi_mu

SOLVE_RTOL = 1e-10
CENTER_TOL = 1e-8
DESCENT_SLACK = 1e-12


@dataclass
class HarmonizeReport:
    harmonic_cocycle: Cocycle
    shift_vector: np.ndarray
    center_residual: float
    energy_before: float
    energy_after: float
    method: str
    iterations: int
    energy_trace: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    converged: bool = True

    def to_json(self) -> dict:
        from .rep import encode_vector
        field_ = self.harmonic_cocycle.rep.field
        return {
            "method": self.method,
            "iterations": self.iterations,
            "converged": self.converged,
            "shift_vector": encode_vector(self.shift_vector, field_),
            "harmonic_cocycle": self.harmonic_cocycle.to_json()["gen_values"],
            "center_residual": self.center_residual,
            "energy_before": self.energy_before,
            "energy_after": self.energy_after,
            "warnings": list(self.warnings),
        }


def _preconditions(c: Cocycle, mu: FinMeasure, gen_radius: int):
    G = c.group
    if not is_symmetric(G, mu):
        raise NotSymmetric("harmonization requires a symmetric measure")
    if support_generates(G, mu, gen_radius) is False:
        raise NotGenerating("the support of the measure does not generate the group")


def _kernel_warning(rep: UnitaryRep, lam: np.ndarray, tol: float):
    nker = int(np.sum(lam <= tol))
    nfix = fixed_subspace(rep).dim
    if nker != nfix:
        return [f"kernel of I - pi(mu) has dimension {nker} but the fixed subspace has "
                f"dimension {nfix}; the measure may not be admissible"]
    return []


def harmonize_direct(c: Cocycle, mu: FinMeasure, gen_radius: int = DEFAULT_GEN_RADIUS) -> HarmonizeReport:
    """Harmonic representative by solving ``(I - pi(mu)) v = mu(b)``."""
    _preconditions(c, mu, gen_radius)
    rep = c.rep
    A = np.eye(rep.dim) - pi_mu(rep, mu)
    A = (A + A.conj().T) / 2
    rhs, _ = mu_center(c, mu)
    v = rep.zero_vector()
    warnings = []
    if rep.dim:
        lam, U = np.linalg.eigh(A)
        tol = SOLVE_RTOL * max(1.0, float(lam.max()))
        keep = lam > tol
        coeffs = U.conj().T @ rhs
        v = U[:, keep] @ (coeffs[keep] / lam[keep])
        v = v.real if rep.field == "real" else v
        residual = float(np.linalg.norm(A @ v - rhs))
        if residual > CENTER_TOL * max(1.0, float(np.linalg.norm(rhs))):
            raise InconsistentSystem("center has a component in the kernel of I - pi(mu)",
                                     residual=residual)
        warnings = _kernel_warning(rep, lam, tol)
    phi = c.shifted(v)
    energy = EnergyFunction(c, mu)
    center, _ = mu_center(phi, mu)
    e0 = energy()
    e1 = energy(v)
    return HarmonizeReport(phi, v, float(np.linalg.norm(center)), e0, e1, "direct", 0,
                           [e0, e1], warnings)


def harmonize_iterative(c: Cocycle, mu: FinMeasure, tol: float = 1e-10, max_iter: int = 100_000,
                        stop=None, progress=None,
                        gen_radius: int = DEFAULT_GEN_RADIUS) -> HarmonizeReport:
    """Harmonic representative by the center-update iteration ``v <- v + mu(b_v)``.

    Equivalently ``v_{n+1} = pi(mu) v_n + mu(b)``.  Energy is checked to be
    non-increasing at every step.  ``stop`` is a zero-argument callable
    polled between iterations; ``progress(n, v, center_norm)`` is called
    after each one.  Raises :class:`NoConvergence` (carrying the last
    report as ``.report``) when ``max_iter`` is reached or ``stop`` fires.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    _preconditions(c, mu, gen_radius)
    rep = c.rep
    M = pi_mu(rep, mu)
    b, _ = mu_center(c, mu)
    energy = EnergyFunction(c, mu)
    v = rep.zero_vector()
    e = energy(v)
    trace = [e]
    e0 = e
    n = 0
    center = b
    reason = None
    while True:
        cnorm = float(np.linalg.norm(center))
        if cnorm < tol:
            break
        if n >= max_iter:
            reason = f"no convergence after {max_iter} iterations"
            break
        if stop is not None and stop():
            reason = f"stopped after {n} iterations"
            break
        v = v + center
        e_new = energy(v)
        if e_new > e + DESCENT_SLACK:
            raise InvariantViolation("energy increased during center update",
                                     iteration=n, before=e, after=e_new)
        e = e_new
        trace.append(e)
        n += 1
        center = b + M @ v - v
        if progress is not None:
            progress(n, v, float(np.linalg.norm(center)))
    phi = c.shifted(v)
    report = HarmonizeReport(phi, v, float(np.linalg.norm(mu_center(phi, mu)[0])), e0, e,
                             "iterative", n, trace, converged=reason is None)
    if reason is not None:
        exc = NoConvergence(reason, center_residual=report.center_residual, iterations=n)
        exc.report = report
        raise exc
    return report


def predicted_iterations(contraction: float, initial: float, tol: float) -> int:
    """Iterations for a geometric contraction to bring ``initial`` below ``tol``."""
    if initial < tol:
        return 0
    return math.ceil(math.log(tol / initial) / math.log(contraction))


@dataclass(frozen=True)
class CohomologyDims:
    """Real dimensions of Z^1, B^1, H^1 and of harmonic cocycles modulo harmonic coboundaries.

    Coboundaries are closed in finite dimensions, so H^1 equals reduced
    cohomology here.
    """

    dim_Z1: int
    dim_B1: int
    dim_H1: int
    dim_harmonic: int
    dim_harmonic_cocycles: int
    field: str
    complex_dims: dict | None = None
    note: str = "finite-dimensional: B^1 is closed, so H^1 coincides with reduced H^1"

    def to_json(self) -> dict:
        out = {"dim_Z1": self.dim_Z1, "dim_B1": self.dim_B1, "dim_H1": self.dim_H1,
               "dim_harmonic": self.dim_harmonic,
               "dim_harmonic_cocycles": self.dim_harmonic_cocycles,
               "field": self.field, "dimension_convention": "real", "note": self.note}
        if self.complex_dims is not None:
            out["complex_dims"] = dict(self.complex_dims)
        return out


def harmonic_operator(rep: UnitaryRep, mu: FinMeasure) -> np.ndarray:
    """Center map on generator values: ``vec(values) -> mu(b)``."""
    G = rep.group
    out = np.zeros((rep.dim, G.ngens * rep.dim), dtype=rep.dtype)
    for g, w in mu.items():
        out += w * value_operator(rep, G.word(g))
    return out


def h1_dimensions(rep: UnitaryRep, mu: FinMeasure | None = None) -> CohomologyDims:
    """Dimensions of Z^1, B^1, H^1 and of the harmonic cocycles for ``rep``.

    ``dim_harmonic`` is computed independently of the other three, as the
    kernel of the relator constraints together with the center map, modulo
    coboundaries of vectors in the kernel of ``I - pi(mu)``.
    """
    G = rep.group
    if mu is None:
        mu = uniform_on_generators(G)
    if not is_symmetric(G, mu):
        raise NotSymmetric("cohomology readout requires a symmetric measure")
    n = G.ngens * rep.dim
    R = relator_operator(rep)
    B = coboundary_operator(rep)
    z1 = n - linalg.rank(R)
    b1 = linalg.rank(B)
    C = harmonic_operator(rep, mu)
    harm_cocycles = n - linalg.rank(np.vstack([R, C]))
    K = linalg.null_space(np.eye(rep.dim) - pi_mu(rep, mu), ncols=rep.dim)
    harm_cob = linalg.rank(B @ K) if K.shape[1] else 0
    harm = harm_cocycles - harm_cob
    if rep.field == "complex":
        cdims = {"dim_Z1": z1, "dim_B1": b1, "dim_H1": z1 - b1, "dim_harmonic": harm,
                 "dim_harmonic_cocycles": harm_cocycles}
        return CohomologyDims(2 * z1, 2 * b1, 2 * (z1 - b1), 2 * harm, 2 * harm_cocycles,
                              "complex", cdims)
    return CohomologyDims(z1, b1, z1 - b1, harm, harm_cocycles, "real")
