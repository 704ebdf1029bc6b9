"""The energy of a cocycle, its shifted energy function and directional derivatives.

All pairings are ``Re <a, b>`` so that complex Hilbert spaces are treated as
real ones.
"""

from __future__ import annotations

import numpy as np

from .cocycle import Cocycle
from .errors import InputError
from .measure import FinMeasure, check_mu


def inner(a, b) -> float:
    return float(np.real(np.vdot(b, a)))


class EnergyFunction:
    """``v -> sum_g mu(g) |pi(g) v - v + b(g)|^2`` with the support data cached."""

    def __init__(self, c: Cocycle, mu: FinMeasure):
        check_mu(mu, c.group)
        G = c.group
        self.cocycle = c
        self.mu = mu
        self.weights = np.array(mu.weights)
        self.pis = np.stack([c.rep.evaluate(g) for g in mu.support])
        self.values = np.stack([c.evaluate(g) for g in mu.support])
        # b(g^-1) for each support element, for the reflected measure
        self.values_inv = np.stack([c.evaluate(G._inv(g)) for g in mu.support])

    def _vec(self, v):
        return self.cocycle.rep.vector(np.asarray(v)) if v is not None else None

    def shifted_values(self, v) -> np.ndarray:
        v = self._vec(v)
        return self.pis @ v - v + self.values

    def __call__(self, v=None) -> float:
        if v is None:
            X = self.values
        else:
            X = self.shifted_values(v)
        return float(np.sum(self.weights * np.sum(np.abs(X) ** 2, axis=1)))

    def many(self, V) -> np.ndarray:
        """Energies at each row of ``V``."""
        V = np.asarray(V)
        X = np.einsum("gij,nj->ngi", self.pis, V) - V[:, None, :] + self.values[None]
        return np.einsum("g,ng->n", self.weights, np.sum(np.abs(X) ** 2, axis=2))

    def derivative(self, w) -> float:
        w = self._vec(w)
        paired = np.real(self.values.conj() @ w) + np.real(self.values_inv.conj() @ w)
        return float(-2.0 * np.dot(self.weights, paired))


def energy_at(c: Cocycle, mu: FinMeasure, v=None) -> float:
    """``E(v) = sum_g mu(g) |pi(g) v - v + b(g)|^2``; ``v=None`` gives the plain energy."""
    if v is not None and np.shape(v) != (c.rep.dim,):
        raise InputError(f"expected a vector of length {c.rep.dim}", shape=np.shape(v))
    return EnergyFunction(c, mu)(v)


def energy(c: Cocycle, mu: FinMeasure) -> float:
    return energy_at(c, mu, None)


def directional_derivative(c: Cocycle, mu: FinMeasure, w) -> float:
    """``D_w E = -2 sum_g (mu + mu_reflected)(g) Re <b(g), w>``."""
    if np.shape(w) != (c.rep.dim,):
        raise InputError(f"expected a vector of length {c.rep.dim}", shape=np.shape(w))
    return EnergyFunction(c, mu).derivative(w)
