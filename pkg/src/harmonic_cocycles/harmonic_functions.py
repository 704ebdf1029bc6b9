"""Scalar functions with the mean-value property ``f(g) = sum_h mu(h) f(gh)``.

Infinite groups are handled on Cayley balls: an element of the ball is
*interior* when it is strictly inside the boundary radius and every
``g h`` with ``h`` in the support of ``mu`` stays in the ball.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse
import scipy.sparse.linalg

from . import linalg
from .cocycle import Cocycle, mu_center
from .errors import InputError, MissingBoundaryValue, NotHarmonic, SingularSystem
from .groups import DEFAULT_BALL_LIMIT, Group
from .measure import FinMeasure, check_mu, support_generates, uniform_on_generators

RESIDUAL_TOL = 1e-9
HARMONIC_TOL = 1e-8
LIPSCHITZ_SLACK = 1e-9


@dataclass
class BallFunction:
    """Real values on a Cayley ball, with the interior/boundary split used to produce them."""

    group: Group
    domain: list  # (element, length), sorted by canonical form
    values: dict
    boundary_radius: int
    interior: list = field(default_factory=list)
    residual: float = 0.0

    def __call__(self, g) -> float:
        return self.values[g]

    def rows(self) -> list:
        G = self.group
        return [{"element": G.encode(g), "word": G.describe(g), "length": n,
                 "value": float(self.values[g])} for g, n in self.domain]

    def to_json(self) -> dict:
        return {"boundary_radius": self.boundary_radius, "residual": self.residual,
                "interior_count": len(self.interior), "rows": self.rows()}


def interior_points(G: Group, mu: FinMeasure, domain, radius: int) -> list:
    members = {g for g, _ in domain}
    return [g for g, n in domain
            if n < radius and all(G._mul(g, h) in members for h in mu.support)]


def mean_value_residual(G: Group, mu: FinMeasure, values: dict, points) -> float:
    worst = 0.0
    for g in points:
        avg = sum(w * values[G._mul(g, h)] for h, w in mu.items())
        worst = max(worst, abs(avg - values[g]))
    return float(worst)


def dirichlet_solve(G: Group, mu: FinMeasure, radius: int, boundary_values: dict,
                    limit: int = DEFAULT_BALL_LIMIT) -> BallFunction:
    """Solve ``f(g) = sum_h mu(h) f(gh)`` on the interior of the radius ball.

    ``boundary_values`` maps every non-interior ball element (group element
    or word string) to its prescribed value.  Values given at interior
    points are ignored: the solve determines them.
    """
    check_mu(mu, G)
    domain = G.cayley_ball(radius, limit)
    members = {g for g, _ in domain}
    given = {}
    for key, val in boundary_values.items():
        g = G.element(key) if isinstance(key, str) else G.check(key)
        if g not in members:
            raise InputError(f"boundary point {G.describe(g)} is outside the radius-{radius} ball")
        given[g] = float(val)
    interior = interior_points(G, mu, domain, radius)
    inner = set(interior)
    missing = [g for g, _ in domain if g not in inner and g not in given]
    if missing:
        raise MissingBoundaryValue("boundary values missing",
                                   missing=[G.describe(g) for g in missing[:20]],
                                   count=len(missing))
    values = {g: given[g] for g, _ in domain if g not in inner}
    if interior:
        index = {g: i for i, g in enumerate(interior)}
        rows, cols, data = [], [], []
        rhs = np.zeros(len(interior))
        for i, g in enumerate(interior):
            rows.append(i)
            cols.append(i)
            data.append(1.0)
            for h, w in mu.items():
                x = G._mul(g, h)
                j = index.get(x)
                if j is None:
                    rhs[i] += w * values[x]
                else:
                    rows.append(i)
                    cols.append(j)
                    data.append(-w)
        A = scipy.sparse.csc_matrix((data, (rows, cols)), shape=(len(interior),) * 2)
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("error")
                sol = scipy.sparse.linalg.splu(A).solve(rhs)
        except (RuntimeError, scipy.sparse.linalg.MatrixRankWarning) as exc:
            raise SingularSystem("Dirichlet system is singular; the measure may not generate",
                                 reason=str(exc)) from None
        if not np.all(np.isfinite(sol)):
            raise SingularSystem("Dirichlet system produced non-finite values")
        values.update({g: float(x) for g, x in zip(interior, sol)})
    residual = mean_value_residual(G, mu, values, interior)
    if residual > RESIDUAL_TOL * max(1.0, max(abs(v) for v in values.values())):
        raise SingularSystem("Dirichlet solve is inaccurate; the system is close to singular",
                             residual=residual)
    return BallFunction(G, domain, values, radius, interior, residual)


@dataclass(frozen=True)
class HarmonicSpaceReport:
    dim: int
    admissible: bool | None

    def __int__(self):
        return self.dim

    def to_json(self) -> dict:
        return {"dim": self.dim, "admissible": self.admissible}


def markov_operator(G: Group, mu: FinMeasure) -> np.ndarray:
    """``(P f)(g) = sum_h mu(h) f(gh)`` on functions of a finite group, in ``G.elements()`` order."""
    check_mu(mu, G)
    elements = G.elements()
    index = {g: i for i, g in enumerate(elements)}
    P = np.zeros((len(elements), len(elements)))
    for i, g in enumerate(elements):
        for h, w in mu.items():
            P[i, index[G._mul(g, h)]] += w
    return P


def harmonic_function_space(G: Group, mu: FinMeasure) -> HarmonicSpaceReport:
    """Dimension of the ``mu``-harmonic functions on a finite group, with the admissibility flag.

    For an admissible measure only the constants are harmonic.
    """
    if not G.is_finite:
        raise InputError("harmonic_function_space needs a finite group")
    P = markov_operator(G, mu)
    dim = P.shape[0] - linalg.rank(P - np.eye(P.shape[0]))
    return HarmonicSpaceReport(dim, support_generates(G, mu))


@dataclass
class LipschitzCertificate:
    harmonic_residual: float
    lipschitz_empirical: float
    lipschitz_bound: float
    generator_bound: float
    value_at_identity: float
    center_residual: float
    edges_checked: int
    interior_checked: int

    @property
    def passed(self) -> bool:
        return (self.harmonic_residual < HARMONIC_TOL
                and self.lipschitz_empirical <= self.lipschitz_bound + LIPSCHITZ_SLACK
                and abs(self.value_at_identity) < HARMONIC_TOL)

    def to_json(self) -> dict:
        return {"passed": self.passed, "harmonic_residual": self.harmonic_residual,
                "lipschitz_empirical": self.lipschitz_empirical,
                "lipschitz_bound": self.lipschitz_bound,
                "generator_bound": self.generator_bound,
                "value_at_identity": self.value_at_identity,
                "center_residual": self.center_residual,
                "edges_checked": self.edges_checked,
                "interior_checked": self.interior_checked}


def lipschitz_from_cocycle(c: Cocycle, v, radius: int, mu: FinMeasure | None = None,
                           limit: int = DEFAULT_BALL_LIMIT):
    """Tabulate ``phi_v(g) = Re <b(g), v>`` on a ball and certify it.

    ``mu`` defaults to the uniform measure on the symmetric generating set.
    The certificate compares the largest jump across a Cayley edge with
    ``L |v|`` where ``L = max_s |b(s)|``.
    """
    G = c.group
    if mu is None:
        mu = uniform_on_generators(G)
    v = c.rep.vector(np.asarray(v))
    vnorm = float(np.linalg.norm(v))
    if vnorm == 0:
        raise InputError("v must be nonzero")
    center, _ = mu_center(c, mu)
    cres = float(np.linalg.norm(center))
    if cres >= HARMONIC_TOL:
        raise NotHarmonic("cocycle is not harmonic for this measure", center_residual=cres)
    domain = G.cayley_ball(radius, limit)
    values = {g: float(np.real(np.vdot(v, c.evaluate(g)))) for g, _ in domain}
    interior = interior_points(G, mu, domain, radius)
    hres = mean_value_residual(G, mu, values, interior)
    L = max((float(np.linalg.norm(b)) for b in c.values), default=0.0)
    jump = 0.0
    edges = 0
    for g, _ in domain:
        for letter in list(range(1, G.ngens + 1)) + list(range(-G.ngens, 0)):
            x = G._mul(g, G.letter(letter))
            if x in values:
                jump = max(jump, abs(values[x] - values[g]))
                edges += 1
    cert = LipschitzCertificate(hres, jump, L * vnorm, L, values[G.identity], cres,
                                edges, len(interior))
    return BallFunction(G, domain, values, radius, interior, hres), cert
