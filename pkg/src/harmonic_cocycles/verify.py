"""Numerical checks of the library's identities on seeded random instances.

Every check returns a :class:`CheckResult`.  ``CRITERIA`` holds the
headline checks (energy identities, uniqueness, minimization, descent, the
vanishing dichotomy, products, induction, finite groups and Lipschitz
functions); ``INVARIANTS`` holds the per-module property checks.  Both are
run by the CLI ``selftest`` and by the test suite.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import catalog
from .cocycle import (Cocycle, check_cocycle_identity, coboundary, from_generator_values,
                      mu_center, split_fixed)
from .energy import EnergyFunction, directional_derivative
from .errors import NoConvergence
from .groups import CyclicGroup, FreeAbelianGroup, ProductGroup
from .harmonic_functions import dirichlet_solve, harmonic_function_space, lipschitz_from_cocycle
from .harmonize import h1_dimensions, harmonize_direct, harmonize_iterative
from .induction import (FiniteIndexSubgroup, composition_holds, induce_cocycle, induce_rep,
                        induce_vector, transfer_dimensions)
from .measure import (convolve, is_symmetric, reflect, second_moment, symmetrize,
                      uniform_on_generators)
from .products import dimension_additivity, decompose_product, restrict_factor
from .rep import UnitaryRep, fixed_subspace, pi_mu, validate_homomorphism


@dataclass
class CheckResult:
    name: str
    passed: bool
    residual: float
    tolerance: float
    count: int
    elapsed: float = 0.0
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} {self.name}: residual={self.residual:.3e} tol={self.tolerance:.1e} "
                f"count={self.count} time={self.elapsed:.2f}s")

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "residual": self.residual,
                "tolerance": self.tolerance, "count": self.count,
                "elapsed": round(self.elapsed, 3), "detail": self.detail}


def _timed(fn):
    def wrapper(seed: int = 0, **kw) -> CheckResult:
        start = time.perf_counter()
        result = fn(seed, **kw)
        result.elapsed = time.perf_counter() - start
        return result
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _rng(seed, salt):
    return np.random.default_rng([seed, salt])


def random_instance(rng, group_index: int, max_dim: int = 8, symmetric: bool = True,
                    lazy: float | None = None, min_angle: float = 0.3):
    """``(rep, cocycle, measure)`` on the ``group_index``-th instance group."""
    groups = catalog.instance_groups()
    G = groups[group_index % len(groups)]
    while True:
        dim = int(rng.integers(1, max_dim + 1)) if G.kind in ("free", "free_abelian") else None
        rep = catalog.random_rep(G, rng, dim=dim, min_angle=min_angle)
        if rep.dim <= max_dim:
            break
    c = catalog.random_cocycle(rep, rng)
    mu = catalog.random_measure(G, rng, lazy=lazy, symmetric=symmetric)
    return rep, c, mu


def _inner(a, b) -> float:
    return float(np.real(np.vdot(b, a)))


def _sum_mu_reflected(c: Cocycle, mu, fn) -> float:
    """``sum_g (mu + mu_reflected)(g) fn(g)``, with ``fn`` evaluated over both supports."""
    G = c.group
    mu_r = reflect(G, mu)
    return sum(w * fn(g) for g, w in mu.items()) + sum(w * fn(g) for g, w in mu_r.items())


# -- criteria ------------------------------------------------------------------

@_timed
def energy_lemmas(seed: int = 0, instances: int = 500) -> CheckResult:
    """Energy-difference identities, derivative formula and homogeneity."""
    rng = _rng(seed, 1)
    worst = {"increment": 0.0, "shift": 0.0, "derivative_split": 0.0, "homogeneity": 0.0,
             "derivative": 0.0}
    kinds = set()
    for n in range(instances):
        rep, c, mu = random_instance(rng, n, symmetric=bool(n % 2))
        kinds.add(rep.group.kind)
        E = EnergyFunction(c, mu)
        v = catalog.random_vector(rep, rng)
        w = catalog.random_vector(rep, rng)
        pis = {g: rep.evaluate(g) for g, _ in mu.items()}

        def ev(g, x):
            return rep.evaluate(g) @ x - x

        quad_w = sum(wt * np.linalg.norm(pis[g] @ w - w) ** 2 for g, wt in mu.items())
        quad_v = sum(wt * np.linalg.norm(pis[g] @ v - v) ** 2 for g, wt in mu.items())
        lhs = E(v + w) - E(v)
        rhs = quad_w - 2 * _sum_mu_reflected(c, mu, lambda g: _inner(ev(g, v) + c.evaluate(g), w))
        worst["increment"] = max(worst["increment"], abs(lhs - rhs))
        lhs = E(v) - E()
        rhs = quad_v - 2 * _sum_mu_reflected(c, mu, lambda g: _inner(c.evaluate(g), v))
        worst["shift"] = max(worst["shift"], abs(lhs - rhs))
        Dv = directional_derivative(c, mu, v)
        worst["derivative_split"] = max(worst["derivative_split"], abs(E(v) - E() - quad_v - Dv))
        k = float(rng.normal() * 3)
        Dkv = E.derivative(k * v)
        worst["homogeneity"] = max(worst["homogeneity"],
                                   abs(Dkv - k * Dv) / max(1.0, abs(k * Dv)))
        # E(t w) is quadratic in t, so the central difference at t = 1 is exact
        exact = (E(w) - E(-w)) / 2
        worst["derivative"] = max(worst["derivative"], abs(E.derivative(w) - exact))
    res = max(worst.values())
    tol = 1e-9
    return CheckResult("energy lemma identities", res < tol and len(kinds) >= 4, res, tol,
                       instances, detail={"residuals": worst, "group_kinds": sorted(kinds)})


@_timed
def harmonic_uniqueness(seed: int = 0, instances: int = 100, shifts: int = 20) -> CheckResult:
    """The harmonic representative does not depend on the coboundary shift."""
    rng = _rng(seed, 2)
    worst = 0.0
    for n in range(instances):
        rep, c, mu = random_instance(rng, n)
        phi = harmonize_direct(c, mu).harmonic_cocycle
        for _ in range(shifts):
            v = catalog.random_vector(rep, rng) * 3
            alt = harmonize_direct(c + coboundary(rep, v), mu).harmonic_cocycle
            worst = max(worst, phi.distance(alt))
    tol = 1e-6
    return CheckResult("harmonic representative is unique", worst < tol, worst, tol,
                       instances * shifts)


@_timed
def minimizer(seed: int = 0, instances: int = 100, samples: int = 100) -> CheckResult:
    """Harmonic output has vanishing derivatives and minimal energy over its class."""
    rng = _rng(seed, 3)
    worst_d = 0.0
    worst_e = 0.0
    for n in range(instances):
        rep, c, mu = random_instance(rng, n)
        phi = harmonize_direct(c, mu).harmonic_cocycle
        E = EnergyFunction(phi, mu)
        e0 = E()
        for _ in range(samples):
            w = catalog.random_vector(rep, rng)
            worst_d = max(worst_d, abs(E.derivative(w)))
        V = np.array([catalog.random_vector(rep, rng) for _ in range(samples)])
        worst_e = max(worst_e, float(np.max(e0 - E.many(V))) / max(1.0, e0))
    tol = 1e-8
    passed = worst_d < tol and worst_e <= 1e-12
    return CheckResult("harmonic cocycles minimize energy", passed, worst_d, tol,
                       instances * samples,
                       detail={"max_derivative": worst_d, "max_energy_excess": worst_e})


@_timed
def center_descent(seed: int = 0, instances: int = 50) -> CheckResult:
    """Center updates never raise the energy and converge to the direct solution."""
    rng = _rng(seed, 4)
    worst = 0.0
    worst_step = 0.0
    converged = 0
    for n in range(instances):
        rep, c, mu = random_instance(rng, n, lazy=0.3, min_angle=0.5)
        try:
            it = harmonize_iterative(c, mu, tol=1e-10, max_iter=20_000)
        except NoConvergence as exc:
            it = exc.report
        trace = np.array(it.energy_trace)
        if len(trace) > 1:
            worst_step = max(worst_step, float(np.max(np.diff(trace))))
        if it.converged:
            converged += 1
            direct = harmonize_direct(c, mu).harmonic_cocycle
            worst = max(worst, direct.distance(it.harmonic_cocycle))
    tol = 1e-6
    passed = worst < tol and worst_step <= 1e-12
    return CheckResult("center update descends and matches the direct solve", passed, worst, tol,
                       instances, detail={"converged": converged,
                                          "max_energy_increase": worst_step})


@_timed
def vanishing_dichotomy(seed: int = 0) -> CheckResult:
    """No harmonic cocycles for nontrivial irreps of finite groups; some for Z and F2 trivially."""
    rng = _rng(seed, 5)
    failures = []
    count = 0
    irreps = catalog.s3_irreps() + catalog.d4_irreps()
    for n in range(2, 8):
        irreps += catalog.cyclic_irreps(n)
    for rep in irreps:
        validate_homomorphism(rep)
        for mu in catalog.standard_measures(rep.group, rng):
            count += 1
            d = h1_dimensions(rep, mu).dim_harmonic
            if d != 0:
                failures.append({"group": repr(rep.group), "dim": d})
    for G in (catalog.integers(), catalog.free2()):
        for mu in catalog.standard_measures(G, rng):
            count += 1
            d = h1_dimensions(catalog.trivial_rep(G), mu).dim_harmonic
            if d < 1:
                failures.append({"group": repr(G), "dim": d})
    return CheckResult("harmonic dimension dichotomy", not failures, float(len(failures)), 0.5,
                       count, detail={"failures": failures})


def _product_reps(rng):
    zz = catalog.z_times_z()
    zc = catalog.z_times_cyclic(3)
    w = np.exp(2j * np.pi / 3)
    R = catalog.rotation(np.pi / 2)
    reps = [
        UnitaryRep(zz, [np.eye(1), np.eye(1)]),
        UnitaryRep(zz, [R, np.eye(2)]),
        UnitaryRep(zz, [np.eye(2), np.diag([1.0, -1.0])]),
        UnitaryRep(zz, [np.diag([1.0, 1.0, -1.0]), np.diag([1.0, -1.0, 1.0])]),
        catalog.random_rep(zz, rng, min_angle=0.3),
        UnitaryRep(zc, [np.eye(1), np.eye(1)]),
        UnitaryRep(zc, [[[1]], [[w]]]),
        UnitaryRep(zc, [np.diag([1, np.exp(0.7j), 1]), np.diag([1, 1, w])]),
        catalog.random_rep(zc, rng, min_angle=0.3),
    ]
    return reps


@_timed
def product_decomposition(seed: int = 0, cocycles_per_rep: int = 5) -> CheckResult:
    """Components sum to the harmonic representative, lie in the right subspaces, dims add up."""
    rng = _rng(seed, 6)
    worst_sum = worst_inv = worst_cross = 0.0
    additivity = []
    count = 0
    for rep in _product_reps(rng):
        G = rep.group
        mus = [uniform_on_generators(f, lazy=0.5) for f in G.factors]
        dims = dimension_additivity(rep, mus)
        additivity.append(dims)
        for _ in range(cocycles_per_rep):
            c = catalog.random_cocycle(rep, rng)
            dec = decompose_product(c, mus)
            count += 1
            worst_sum = max(worst_sum, dec.residual)
            worst_inv = max([worst_inv, dec.relator_residual] + dec.invariance_residuals)
            for _ in range(10):
                g = G.random_element(rng, 6)
                parts = dec.beta_fixed.evaluate(g) + sum(
                    b.evaluate(G.embed(j, g[j])) for j, b in enumerate(dec.factor_cocycles))
                worst_cross = max(worst_cross,
                                  float(np.linalg.norm(dec.harmonic_cocycle.evaluate(g) - parts)))
    exact = all(d["equal"] for d in additivity)
    passed = worst_sum < 1e-7 and worst_inv < 1e-8 and worst_cross < 1e-7 and exact
    return CheckResult("product decomposition", passed, max(worst_sum, worst_cross), 1e-7, count,
                       detail={"invariance_residual": worst_inv, "cross_residual": worst_cross,
                               "additivity": additivity})


def induction_examples():
    """``(subgroup, [representations of the subgroup])`` pairs used by the induction checks."""
    Z = catalog.integers()
    two_z = FiniteIndexSubgroup(Z, FreeAbelianGroup(1, ["u"]), [(2,)], [(0,), (1,)])
    u = two_z.subgroup
    z_reps = [catalog.trivial_rep(u)] + [UnitaryRep(u, [catalog.rotation(th)])
                                         for th in (0.0, np.pi / 2, 0.3)]
    S3 = catalog.s3()
    C3 = CyclicGroup(3, ["b"])
    a3 = FiniteIndexSubgroup(S3, C3, [S3.generators[1]], [S3.identity, S3.generators[0]])
    w = np.exp(2j * np.pi / 3)
    c3_reps = [catalog.trivial_rep(C3), UnitaryRep(C3, [[[w]]]),
               UnitaryRep(C3, [catalog.rotation(2 * np.pi / 3)])]
    C2 = CyclicGroup(2, ["a"])
    b = S3.generators[1]
    order2 = FiniteIndexSubgroup(S3, C2, [S3.generators[0]], [S3.identity, b, S3._mul(b, b)])
    c2_reps = [catalog.trivial_rep(C2), UnitaryRep(C2, [[[-1.0]]])]
    D4 = catalog.d4()
    C4 = CyclicGroup(4, ["r"])
    rot = FiniteIndexSubgroup(D4, C4, [D4.generators[0]], [D4.identity, D4.generators[1]])
    c4_reps = [catalog.trivial_rep(C4), UnitaryRep(C4, [[[1j]]])]
    return [(two_z, z_reps), (a3, c3_reps), (order2, c2_reps), (rot, c4_reps)]


@_timed
def induction_transfer(seed: int = 0, triples: int = 500) -> CheckResult:
    """``dim H^1`` survives induction; the coset cocycle composes exactly."""
    rng = _rng(seed, 7)
    mismatches = []
    count = 0
    worst_cob = 0.0
    examples = induction_examples()
    for sub, reps in examples:
        for pi in reps:
            dims = transfer_dimensions(sub, pi)
            count += 1
            if not dims["equal"]:
                mismatches.append({"subgroup": repr(sub.subgroup), "dims": dims})
            ind = induce_rep(sub, pi)
            v = catalog.random_vector(pi, rng)
            lifted = induce_cocycle(sub, coboundary(pi, v), ind)
            expected = coboundary(ind.induced, induce_vector(sub, v))
            worst_cob = max(worst_cob, lifted.distance(expected))
    bad = 0
    for n in range(triples):
        sub = examples[n % len(examples)][0]
        G = sub.ambient
        g, h = G.random_element(rng, 5), G.random_element(rng, 5)
        f = sub.coset_reps[int(rng.integers(len(sub.coset_reps)))]
        bad += not composition_holds(sub, g, h, f)
    passed = not mismatches and bad == 0 and worst_cob < 1e-8
    return CheckResult("induction transfers cohomology", passed, worst_cob, 1e-8, count + triples,
                       detail={"mismatches": mismatches, "composition_failures": bad})


@_timed
def finite_groups(seed: int = 0) -> CheckResult:
    """Only constants are harmonic on finite groups; the Dirichlet solve reproduces a linear function."""
    rng = _rng(seed, 8)
    bad = []
    count = 0
    for G in catalog.finite_groups():
        for mu in catalog.standard_measures(G, rng):
            count += 1
            rep = harmonic_function_space(G, mu)
            if rep.dim != 1 or rep.admissible is not True:
                bad.append({"group": repr(G), "dim": rep.dim})
    Z = catalog.integers()
    f = dirichlet_solve(Z, uniform_on_generators(Z), 5, {(5,): 5.0, (-5,): -5.0})
    err = max(abs(f.values[(n,)] - n) for n in range(-5, 6))
    return CheckResult("finite groups and the Dirichlet problem", not bad and err < 1e-9, err,
                       1e-9, count + 1, detail={"failures": bad})


@_timed
def lipschitz_functions(seed: int = 0) -> CheckResult:
    """``phi_v`` from harmonic cocycles on Z and F2 is harmonic and ``L |v|``-Lipschitz."""
    rng = _rng(seed, 9)
    Z, F2 = catalog.integers(), catalog.free2()
    cases = [
        (from_generator_values(catalog.trivial_rep(Z), [[1.0]]), [1.0], 8),
        (from_generator_values(catalog.trivial_rep(F2, 2), [[1.0, 0.0], [0.0, 1.0]]), [1.0, 1.0], 4),
    ]
    for G, radius in ((Z, 8), (F2, 3)):
        for _ in range(3):
            rep = catalog.random_rep(G, rng, dim=3, min_angle=0.3)
            phi = harmonize_direct(catalog.random_cocycle(rep, rng), uniform_on_generators(G))
            cases.append((phi.harmonic_cocycle, catalog.random_vector(rep, rng), radius))
    worst = 0.0
    failures = 0
    for c, v, radius in cases:
        _, cert = lipschitz_from_cocycle(c, v, radius)
        worst = max(worst, cert.harmonic_residual)
        failures += not cert.passed
    z_fn, _ = lipschitz_from_cocycle(cases[0][0], [1.0], 8)
    linear = all(abs(z_fn.values[(n,)] - n) < 1e-12 for n in range(-8, 9))
    return CheckResult("Lipschitz harmonic functions from cocycles", failures == 0 and linear,
                       worst, 1e-8, len(cases), detail={"failures": failures})


CRITERIA = [energy_lemmas, harmonic_uniqueness, minimizer, center_descent, vanishing_dichotomy,
            product_decomposition, induction_transfer, finite_groups, lipschitz_functions]


# -- module invariants ---------------------------------------------------------

def _all_kind_groups():
    return catalog.instance_groups() + [catalog.cyclic(4), catalog.free2()]


@_timed
def group_laws(seed: int = 0, triples: int = 1000) -> CheckResult:
    """Associativity, identity, inverses, congruence and word-metric axioms on random elements."""
    rng = _rng(seed, 11)
    bad = 0
    count = 0
    for G in _all_kind_groups():
        rewrites = list(G.relators) + [(s, -s) for s in range(1, G.ngens + 1)]
        for _ in range(triples):
            a, b, c = (G.random_element(rng, 4) for _ in range(3))
            e = G.identity
            bad += G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c))
            bad += G.mul(a, e) != a or G.mul(e, a) != a or G.mul(a, G.inv(a)) != e
            word = list(G.word(a))
            pos = int(rng.integers(0, len(word) + 1))
            r = list(rewrites[int(rng.integers(len(rewrites)))])
            a2 = G.evaluate_word(word[:pos] + r + word[pos:])
            bad += a2 != a or G.mul(a2, b) != G.mul(a, b) or G.mul(b, a2) != G.mul(b, a)
            count += 1
        for _ in range(30):
            a, b = G.random_element(rng, 3), G.random_element(rng, 3)
            la, lb = G.word_length(a), G.word_length(b)
            bad += G.word_length(G.mul(a, b)) > la + lb
            bad += G.word_length(G.inv(a)) != la
        small = dict(G.cayley_ball(2))
        big = dict(G.cayley_ball(3))
        bad += any(big.get(g) != n for g, n in small.items())
    return CheckResult("group laws and word metric", bad == 0, float(bad), 0.5, count)


@_timed
def measure_laws(seed: int = 0, trials: int = 50) -> CheckResult:
    """Symmetrization is symmetric, convolution keeps mass 1, second moments match."""
    rng = _rng(seed, 12)
    bad = 0
    worst = 0.0
    for n in range(trials):
        G = _all_kind_groups()[n % len(_all_kind_groups())]
        mu = catalog.random_measure(G, rng, symmetric=False)
        nu = catalog.random_measure(G, rng)
        sym = symmetrize(G, mu)
        bad += not is_symmetric(G, sym)
        worst = max(worst, abs(sum(convolve(G, mu, nu).weights) - 1))
        worst = max(worst, abs(second_moment(G, sym) - second_moment(G, mu)))
    return CheckResult("measure laws", bad == 0 and worst < 1e-12, worst, 1e-12, trials)


@_timed
def rep_laws(seed: int = 0, trials: int = 40) -> CheckResult:
    """Averaging operators contract, their 1-eigenspace is the fixed space, evaluation is word-independent."""
    rng = _rng(seed, 13)
    worst = 0.0
    bad = 0
    for n in range(trials):
        rep, _, mu = random_instance(rng, n, min_angle=0.3)
        G = rep.group
        M = pi_mu(rep, mu)
        bad += np.linalg.norm(M, 2) > 1 + 1e-9
        lam, U = np.linalg.eigh((M + M.conj().T) / 2)
        ones = U[:, np.abs(lam - 1) < 1e-8]
        bad += ones.shape[1] != fixed_subspace(rep).dim
        for _ in range(5):
            g = G.random_element(rng, 5)
            word = list(G.word(g))
            pos = int(rng.integers(0, len(word) + 1))
            s = int(rng.integers(1, G.ngens + 1)) * int(rng.choice([-1, 1]))
            padded = word[:pos] + [s, -s] + word[pos:]
            worst = max(worst, float(np.abs(rep.evaluate_word(padded) - rep.evaluate(g)).max()))
    return CheckResult("representation laws", bad == 0 and worst < 1e-9, worst, 1e-9, trials)


@_timed
def cocycle_laws(seed: int = 0, trials: int = 40, pairs: int = 25) -> CheckResult:
    """Cocycle identity, growth bound, inverse formula and the fixed-part center."""
    rng = _rng(seed, 14)
    worst = 0.0
    bad = 0
    for n in range(trials):
        rep, c, mu = random_instance(rng, n)
        G = rep.group
        prs = [(G.random_element(rng, 3), G.random_element(rng, 3)) for _ in range(pairs)]
        worst = max(worst, check_cocycle_identity(c, prs))
        L = max(float(np.linalg.norm(b)) for b in c.values)
        for g, _ in prs:
            bad += np.linalg.norm(c.evaluate(g)) > G.word_length(g) * L + 1e-9
            r = rep.evaluate(G._inv(g)) @ c.evaluate(g) + c.evaluate(G._inv(g))
            worst = max(worst, float(np.linalg.norm(r)))
        fixed, unfixed = split_fixed(c)
        worst = max(worst, float(np.linalg.norm(mu_center(fixed, mu)[0])),
                    (fixed + unfixed).distance(c))
    return CheckResult("cocycle laws", bad == 0 and worst < 1e-8, worst, 1e-8, trials * pairs)


@_timed
def energy_laws(seed: int = 0, trials: int = 60) -> CheckResult:
    """Finite differences match the derivative; one symmetrized center step never raises energy."""
    rng = _rng(seed, 15)
    worst_fd = 0.0
    worst_step = -np.inf
    for n in range(trials):
        rep, c, mu = random_instance(rng, n, symmetric=bool(n % 2))
        E = EnergyFunction(c, mu)
        w = catalog.random_vector(rep, rng)
        h = 1e-5
        fd = (E(h * w) - E(-h * w)) / (2 * h)
        worst_fd = max(worst_fd, abs(fd - E.derivative(w)) / max(1.0, abs(fd)))
        center, _ = mu_center(c, symmetrize(rep.group, mu))
        worst_step = max(worst_step, E(center) - E())
    passed = worst_fd < 1e-6 and worst_step <= 1e-12
    return CheckResult("energy derivative and center step", passed, worst_fd, 1e-6, trials,
                       detail={"max_step_increase": float(worst_step)})


@_timed
def harmonize_laws(seed: int = 0, trials: int = 30) -> CheckResult:
    """Parallelogram identity along iterates; harmonic dimension equals H^1 dimension."""
    rng = _rng(seed, 16)
    worst = 0.0
    bad = 0
    for n in range(trials):
        rep, c, mu = random_instance(rng, n, lazy=0.3, min_angle=0.5)
        try:
            it = harmonize_iterative(c, mu, tol=1e-6, max_iter=200)
        except NoConvergence as exc:
            it = exc.report
        E = EnergyFunction(c, mu)
        inf = E(harmonize_direct(c, mu).shift_vector)
        vs = [catalog.random_vector(rep, rng) for _ in range(2)] + [it.shift_vector]
        for a in vs:
            for b in vs:
                ba, bb = c.shifted(a), c.shifted(b)
                half = 0.5 * sum(wt * np.linalg.norm(ba.evaluate(g) - bb.evaluate(g)) ** 2
                                 for g, wt in mu.items())
                ident = E(a) + E(b) - 2 * E((a + b) / 2)
                worst = max(worst, abs(half - ident))
                bad += half > E(a) + E(b) - 2 * inf + 1e-9
        d = h1_dimensions(rep, mu)
        bad += d.dim_harmonic != d.dim_H1
    return CheckResult("harmonization laws", bad == 0 and worst < 1e-9, worst, 1e-9, trials)


@_timed
def product_laws(seed: int = 0) -> CheckResult:
    """Restricting a validated cocycle to a factor gives a validated cocycle."""
    rng = _rng(seed, 17)
    G = ProductGroup([catalog.cyclic(2), catalog.s3()])
    bad = 0
    count = 0
    for _ in range(3):
        rep = catalog.random_rep(G, rng)
        c = from_generator_values(rep, catalog.random_cocycle(rep, rng).values)
        for j in range(2):
            restrict_factor(c, j)
            count += 1
    F = ProductGroup([catalog.free2(), catalog.cyclic(2)])
    rep = UnitaryRep(F, [[[-1.0]], [[1.0]], [[1.0]]])
    dims = dimension_additivity(rep, [uniform_on_generators(f, lazy=0.5) for f in F.factors])
    bad += not dims["equal"] or dims["lhs"] != 1
    return CheckResult("product restriction laws", bad == 0, float(bad), 0.5, count + 1)


@_timed
def induction_laws(seed: int = 0) -> CheckResult:
    """Induced cocycles harmonize cleanly; integrability sums are finite."""
    rng = _rng(seed, 18)
    worst = 0.0
    count = 0
    finite = True
    for sub, reps in induction_examples():
        for pi in reps:
            ind = induce_rep(sub, pi)
            phi = catalog.random_cocycle(pi, rng)
            lifted = induce_cocycle(sub, phi, ind)
            G = sub.ambient
            report = harmonize_direct(lifted, uniform_on_generators(G, lazy=0.2))
            worst = max(worst, report.center_residual)
            count += 1
        finite = finite and all(np.isfinite(v) for v in sub.integrability().values())
    return CheckResult("induction laws", worst < 1e-8 and finite, worst, 1e-8, count)


@_timed
def harmonic_function_laws(seed: int = 0, trials: int = 10) -> CheckResult:
    """Maximum principle for random boundary data on Z and Z^2 balls."""
    rng = _rng(seed, 19)
    bad = 0
    for n in range(trials):
        G = catalog.integers() if n % 2 else catalog.z2()
        mu = uniform_on_generators(G)
        radius = 3
        ball = G.cayley_ball(radius)
        members = {g for g, _ in ball}
        interior = {g for g, d in ball
                    if d < radius and all(G._mul(g, h) in members for h in mu.support)}
        bvals = {g: float(rng.normal()) for g, _ in ball if g not in interior}
        f = dirichlet_solve(G, mu, radius, bvals)
        lo, hi = min(bvals.values()), max(bvals.values())
        bad += any(not lo < f.values[g] < hi for g in interior)
    return CheckResult("maximum principle", bad == 0, float(bad), 0.5, trials)


INVARIANTS = [group_laws, measure_laws, rep_laws, cocycle_laws, energy_laws, harmonize_laws,
              product_laws, induction_laws, harmonic_function_laws]


def run_checks(checks, seed: int = 0) -> list[CheckResult]:
    out = []
    for check in checks:
        try:
            out.append(check(seed))
        except Exception as exc:  # report, never hide, a crashing check
            out.append(CheckResult(check.__name__, False, float("inf"), 0.0, 0,
                                   detail={"error": f"{type(exc).__name__}: {exc}"}))
    return out
