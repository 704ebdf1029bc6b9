import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from harmonic_cocycles import catalog, linalg
from harmonic_cocycles.cocycle import coboundary, from_generator_values, mu_center, zero_cocycle
from harmonic_cocycles.energy import EnergyFunction
from harmonic_cocycles.errors import NoConvergence, NotGenerating, NotSymmetric
from harmonic_cocycles.harmonize import (h1_dimensions, harmonize_direct, harmonize_iterative,
                                         predicted_iterations)
from harmonic_cocycles.measure import FinMeasure, uniform_on_generators
from harmonic_cocycles.rep import UnitaryRep
from harmonic_cocycles.verify import random_instance

R = catalog.rotation
Z = catalog.integers()
MU = uniform_on_generators(Z)


def rot_cocycle(theta, b=(1.0, 0.0)):
    return from_generator_values(UnitaryRep(Z, [R(theta)]), [list(b)])


def test_direct_rotation_example():
    c = rot_cocycle(np.pi / 2)
    report = harmonize_direct(c, MU)
    assert np.allclose(report.shift_vector, [0.5, 0.5], atol=1e-14)
    assert report.harmonic_cocycle.norm() < 1e-14
    assert report.energy_after < 1e-28
    # oracle: dense least squares on (I - pi(mu)) v = mu(b)
    A = np.eye(2) - (R(np.pi / 2) + R(-np.pi / 2)) / 2
    rhs = (np.array([1.0, 0.0]) - R(np.pi / 2).T @ np.array([1.0, 0.0])) / 2
    assert np.allclose(np.linalg.lstsq(A, rhs, rcond=None)[0], report.shift_vector)


def test_direct_passthrough():
    c = from_generator_values(catalog.trivial_rep(Z), [[1.0]])
    report = harmonize_direct(c, MU)
    assert report.harmonic_cocycle.distance(c) == 0
    assert report.harmonic_cocycle.norm() == 1.0
    assert report.iterations == 0 and not report.warnings


def test_iterative_examples():
    zero = zero_cocycle(UnitaryRep(Z, [R(0.3)]))
    assert harmonize_iterative(zero, MU).iterations == 0
    report = harmonize_iterative(rot_cocycle(np.pi / 2), MU)
    assert report.iterations == 1
    assert np.allclose(report.shift_vector, [0.5, 0.5], atol=1e-15)


def test_iterative_geometric_rate():
    theta = 0.1
    c = rot_cocycle(theta)
    tol = 1e-10
    report = harmonize_iterative(c, MU, tol=tol)
    # center_n = cos(theta)^n mu(b) because pi(mu) = cos(theta) I
    initial = float(np.linalg.norm(mu_center(c, MU)[0]))
    rough = math.log(tol) / math.log(math.cos(theta))
    assert abs(report.iterations - predicted_iterations(math.cos(theta), initial, tol)) <= 1
    # the bare log(tol)/log(cos) estimate ignores the small initial center
    assert abs(report.iterations - rough) < 0.2 * rough
    direct = harmonize_direct(c, MU)
    assert report.harmonic_cocycle.distance(direct.harmonic_cocycle) < 1e-6
    assert all(b <= a + 1e-12 for a, b in zip(report.energy_trace, report.energy_trace[1:]))


def test_iterative_no_convergence_for_bipartite_walk():
    c = from_generator_values(UnitaryRep(Z, [[[-1.0]]]), [[1.0]])
    with pytest.raises(NoConvergence) as info:
        harmonize_iterative(c, MU, max_iter=50)
    report = info.value.report
    assert not report.converged and report.iterations == 50
    assert max(report.energy_trace) <= report.energy_trace[0] + 1e-12
    assert info.value.exit_code == 2
    # the lazy walk converges
    assert harmonize_iterative(c, uniform_on_generators(Z, lazy=0.5)).converged


def test_iterative_stop_and_progress_hooks():
    c = rot_cocycle(0.1)
    seen = []
    with pytest.raises(NoConvergence):
        harmonize_iterative(c, MU, progress=lambda n, v, r: seen.append(r),
                            stop=lambda: len(seen) >= 7)
    assert len(seen) == 7
    assert all(b < a for a, b in zip(seen, seen[1:]))


def test_preconditions():
    c = rot_cocycle(0.4)
    with pytest.raises(NotSymmetric):
        harmonize_direct(c, FinMeasure.dirac((1,)))
    with pytest.raises(NotGenerating):
        harmonize_direct(c, FinMeasure.dirac((0,)))
    with pytest.raises(NotGenerating):
        harmonize_iterative(c, FinMeasure.uniform([(2,), (-2,)]))
    with pytest.raises(ValueError):
        harmonize_iterative(c, MU, tol=0)


def test_h1_examples():
    d = h1_dimensions(catalog.trivial_rep(Z))
    assert (d.dim_Z1, d.dim_B1, d.dim_H1, d.dim_harmonic) == (1, 0, 1, 1)
    d = h1_dimensions(UnitaryRep(Z, [R(np.pi / 2)]))
    assert (d.dim_Z1, d.dim_B1, d.dim_H1, d.dim_harmonic) == (2, 2, 0, 0)
    w = np.exp(2j * np.pi / 3)
    d = h1_dimensions(UnitaryRep(catalog.cyclic(3), [[[w]]]))
    assert (d.dim_Z1, d.dim_B1, d.dim_H1, d.dim_harmonic) == (2, 2, 0, 0)
    assert d.field == "complex" and d.complex_dims["dim_Z1"] == 1
    d = h1_dimensions(catalog.trivial_rep(catalog.free2()))
    assert (d.dim_Z1, d.dim_B1, d.dim_H1) == (2, 0, 2)
    d = h1_dimensions(catalog.trivial_rep(catalog.heisenberg()))
    assert (d.dim_Z1, d.dim_H1) == (2, 2)


def test_h1_brute_force_oracle_free_group():
    rep = catalog.random_rep(catalog.free2(), np.random.default_rng(3), dim=3)
    d = h1_dimensions(rep)
    # Z^1 is all of R^6; B^1 is the image of v -> (pi(x) v - v, pi(y) v - v)
    B = np.vstack([m - np.eye(3) for m in rep.matrices])
    assert d.dim_Z1 == 6
    assert d.dim_B1 == np.linalg.matrix_rank(B)


def test_h1_rejects_nonsymmetric():
    with pytest.raises(NotSymmetric):
        h1_dimensions(catalog.trivial_rep(Z), FinMeasure.dirac((1,)))


def test_report_json():
    out = harmonize_direct(rot_cocycle(np.pi / 2), MU).to_json()
    assert out["method"] == "direct" and out["converged"]
    assert out["shift_vector"] == pytest.approx([0.5, 0.5])


instances = st.tuples(st.integers(0, 7), st.integers(0, 2**32 - 1))


@settings(max_examples=30)
@given(instances)
def test_uniqueness_under_coboundary_shifts(inst):
    rng = np.random.default_rng(inst[1])
    rep, c, mu = random_instance(rng, inst[0])
    base = harmonize_direct(c, mu).harmonic_cocycle
    for _ in range(5):
        shifted = c + coboundary(rep, catalog.random_vector(rep, rng))
        assert harmonize_direct(shifted, mu).harmonic_cocycle.distance(base) < 1e-6


@settings(max_examples=30)
@given(instances)
def test_output_minimizes_energy(inst):
    rng = np.random.default_rng(inst[1])
    rep, c, mu = random_instance(rng, inst[0])
    phi = harmonize_direct(c, mu).harmonic_cocycle
    E = EnergyFunction(phi, mu)
    assert mu_center(phi, mu)[1]
    for _ in range(10):
        v = catalog.random_vector(rep, rng)
        assert E() <= E(v) + 1e-12
        assert abs(E.derivative(v)) < 1e-8


@settings(max_examples=20)
@given(instances)
def test_methods_agree(inst):
    rng = np.random.default_rng(inst[1])
    rep, c, mu = random_instance(rng, inst[0], lazy=0.3, min_angle=0.5)
    try:
        it = harmonize_iterative(c, mu, max_iter=20000)
    except NoConvergence:
        return
    assert it.harmonic_cocycle.distance(harmonize_direct(c, mu).harmonic_cocycle) < 1e-6
    assert all(b <= a + 1e-12 for a, b in zip(it.energy_trace, it.energy_trace[1:]))


@settings(max_examples=30)
@given(instances)
def test_harmonic_dim_equals_h1(inst):
    rng = np.random.default_rng(inst[1])
    rep, _, mu = random_instance(rng, inst[0])
    d = h1_dimensions(rep, mu)
    assert d.dim_harmonic == d.dim_H1 == d.dim_Z1 - d.dim_B1


@settings(max_examples=20)
@given(instances)
def test_parallelogram_bound(inst):
    rng = np.random.default_rng(inst[1])
    rep, c, mu = random_instance(rng, inst[0], lazy=0.3)
    E = EnergyFunction(c, mu)
    inf = E(harmonize_direct(c, mu).shift_vector)
    a, b = catalog.random_vector(rep, rng), catalog.random_vector(rep, rng)
    ba, bb = c.shifted(a), c.shifted(b)
    half = 0.5 * sum(w * np.linalg.norm(ba.evaluate(g) - bb.evaluate(g)) ** 2 for g, w in mu.items())
    assert abs(half - (E(a) + E(b) - 2 * E((a + b) / 2))) < 1e-9 * max(1.0, half)
    assert half <= E(a) + E(b) - 2 * inf + 1e-9


def test_rank_helper_threshold():
    A = np.diag([1.0, 1e-12, 0.0])
    assert linalg.rank(A) == 1
    assert linalg.null_space(A).shape[1] == 2
