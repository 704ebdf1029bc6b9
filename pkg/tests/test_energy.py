import numpy as np
import pytest
from hypothesis import given, strategies as st

from harmonic_cocycles import catalog
from harmonic_cocycles.cocycle import coboundary, from_generator_values, mu_center, zero_cocycle
from harmonic_cocycles.energy import EnergyFunction, directional_derivative, energy, energy_at
from harmonic_cocycles.errors import InputError
from harmonic_cocycles.harmonize import harmonize_direct
from harmonic_cocycles.measure import FinMeasure, reflect, symmetrize, uniform_on_generators
from harmonic_cocycles.rep import UnitaryRep
from harmonic_cocycles.verify import random_instance

R = catalog.rotation


def brute_energy(c, mu, v):
    """Oracle: loop over the support and rebuild pi(g) and b(g) from the canonical word."""
    total = 0.0
    for g, w in mu.items():
        P = np.eye(c.rep.dim, dtype=complex)
        b = np.zeros(c.rep.dim, dtype=complex)
        for letter in c.group.word(g):
            s = c.rep.matrices[abs(letter) - 1]
            step = c.values[abs(letter) - 1] if letter > 0 else -(s.conj().T @ c.values[abs(letter) - 1])
            b = b + P @ step
            P = P @ (s if letter > 0 else s.conj().T)
        total += w * np.linalg.norm(P @ v - v + b) ** 2
    return total


def re(a, b):
    return float(np.real(np.vdot(b, a)))


def test_energy_examples():
    Z = catalog.integers()
    mu = uniform_on_generators(Z)
    rz = catalog.random_rep(Z, np.random.default_rng(0), dim=3)
    assert energy_at(zero_cocycle(rz), mu, np.zeros(3)) == 0
    triv = from_generator_values(catalog.trivial_rep(Z), [[1.0]])
    assert energy(triv, mu) == pytest.approx(1.0)
    rot = from_generator_values(UnitaryRep(Z, [R(np.pi / 2)]), [[1.0, 0.0]])
    assert energy_at(rot, mu, np.array([0.5, 0.5])) == pytest.approx(0.0, abs=1e-30)


def test_derivative_examples():
    Z = catalog.integers()
    triv = from_generator_values(catalog.trivial_rep(Z), [[1.0]])
    assert directional_derivative(triv, uniform_on_generators(Z), np.array([1.0])) == 0
    assert directional_derivative(triv, symmetrize(Z, FinMeasure.dirac((1,))), np.array([1.0])) == 0
    assert directional_derivative(triv, FinMeasure.dirac((1,)), np.array([1.0])) == 0
    skew = FinMeasure.from_pairs([((1,), 0.75), ((-1,), 0.25)])
    assert directional_derivative(triv, skew, np.array([1.0])) == pytest.approx(0.0, abs=1e-15)


def test_derivative_nonsymmetric_rotation_by_finite_difference():
    Z = catalog.integers()
    c = from_generator_values(UnitaryRep(Z, [R(0.9)]), [[1.0, -0.5]])
    mu = FinMeasure.from_pairs([((1,), 0.6), ((2,), 0.3), ((-1,), 0.1)])
    E = EnergyFunction(c, mu)
    for w in (np.array([1.0, 0.0]), np.array([0.3, 2.0])):
        h = 1e-5
        fd = (E(h * w) - E(-h * w)) / (2 * h)
        assert E.derivative(w) == pytest.approx(fd, rel=1e-6)
        assert E.derivative(w) != pytest.approx(0.0)


def test_harmonic_cocycle_has_zero_derivative():
    Z = catalog.integers()
    mu = uniform_on_generators(Z)
    c = from_generator_values(catalog.trivial_rep(Z, 2), [[1.0, 2.0]])
    for w in np.random.default_rng(0).normal(size=(5, 2)):
        assert abs(directional_derivative(c, mu, w)) < 1e-14


def test_shape_errors():
    Z = catalog.integers()
    c = from_generator_values(catalog.trivial_rep(Z, 2), [[1.0, 2.0]])
    with pytest.raises(InputError):
        energy_at(c, uniform_on_generators(Z), np.zeros(3))
    with pytest.raises(InputError):
        directional_derivative(c, uniform_on_generators(Z), np.zeros(1))


def test_energy_is_real_for_complex_reps():
    rep = catalog.random_rep(catalog.heisenberg(), np.random.default_rng(4), dim=3)
    c = catalog.random_cocycle(rep, np.random.default_rng(5))
    mu = catalog.random_measure(rep.group, np.random.default_rng(6))
    v = catalog.random_vector(rep, np.random.default_rng(7))
    e = energy_at(c, mu, v)
    assert isinstance(e, float)
    assert e == pytest.approx(brute_energy(c, mu, v), rel=1e-12)


def test_vectorized_energies_match():
    rng = np.random.default_rng(8)
    rep, c, mu = random_instance(rng, 2)
    E = EnergyFunction(c, mu)
    V = np.array([catalog.random_vector(rep, rng) for _ in range(4)])
    assert np.allclose(E.many(V), [E(v) for v in V])


instances = st.tuples(st.integers(0, 7), st.integers(0, 2**32 - 1), st.booleans())


def setup(inst):
    rng = np.random.default_rng(inst[1])
    rep, c, mu = random_instance(rng, inst[0], symmetric=inst[2])
    v, w = catalog.random_vector(rep, rng), catalog.random_vector(rep, rng)
    return rng, rep, c, mu, v, w


def dcoboundary_sq(rep, mu, w):
    return sum(wt * np.linalg.norm(rep.evaluate(g) @ w - w) ** 2 for g, wt in mu.items())


@given(instances)
def test_energy_matches_brute_force(inst):
    _, _, c, mu, v, _ = setup(inst)
    assert energy_at(c, mu, v) == pytest.approx(brute_energy(c, mu, v), rel=1e-10, abs=1e-12)


@given(instances)
def test_increment_identity(inst):
    _, rep, c, mu, v, w = setup(inst)
    E = EnergyFunction(c, mu)
    G = rep.group
    lhs = E(v + w) - E(v)
    cross = 0.0
    for g, wt in list(mu.items()) + list(reflect(G, mu).items()):
        cross += wt * re(rep.evaluate(g) @ v - v + c.evaluate(g), w)
    rhs = dcoboundary_sq(rep, mu, w) - 2 * cross
    assert abs(lhs - rhs) < 1e-9 * max(1.0, abs(lhs))


@given(instances)
def test_shift_from_zero(inst):
    _, rep, c, mu, v, _ = setup(inst)
    G = rep.group
    E = EnergyFunction(c, mu)
    pair = sum(wt * re(c.evaluate(g), v) for g, wt in list(mu.items()) + list(reflect(G, mu).items()))
    rhs = dcoboundary_sq(rep, mu, v) - 2 * pair
    assert abs(E(v) - E() - rhs) < 1e-9 * max(1.0, abs(rhs))
    assert abs(E(v) - E() - (dcoboundary_sq(rep, mu, v) + E.derivative(v))) < 1e-9 * max(1.0, abs(rhs))


@given(instances, st.floats(-50, 50))
def test_derivative_homogeneous(inst, scale):
    _, _, c, mu, _, w = setup(inst)
    E = EnergyFunction(c, mu)
    d = E.derivative(w)
    assert abs(E.derivative(scale * w) - scale * d) <= 1e-12 * max(1.0, abs(scale * d))


@given(instances)
def test_derivative_is_central_difference(inst):
    _, _, c, mu, _, w = setup(inst)
    E = EnergyFunction(c, mu)
    h = 1e-5
    fd = (E(h * w) - E(-h * w)) / (2 * h)
    assert abs(fd - E.derivative(w)) <= 1e-6 * max(1.0, abs(fd))


@given(instances)
def test_symmetrized_center_step_descends(inst):
    _, rep, c, mu, _, _ = setup(inst)
    E = EnergyFunction(c, mu)
    center, _ = mu_center(c, symmetrize(rep.group, mu))
    assert E(center) - E() <= 1e-12 * max(1.0, E())


@given(instances)
def test_coboundary_energy_at_minimum(inst):
    _, rep, _, mu, v, _ = setup(inst)
    if not inst[2]:
        mu = symmetrize(rep.group, mu)
    cob = coboundary(rep, v)
    report = harmonize_direct(cob, mu)
    assert report.energy_after < 1e-12 * max(1.0, report.energy_before)
