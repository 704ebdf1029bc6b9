import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from harmonic_cocycles import catalog
from harmonic_cocycles.cocycle import (Cocycle, check_cocycle_identity, coboundary, cocycle_space,
                                       from_generator_values, from_json, mean_value_defect,
                                       mu_center, split_fixed, zero_cocycle)
from harmonic_cocycles.errors import InputError, RelatorViolation
from harmonic_cocycles.measure import FinMeasure, symmetrize, uniform_on_generators
from harmonic_cocycles.rep import UnitaryRep
from harmonic_cocycles.verify import random_instance

R = catalog.rotation


def z_trivial(value=1.0):
    Z = catalog.integers()
    return from_generator_values(catalog.trivial_rep(Z), [[value]])


def test_free_group_accepts_anything():
    rep = catalog.random_rep(catalog.free2(), np.random.default_rng(0), dim=3)
    vals = np.random.default_rng(1).normal(size=(2, 3))
    c = from_generator_values(rep, vals)
    assert np.array_equal(c.values, vals)
    assert cocycle_space(rep).shape[1] == 6


def test_commutator_relator_on_z2():
    rep = UnitaryRep(catalog.z2(), [R(np.pi / 2), np.eye(2)])
    from_generator_values(rep, {"s": [1.0, 0.0], "t": [0.0, 0.0]})
    with pytest.raises(RelatorViolation):
        from_generator_values(rep, {"s": [1.0, 0.0], "t": [0.0, 1.0]})


def test_cube_roots_accept_anything():
    w = np.exp(2j * np.pi / 3)
    rep = UnitaryRep(catalog.cyclic(3), [[[w]]])
    assert abs(1 + w + w * w) < 1e-15
    c = from_generator_values(rep, [[0.3 - 1.2j]])
    assert np.linalg.norm(c.evaluate(0)) == 0
    assert cocycle_space(rep).shape[1] == 1


def test_cyclic_trivial_rep_has_no_cocycles():
    rep = catalog.trivial_rep(catalog.cyclic(4))
    with pytest.raises(RelatorViolation):
        from_generator_values(rep, [[1.0]])


def test_evaluation_telescopes():
    c = z_trivial()
    assert c.evaluate((3,)) == pytest.approx([3.0])
    assert c.evaluate((0,)) == pytest.approx([0.0])
    assert c.evaluate((-1,)) == pytest.approx([-1.0])
    for n in range(-6, 7):
        assert c((n,))[0] == pytest.approx(n)


def test_evaluation_matches_brute_force_sum():
    Z = catalog.integers()
    rep = UnitaryRep(Z, [R(0.7)])
    b = np.array([0.2, -1.0])
    c = from_generator_values(rep, [b])
    oracle = sum(np.linalg.matrix_power(R(0.7), k) @ b for k in range(5))
    assert np.allclose(c.evaluate((5,)), oracle)


def test_coboundary_examples():
    Z = catalog.integers()
    rep = UnitaryRep(Z, [R(np.pi / 2)])
    assert coboundary(rep, [0.0, 0.0]).norm() == 0
    assert np.allclose(coboundary(rep, [1.0, 0.0]).values[0], [-1.0, 1.0])
    triv = catalog.trivial_rep(catalog.free2(), 2)
    assert coboundary(triv, [3.0, -1.0]).norm() == 0


def test_center_examples():
    Z = catalog.integers()
    c = z_trivial()
    center, harmonic = mu_center(c, uniform_on_generators(Z))
    assert center == pytest.approx([0.0]) and harmonic
    center, harmonic = mu_center(c, FinMeasure.dirac((1,)))
    assert center == pytest.approx([1.0]) and not harmonic
    zero = zero_cocycle(catalog.random_rep(Z, np.random.default_rng(0), dim=3))
    assert mu_center(zero, catalog.random_measure(Z, np.random.default_rng(1)))[1]


def test_split_fixed_examples():
    Z = catalog.integers()
    rot = from_generator_values(UnitaryRep(Z, [R(0.5)]), [[1.0, 2.0]])
    fixed, unfixed = split_fixed(rot)
    assert fixed.norm() == 0 and unfixed.distance(rot) == 0
    triv = z_trivial(2.5)
    fixed, unfixed = split_fixed(triv)
    assert fixed.distance(triv) < 1e-15 and unfixed.norm() < 1e-15
    c = from_generator_values(UnitaryRep(Z, [np.diag([1.0, -1.0])]), [[1.0, 1.0]])
    fixed, unfixed = split_fixed(c)
    assert np.allclose(fixed.values[0], [1.0, 0.0])
    assert np.allclose(unfixed.values[0], [0.0, 1.0])


def test_input_errors():
    rep = catalog.trivial_rep(catalog.z2())
    with pytest.raises(InputError):
        from_generator_values(rep, {"s": [1.0]})
    with pytest.raises(InputError):
        from_generator_values(rep, [[1.0, 2.0], [0.0, 0.0]])
    with pytest.raises(InputError):
        from_json(rep, {"values": {}})


def test_json_roundtrip():
    rep = UnitaryRep(catalog.cyclic(3), [[[np.exp(2j * np.pi / 3)]]])
    c = from_generator_values(rep, [[1.0 + 2.0j]])
    back = from_json(rep, json.loads(json.dumps(c.to_json())))
    assert back.distance(c) < 1e-15


def test_harmonic_mean_value_form():
    c = z_trivial()
    mu = uniform_on_generators(catalog.integers())
    for n in range(-4, 5):
        assert mean_value_defect(c, mu, (n,)) < 1e-12


instances = st.tuples(st.integers(0, 7), st.integers(0, 2**32 - 1))


@given(instances)
def test_cocycle_identity(inst):
    rng = np.random.default_rng(inst[1])
    rep, c, _ = random_instance(rng, inst[0])
    G = rep.group
    pairs = [(G.random_element(rng, 3), G.random_element(rng, 3)) for _ in range(20)]
    assert check_cocycle_identity(c, pairs) < 1e-8
    for g, h in pairs:
        lhs = c.evaluate(G.mul(g, h))
        assert np.allclose(lhs, rep.evaluate(g) @ c.evaluate(h) + c.evaluate(g), atol=1e-8)


@given(instances)
def test_growth_bound_and_inverse_formula(inst):
    rng = np.random.default_rng(inst[1])
    rep, c, _ = random_instance(rng, inst[0])
    G = rep.group
    L = max(np.linalg.norm(b) for b in c.values)
    for _ in range(10):
        g = G.random_element(rng, 5)
        assert np.linalg.norm(c.evaluate(g)) <= G.word_length(g) * L + 1e-9
        gi = G.inv(g)
        assert np.allclose(rep.evaluate(gi) @ c.evaluate(g), -c.evaluate(gi), atol=1e-9)


@given(instances)
def test_fixed_part_has_zero_center(inst):
    rng = np.random.default_rng(inst[1])
    rep, c, _ = random_instance(rng, inst[0])
    mu = symmetrize(rep.group, catalog.random_measure(rep.group, rng, symmetric=False))
    fixed, unfixed = split_fixed(c)
    assert np.linalg.norm(mu_center(fixed, mu)[0]) < 1e-9
    assert (fixed + unfixed).distance(c) < 1e-12


@given(instances)
def test_random_cocycles_satisfy_relators(inst):
    rng = np.random.default_rng(inst[1])
    rep, c, _ = random_instance(rng, inst[0])
    G = rep.group
    for r in G.relators:
        assert np.linalg.norm(c.evaluate_word(r)[1]) < 1e-8
    # the validated constructor accepts the same values
    assert isinstance(from_generator_values(rep, c.values), Cocycle)
