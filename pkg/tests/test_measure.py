import numpy as np
import pytest
from hypothesis import given, strategies as st

from harmonic_cocycles import catalog
from harmonic_cocycles.errors import InputError, KindMismatch
from harmonic_cocycles.measure import (FinMeasure, check_mu, convolve, first_moment, is_symmetric,
                                       product_measure, reflect, second_moment, support_generates,
                                       symmetrize, uniform_on_generators, validate_reasonable)

GROUPS = catalog.instance_groups()


def as_dict(mu):
    return dict(mu.items())


def test_symmetrize_dirac():
    Z = catalog.integers()
    assert as_dict(symmetrize(Z, FinMeasure.dirac((1,)))) == {(1,): 0.5, (-1,): 0.5}


def test_symmetrize_fixed_point():
    Z = catalog.integers()
    mu = uniform_on_generators(Z)
    assert as_dict(symmetrize(Z, mu)) == as_dict(mu)


def test_symmetrize_s3():
    S3 = catalog.s3()
    a, b = S3.parse("a"), S3.parse("b")
    mu = FinMeasure.from_pairs([(a, 0.7), (b, 0.3)])
    sym = as_dict(symmetrize(S3, mu))
    # oracle: invert b by searching for the element whose product with b is e
    b_inv = next(g for g in S3.elements() if S3.mul(b, g) == S3.identity)
    assert b_inv == (2, 0, 1)
    assert sym.keys() == {a, b, b_inv}
    assert sym[a] == pytest.approx(0.7, abs=1e-15)
    assert sym[b] == pytest.approx(0.15, abs=1e-15)
    assert sym[b_inv] == pytest.approx(0.15, abs=1e-15)


def test_reasonableness_examples():
    Z = catalog.integers()
    r = validate_reasonable(Z, uniform_on_generators(Z))
    assert r.symmetric and r.generates is True and r.second_moment == pytest.approx(1.0)
    assert r.reasonable is True
    even = FinMeasure.uniform([(2,), (-2,)])
    r = validate_reasonable(Z, even)
    assert r.symmetric and r.generates is False and r.reasonable is False
    assert r.second_moment == pytest.approx(4.0)


def test_generation_unknown_on_free_group():
    F = catalog.free2()
    mu = FinMeasure.uniform([F.parse("x^2"), F.parse("x^-2"), F.parse("y"), F.parse("y^-1")])
    assert support_generates(F, mu, gen_radius=3) is None
    assert support_generates(F, uniform_on_generators(F)) is True


def test_generation_exact_for_lattice():
    Z2 = catalog.z2()
    mu = symmetrize(Z2, FinMeasure.uniform([(2, 1), (1, 1)]))
    assert support_generates(Z2, mu, gen_radius=1) is True
    mu = symmetrize(Z2, FinMeasure.uniform([(2, 0), (0, 1)]))
    assert support_generates(Z2, mu, gen_radius=2) is False


def test_generation_finite_closure():
    C4 = catalog.cyclic(4)
    assert support_generates(C4, FinMeasure.uniform([2])) is False
    assert support_generates(C4, FinMeasure.uniform([3])) is True


def test_convolution_examples():
    F = catalog.free2()
    a, b = F.parse("x y"), F.parse("y^-1 x^2")
    assert as_dict(convolve(F, FinMeasure.dirac(a), FinMeasure.dirac(b))) == {F.mul(a, b): 1.0}
    Z = catalog.integers()
    mu = uniform_on_generators(Z)
    conv = as_dict(convolve(Z, mu, mu))
    assert conv.keys() == {(-2,), (0,), (2,)}
    assert conv[(2,)] == pytest.approx(0.25) and conv[(-2,)] == pytest.approx(0.25)
    assert conv[(0,)] == pytest.approx(0.5)
    nu = catalog.random_measure(F, np.random.default_rng(3), symmetric=False)
    assert as_dict(convolve(F, nu, FinMeasure.dirac(F.identity))) == pytest.approx(as_dict(nu))


def test_invalid_measures():
    with pytest.raises(InputError):
        FinMeasure(((0,),), (0.5,))
    with pytest.raises(InputError):
        FinMeasure.from_pairs([((0,), -1.0), ((1,), 2.0)])
    with pytest.raises(InputError):
        FinMeasure.from_pairs([])
    with pytest.raises(KindMismatch):
        check_mu(FinMeasure.dirac((0, 0)), catalog.integers())


def test_lazy_uniform():
    Z2 = catalog.z2()
    mu = uniform_on_generators(Z2, lazy=0.5)
    assert mu.weight((0, 0)) == pytest.approx(0.5)
    assert mu.weight((1, 0)) == pytest.approx(0.125)
    assert is_symmetric(Z2, mu)


def test_product_measure():
    P = catalog.z_times_cyclic(3)
    mus = [uniform_on_generators(f) for f in P.factors]
    mu = product_measure(P, mus)
    assert sum(mu.weights) == pytest.approx(1.0)
    assert mu.weight(((1,), 2)) == pytest.approx(0.25)


def test_moments():
    Z = catalog.integers()
    mu = FinMeasure.from_pairs([((3,), 0.5), ((-1,), 0.5)])
    assert second_moment(Z, mu) == pytest.approx(5.0)
    assert first_moment(Z, mu) == pytest.approx(2.0)


def test_json_roundtrip():
    S3 = catalog.s3()
    mu = catalog.random_measure(S3, np.random.default_rng(0))
    assert as_dict(FinMeasure.from_json(S3, mu.to_json(S3))) == as_dict(mu)


instance = st.tuples(st.integers(0, len(GROUPS) - 1), st.integers(0, 2**32 - 1))


@given(instance)
def test_symmetrize_is_symmetric(inst):
    G = GROUPS[inst[0]]
    mu = catalog.random_measure(G, np.random.default_rng(inst[1]), symmetric=False)
    sym = symmetrize(G, mu)
    assert is_symmetric(G, sym)
    assert as_dict(reflect(G, sym)) == pytest.approx(as_dict(sym))


@given(instance)
def test_convolution_keeps_mass(inst):
    G = GROUPS[inst[0]]
    rng = np.random.default_rng(inst[1])
    mu = catalog.random_measure(G, rng, symmetric=False)
    nu = catalog.random_measure(G, rng, symmetric=False)
    assert abs(sum(convolve(G, mu, nu).weights) - 1) < 1e-12


@given(instance)
def test_second_moment_of_reflection(inst):
    G = GROUPS[inst[0]]
    mu = catalog.random_measure(G, np.random.default_rng(inst[1]), symmetric=False)
    assert second_moment(G, reflect(G, mu)) == pytest.approx(second_moment(G, mu), abs=1e-12)
    assert second_moment(G, symmetrize(G, mu)) == pytest.approx(second_moment(G, mu), abs=1e-12)
