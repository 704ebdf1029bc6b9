import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings, strategies as st

from harmonic_cocycles import catalog
from harmonic_cocycles.cocycle import from_generator_values, mu_center
from harmonic_cocycles.errors import NotAProduct, NotGenerating, NotSymmetric
from harmonic_cocycles.groups import ProductGroup
from harmonic_cocycles.harmonize import h1_dimensions
from harmonic_cocycles.measure import FinMeasure, product_measure, uniform_on_generators
from harmonic_cocycles.products import (complementary_invariants, decompose_product,
                                        dimension_additivity, restrict_factor)
from harmonic_cocycles.rep import UnitaryRep, fixed_subspace

R = catalog.rotation
ZZ = catalog.z_times_z()


def lazy_factors(G, lazy=0.5):
    return [uniform_on_generators(f, lazy=lazy) for f in G.factors]


def test_restrict_examples():
    rep = UnitaryRep(ZZ, [R(np.pi / 2), np.eye(2)])
    second = restrict_factor(rep, 1)
    assert second.group == ZZ.factors[1]
    assert np.array_equal(second.matrices[0], np.eye(2))
    c = from_generator_values(rep, {"s": [1.0, 0.0], "t": [0.0, 0.0]})
    first = restrict_factor(c, 0)
    assert first.group == ZZ.factors[0]
    assert np.array_equal(first.values[0], [1.0, 0.0])


def test_restriction_of_finite_product_is_validated():
    G = ProductGroup([catalog.cyclic(2), catalog.s3()])
    rng = np.random.default_rng(0)
    rep = catalog.random_rep(G, rng)
    c = catalog.random_cocycle(rep, rng)
    for j in range(2):
        from_generator_values(restrict_factor(rep, j), restrict_factor(c, j).values)


def test_not_a_product():
    rep = catalog.trivial_rep(catalog.z2())
    with pytest.raises(NotAProduct):
        restrict_factor(rep, 0)
    with pytest.raises(IndexError):
        restrict_factor(catalog.trivial_rep(ZZ), 2)


def test_trivial_rep_decomposition_is_all_fixed():
    c = from_generator_values(catalog.trivial_rep(ZZ), [[2.0], [-3.0]])
    dec = decompose_product(c, lazy_factors(ZZ))
    assert dec.beta_fixed.distance(c) < 1e-14
    assert all(b.norm() < 1e-14 for b in dec.factor_cocycles)


def test_rotation_factor_harmonizes_to_zero():
    rep = UnitaryRep(ZZ, [R(np.pi / 2), np.eye(2)])
    c = from_generator_values(rep, {"s": [1.0, 0.0], "t": [0.0, 0.0]})
    dec = decompose_product(c, lazy_factors(ZZ))
    assert dec.harmonic_cocycle.norm() < 1e-12
    assert dec.beta_fixed.norm() < 1e-12
    assert all(b.norm() < 1e-12 for b in dec.factor_cocycles)
    assert dimension_additivity(rep, lazy_factors(ZZ))["lhs"] == 0


def brute_harmonic_space(mats, factor_mus_lazy):
    """Oracle for Z x Z with generator matrices S, T: null space of relator + center rows."""
    S, T = mats
    n = S.shape[0]
    I = np.eye(n)
    relator = np.hstack([I - T, -(I - S)])
    lam = factor_mus_lazy
    # mu_j-center of a single-generator cocycle: (1 - lam)/2 * (I - M^T) b
    center_s = (1 - lam) / 2 * (I - S.T)
    center_t = (1 - lam) / 2 * (I - T.T)
    # product-measure center: mu_1(b_s) + pi(mu_1) mu_2(b_t)
    pi_mu1 = lam * I + (1 - lam) / 2 * (S + S.T)
    center = np.hstack([center_s, pi_mu1 @ center_t])
    return scipy.linalg.null_space(np.vstack([relator, center]))


def test_diag_sign_rep_against_brute_force():
    D = np.diag([1.0, -1.0])
    rep = UnitaryRep(ZZ, [np.eye(2), D])
    N = brute_harmonic_space([np.eye(2), D], 0.5)
    assert N.shape[1] == 2
    assert h1_dimensions(rep, product_measure(ZZ, lazy_factors(ZZ))).dim_harmonic_cocycles == 2
    c = from_generator_values(rep, {"s": [1.5, 0.0], "t": [-2.0, 0.7]})
    dec = decompose_product(c, lazy_factors(ZZ))
    vec = dec.harmonic_cocycle.values.reshape(-1)
    assert np.linalg.norm(vec - N @ (N.T @ vec)) < 1e-12
    assert np.allclose(dec.harmonic_cocycle.values, [[1.5, 0.0], [-2.0, 0.0]])
    assert np.allclose(dec.beta_fixed.values, dec.harmonic_cocycle.values)
    d = dimension_additivity(rep, lazy_factors(ZZ))
    assert d["equal"] and d["lhs"] == 2 and d["fixed_term"] == 2


def test_mixed_rep_against_brute_force():
    S = np.diag([1.0, 1.0, -1.0])
    T = np.diag([1.0, -1.0, 1.0])
    rep = UnitaryRep(ZZ, [S, T])
    N = brute_harmonic_space([S, T], 0.5)
    rng = np.random.default_rng(2)
    c = catalog.random_cocycle(rep, rng)
    dec = decompose_product(c, lazy_factors(ZZ))
    vec = dec.harmonic_cocycle.values.reshape(-1)
    assert np.linalg.norm(vec - N @ (N.T @ vec)) < 1e-10
    assert dec.residual < 1e-12 and max(dec.invariance_residuals) < 1e-12
    d = dimension_additivity(rep, lazy_factors(ZZ))
    assert d["equal"] and d["lhs"] == N.shape[1]


def test_additivity_with_nonabelian_factor():
    F = ProductGroup([catalog.free2(), catalog.cyclic(2)])
    rep = UnitaryRep(F, [[[-1.0]], [[1.0]], [[1.0]]])
    d = dimension_additivity(rep, lazy_factors(F))
    assert d["lhs"] == 1 and d["equal"]
    assert d["fixed_term"] == 0 and d["factor_terms"] == [1, 0]


def test_factor_measure_checks():
    c = from_generator_values(catalog.trivial_rep(ZZ), [[1.0], [1.0]])
    s = ZZ.factors[0]
    with pytest.raises(NotSymmetric):
        decompose_product(c, [FinMeasure.dirac((1,)), uniform_on_generators(ZZ.factors[1])])
    with pytest.raises(NotGenerating):
        decompose_product(c, [FinMeasure.uniform([(2,), (-2,)]), uniform_on_generators(ZZ.factors[1])])
    with pytest.raises(ValueError):
        decompose_product(c, [uniform_on_generators(s)])


def test_decomposition_json():
    c = from_generator_values(catalog.trivial_rep(ZZ), [[1.0], [1.0]])
    out = decompose_product(c, lazy_factors(ZZ)).to_json()
    assert set(out) >= {"harmonic_cocycle", "beta_fixed", "factor_cocycles", "residual"}


PRODUCTS = [catalog.z_times_z(), catalog.z_times_cyclic(3), ProductGroup([catalog.cyclic(2), catalog.s3()])]


@settings(max_examples=40)
@given(st.integers(0, len(PRODUCTS) - 1), st.integers(0, 2**32 - 1))
def test_decomposition_properties(k, seed):
    G = PRODUCTS[k]
    rng = np.random.default_rng(seed)
    rep = catalog.random_rep(G, rng, min_angle=0.3)
    c = catalog.random_cocycle(rep, rng)
    mus = lazy_factors(G)
    dec = decompose_product(c, mus)
    assert dec.residual < 1e-7
    assert max(dec.invariance_residuals) < 1e-8
    assert mu_center(dec.harmonic_cocycle, product_measure(G, mus))[1]
    for _ in range(5):
        g = G.random_element(rng, 5)
        parts = dec.beta_fixed.evaluate(g) + sum(
            b.evaluate(G.embed(j, g[j])) for j, b in enumerate(dec.factor_cocycles))
        assert np.linalg.norm(dec.harmonic_cocycle.evaluate(g) - parts) < 1e-7
    if fixed_subspace(rep).dim == 0:
        for j in range(len(G.factors)):
            bj = dec.factor_restriction(j)
            assert mu_center(bj, mus[j])[1]
            K = complementary_invariants(rep, j)
            assert all(K.contains(v) for v in bj.values)
    assert dimension_additivity(rep, mus)["equal"]
