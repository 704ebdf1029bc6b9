"""Standard groups, irreducible representations and random test instances."""

from __future__ import annotations

import numpy as np
import scipy.stats

from .cocycle import Cocycle, cocycle_space
from .groups import (CyclicGroup, FreeAbelianGroup, FreeGroup, Group, HeisenbergGroup, PermGroup,
                     ProductGroup)
from .measure import FinMeasure, symmetrize, uniform_on_generators
from .rep import UnitaryRep


def rotation(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


# -- groups -------------------------------------------------------------------

def integers() -> FreeAbelianGroup:
    return FreeAbelianGroup(1, ["t"])


def z2() -> FreeAbelianGroup:
    return FreeAbelianGroup(2, ["s", "t"])


def free2() -> FreeGroup:
    return FreeGroup(2, ["x", "y"])


def s3() -> PermGroup:
    """``S_3`` generated by ``(0 1)`` and ``(0 1 2)``."""
    return PermGroup(3, [[1, 0, 2], [1, 2, 0]], ["a", "b"])


def d4() -> PermGroup:
    """Symmetries of the square: rotation ``r`` and reflection ``f``."""
    return PermGroup(4, [[1, 2, 3, 0], [3, 2, 1, 0]], ["r", "f"])


def cyclic(n: int) -> CyclicGroup:
    return CyclicGroup(n, ["t"])


def heisenberg() -> HeisenbergGroup:
    return HeisenbergGroup()


def z_times_z() -> ProductGroup:
    return ProductGroup([FreeAbelianGroup(1, ["s"]), FreeAbelianGroup(1, ["t"])])


def z_times_cyclic(n: int = 3) -> ProductGroup:
    return ProductGroup([FreeAbelianGroup(1, ["s"]), CyclicGroup(n, ["t"])])


def finite_groups() -> list[Group]:
    return [s3(), d4()] + [cyclic(n) for n in range(2, 8)] + [ProductGroup([cyclic(2), cyclic(3)])]


# -- representations ----------------------------------------------------------

def trivial_rep(G: Group, dim: int = 1) -> UnitaryRep:
    return UnitaryRep(G, [np.eye(dim)] * G.ngens, field="real")


def cyclic_irreps(n: int) -> list[UnitaryRep]:
    """Nontrivial irreducible representations of ``Z/n``: complex characters and real rotations."""
    G = cyclic(n)
    out = [UnitaryRep(G, [[[np.exp(2j * np.pi * k / n)]]]) for k in range(1, n)]
    for k in range(1, (n + 1) // 2):
        out.append(UnitaryRep(G, [rotation(2 * np.pi * k / n)]))
    if n % 2 == 0:
        out.append(UnitaryRep(G, [[[-1.0]]]))
    return out


def s3_irreps() -> list[UnitaryRep]:
    G = s3()
    sign = UnitaryRep(G, [[[-1.0]], [[1.0]]])
    standard = UnitaryRep(G, [np.diag([1.0, -1.0]), rotation(2 * np.pi / 3)])
    return [sign, standard]


def d4_irreps() -> list[UnitaryRep]:
    G = d4()
    chars = [UnitaryRep(G, [[[a]], [[b]]]) for a, b in ((1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0))]
    return chars + [UnitaryRep(G, [rotation(np.pi / 2), np.diag([1.0, -1.0])])]


def permutation_rep(G: PermGroup) -> UnitaryRep:
    mats = []
    for p in G.generators:
        m = np.zeros((G.degree, G.degree))
        for i, j in enumerate(p):
            m[j, i] = 1.0
        mats.append(m)
    return UnitaryRep(G, mats, field="real")


def tensor_rep(G: ProductGroup, reps) -> UnitaryRep:
    """``pi_1(g_1) (x) ... (x) pi_k(g_k)`` on a direct product."""
    dims = [r.dim for r in reps]
    mats = []
    for j, r in enumerate(reps):
        for m in r.matrices:
            out = np.eye(1)
            for i, d in enumerate(dims):
                out = np.kron(out, m if i == j else np.eye(d))
            mats.append(out)
    field = "complex" if any(r.field == "complex" for r in reps) else "real"
    return UnitaryRep(G, mats, field=field)


# -- random instances ---------------------------------------------------------

def _orthogonal(rng, n):
    return scipy.stats.ortho_group.rvs(n, random_state=rng) if n > 1 else np.eye(1)


def _unitary(rng, n):
    return scipy.stats.unitary_group.rvs(n, random_state=rng) if n > 1 else np.eye(1) * np.exp(1j * rng.uniform(0, 2 * np.pi))


def _rotation_blocks(angles, dim):
    m = np.eye(dim)
    for i, a in enumerate(angles):
        m[2 * i:2 * i + 2, 2 * i:2 * i + 2] = rotation(a)
    return m


def random_rep(G: Group, rng, dim: int | None = None, min_angle: float = 0.0) -> UnitaryRep:
    """A random unitary representation of a catalog group.

    Abelian kinds get commuting rotation blocks (angles at least
    ``min_angle`` from 0 when it is positive, and an occasional fixed
    line); finite permutation groups a conjugated permutation
    representation; Heisenberg a conjugated clock-and-shift pair; products
    a direct sum of tensor products of factor representations.
    """
    kind = G.kind
    if kind == "free":
        d = dim or int(rng.integers(1, 5))
        return UnitaryRep(G, [_orthogonal(rng, d) for _ in range(G.ngens)], field="real")
    if kind in ("free_abelian", "finite_cyclic"):
        d = dim or int(rng.integers(1, 6))
        Q = _orthogonal(rng, d)
        mats = []
        for _ in range(G.ngens):
            if kind == "finite_cyclic":
                angles = 2 * np.pi * rng.integers(0, G.n, size=d // 2) / G.n
            else:
                angles = rng.uniform(min_angle, 2 * np.pi - min_angle, size=d // 2)
            m = _rotation_blocks(angles, d)
            if d % 2:
                m[-1, -1] = 1.0 if kind == "free_abelian" or G.n % 2 else rng.choice([1.0, -1.0])
            mats.append(Q @ m @ Q.T)
        return UnitaryRep(G, mats, field="real")
    if kind == "finite_perm":
        rep = permutation_rep(G)
        return rep.conjugate_by(_orthogonal(rng, rep.dim))
    if kind == "heisenberg":
        n = dim or int(rng.integers(2, 5))
        w = np.exp(2j * np.pi / n)
        shift = np.roll(np.eye(n), 1, axis=0)
        clock = np.diag(w ** np.arange(n))
        X, Y = shift, clock
        Z = X @ Y @ X.conj().T @ Y.conj().T
        return UnitaryRep(G, [X, Y, Z], field="complex").conjugate_by(_unitary(rng, n))
    if kind == "product":
        rep = None
        for _ in range(2):
            parts = [random_rep(f, rng, dim=min(2, dim or 2) if f.kind != "finite_perm" else None,
                                min_angle=min_angle) for f in G.factors]
            if rng.random() < 0.5:
                j = int(rng.integers(len(parts)))
                parts = [p if i == j else trivial_rep(p.group) for i, p in enumerate(parts)]
            piece = tensor_rep(G, parts)
            rep = piece if rep is None else rep.direct_sum(piece)
        return rep
    raise ValueError(f"no random representations for kind {kind!r}")


def random_cocycle(rep: UnitaryRep, rng, scale: float = 1.0) -> Cocycle:
    """A random element of ``Z^1`` (generic combination of a kernel basis)."""
    N = cocycle_space(rep)
    k = N.shape[1]
    coeffs = rng.normal(size=k)
    if rep.field == "complex":
        coeffs = coeffs + 1j * rng.normal(size=k)
    vec = N @ coeffs * scale if k else np.zeros(rep.group.ngens * rep.dim)
    return Cocycle(rep, vec.reshape(rep.group.ngens, rep.dim))


def random_vector(rep: UnitaryRep, rng) -> np.ndarray:
    v = rng.normal(size=rep.dim)
    if rep.field == "complex":
        v = v + 1j * rng.normal(size=rep.dim)
    return v


def random_measure(G: Group, rng, lazy: float | None = None, extra: int = 2,
                   symmetric: bool = True) -> FinMeasure:
    """Random measure whose support contains ``S ∪ S^-1`` (so it generates).

    ``extra`` further short random elements are added; ``lazy`` puts that
    much mass at the identity.
    """
    pairs = [(G.letter(s), rng.uniform(0.2, 1.0))
             for i in range(G.ngens) for s in (i + 1, -(i + 1))]
    for _ in range(extra):
        pairs.append((G.random_element(rng, int(rng.integers(1, 4))), rng.uniform(0.05, 0.5)))
    mu = FinMeasure.from_pairs(pairs, normalize=True)
    if symmetric:
        mu = symmetrize(G, mu)
    if lazy:
        mu = FinMeasure.from_pairs([(g, (1 - lazy) * w) for g, w in mu.items()]
                                   + [(G.identity, lazy)], normalize=True)
    return mu


def standard_measures(G: Group, rng=None) -> list[FinMeasure]:
    """Uniform, lazy uniform and (with ``rng``) two random symmetric generating measures."""
    out = [uniform_on_generators(G), uniform_on_generators(G, lazy=0.5)]
    if rng is not None:
        out += [random_measure(G, rng), random_measure(G, rng, lazy=0.3)]
    return out


def instance_groups() -> list[Group]:
    """Groups used for randomized identities: abelian, free, finite, nilpotent and product kinds."""
    return [integers(), z2(), free2(), s3(), d4(), cyclic(5), heisenberg(), z_times_cyclic(3)]
