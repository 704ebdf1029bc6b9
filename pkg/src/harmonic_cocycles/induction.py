"""Finite-index subgroups, the coset cocycle ``alpha`` and induction.

Conventions.  ``Gamma`` is a catalog group embedded in the ambient group
``G`` through the images of its generators.  ``F`` is a list of coset
representatives with ``F * Gamma = G`` (left cosets ``f Gamma``), identity
first.  For ``g`` in ``G`` and ``f`` in ``F``, ``alpha(g, f)`` is the unique
``gamma`` in ``Gamma`` with ``g f gamma`` in ``F``.

Worked table for ``Gamma = 2Z < Z`` and ``F = {e, t}``::

    g     f    g f    alpha(g, f)   g f alpha
    t     e    t      e             t
    t     t    t^2    t^-2          e
    t^-1  e    t^-1   t^2           t
    t^-1  t    e      e             e
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cocycle import Cocycle, from_generator_values
from .errors import InputError, MembershipFailure
from .groups import DEFAULT_BALL_LIMIT, FreeAbelianGroup, Group
from .harmonize import h1_dimensions
from .rep import UnitaryRep, validate_homomorphism

PARTITION_CHECK_RADIUS = 3


class FiniteIndexSubgroup:
    """``Gamma`` inside ``G`` with a table of coset representatives.

    ``generator_images[i]`` is the ambient element for the ``i``-th
    generator of ``subgroup``.  Membership is decided by enumeration when
    ``G`` is finite and by an exact integer solve when ``G`` is free
    abelian; other ambient kinds are not supported.
    """

    def __init__(self, ambient: Group, subgroup: Group, generator_images, coset_reps):
        self.ambient = ambient
        self.subgroup = subgroup
        images = [ambient.element(x) if isinstance(x, str) else ambient.check(x)
                  for x in generator_images]
        if len(images) != subgroup.ngens:
            raise InputError("one ambient image per subgroup generator required",
                             expected=subgroup.ngens, got=len(images))
        self.generator_images = tuple(images)
        reps = [ambient.element(x) if isinstance(x, str) else ambient.check(x) for x in coset_reps]
        if not reps or reps[0] != ambient.identity:
            raise InputError("coset representatives must start with the identity")
        if len(set(reps)) != len(reps):
            raise InputError("coset representatives must be distinct")
        self.coset_reps = tuple(reps)
        self._index_of = {f: i for i, f in enumerate(reps)}
        if ambient.is_finite:
            self.membership = "finite-enumeration"
            self._setup_finite()
        elif isinstance(ambient, FreeAbelianGroup) and isinstance(subgroup, FreeAbelianGroup):
            self.membership = "integer-lattice"
            self._setup_lattice()
        else:
            raise InputError(f"induction from {subgroup} into {ambient} is not supported")
        self._check_partition()

    # -- the embedding -----------------------------------------------------
    def image(self, gamma):
        """Ambient element for a subgroup element."""
        G = self.ambient
        out = G.identity
        for letter in self.subgroup.word(self.subgroup.check(gamma)):
            x = self.generator_images[abs(letter) - 1]
            out = G._mul(out, x if letter > 0 else G._inv(x))
        return out

    def _setup_finite(self):
        Gam = self.subgroup
        if not Gam.is_finite:
            raise InputError("a subgroup of a finite group must be a finite catalog group")
        for r in Gam.relators:
            img = self.ambient.identity
            for letter in r:
                x = self.generator_images[abs(letter) - 1]
                img = self.ambient._mul(img, x if letter > 0 else self.ambient._inv(x))
            if img != self.ambient.identity:
                raise InputError("generator images violate a subgroup relator",
                                 relator=Gam.format_word(r))
        table = {}
        for gamma in Gam.elements():
            x = self.image(gamma)
            if x in table:
                raise InputError("generator images do not define an embedding")
            table[x] = gamma
        self._pullback_table = table
        order = self.ambient.order()
        if order % len(table):
            raise InputError("subgroup order does not divide the group order")
        self.index = order // len(table)

    def _setup_lattice(self):
        d = self.ambient.rank
        M = np.array([list(x) for x in self.generator_images], dtype=np.int64).T
        if M.shape != (d, d):
            raise InputError("a finite-index subgroup of Z^d needs rank d",
                             ambient_rank=d, subgroup_rank=M.shape[1])
        det = int(round(np.linalg.det(M)))
        if det == 0:
            raise InputError("generator images are linearly dependent: infinite index")
        self._lattice = M
        self.index = abs(det)

    def pullback(self, x):
        """Subgroup element ``gamma`` with ``image(gamma) = x``, or ``None`` when ``x`` is outside."""
        if self.membership == "finite-enumeration":
            return self._pullback_table.get(x)
        M = self._lattice
        sol = np.linalg.solve(M.astype(float), np.array(x, dtype=float))
        c = np.rint(sol).astype(np.int64)
        if not np.array_equal(M @ c, np.array(x, dtype=np.int64)):
            return None
        return tuple(int(k) for k in c)

    def contains(self, x) -> bool:
        return self.pullback(x) is not None

    # -- coset table -------------------------------------------------------
    def _check_partition(self):
        G = self.ambient
        if len(self.coset_reps) != self.index:
            raise InputError("number of coset representatives differs from the index",
                             index=self.index, reps=len(self.coset_reps))
        for i, f in enumerate(self.coset_reps):
            for f2 in self.coset_reps[i + 1:]:
                if self.contains(G._mul(G._inv(f), f2)):
                    raise InputError("coset representatives lie in the same coset",
                                     first=G.describe(f), second=G.describe(f2))
        radius = PARTITION_CHECK_RADIUS
        if G.is_finite:
            ball = [(g, 0) for g in G.elements()]
        else:
            ball = G.cayley_ball(radius, DEFAULT_BALL_LIMIT)
        for g, _ in ball:
            self.locate(g)

    def locate(self, x):
        """``(f, gamma)`` with ``x = f * image(gamma)``."""
        G = self.ambient
        for f in self.coset_reps:
            gamma = self.pullback(G._mul(G._inv(f), x))
            if gamma is not None:
                return f, gamma
        raise MembershipFailure(f"{G.describe(x)} lies in no listed coset", element=G.encode(x))

    def alpha(self, g, f):
        """``(gamma, f_new)``: the subgroup element with ``g f gamma = f_new`` in ``F``."""
        G = self.ambient
        G.check(g)
        if f not in self._index_of:
            raise MembershipFailure(f"{G.describe(f)} is not a coset representative")
        f_new, gamma_inv = self.locate(G._mul(g, f))
        return self.subgroup._inv(gamma_inv), f_new

    def rep_index(self, f) -> int:
        return self._index_of[f]

    def integrability(self) -> dict:
        """``sum_f |alpha(s, f)|^2`` for each ambient generator ``s``, in the subgroup word metric."""
        G = self.ambient
        out = {}
        for label, s in zip(G.labels, G.generators):
            out[label] = sum(self.subgroup.word_length(self.alpha(s, f)[0]) ** 2
                             for f in self.coset_reps)
        return out

    def to_json(self) -> dict:
        G = self.ambient
        return {"ambient": G.to_json(), "subgroup": self.subgroup.to_json(),
                "subgroup_generators": [G.encode(x) for x in self.generator_images],
                "coset_reps": [G.encode(f) for f in self.coset_reps],
                "index": self.index, "membership": self.membership}

    @classmethod
    def from_json(cls, ambient: Group, obj: dict) -> "FiniteIndexSubgroup":
        from .groups import group_from_json
        try:
            sub = group_from_json(obj["subgroup"])
            gens = [ambient.element(x) for x in obj["subgroup_generators"]]
            reps = [ambient.element(x) for x in obj["coset_reps"]]
        except (KeyError, TypeError):
            raise InputError("subgroup needs 'subgroup', 'subgroup_generators' and 'coset_reps'") from None
        return cls(ambient, sub, gens, reps)


def alpha_cocycle(sub: FiniteIndexSubgroup, g, f):
    return sub.alpha(g, f)


@dataclass
class InducedRep:
    base: UnitaryRep
    induced: UnitaryRep
    subgroup: FiniteIndexSubgroup

    @property
    def dim(self) -> int:
        return self.induced.dim


def _blocks(sub: FiniteIndexSubgroup, g):
    """``[(row, column, gamma)]`` for ``alpha(g^-1, f_row)``."""
    G = sub.ambient
    ginv = G._inv(g)
    out = []
    for i, f in enumerate(sub.coset_reps):
        gamma, f_new = sub.alpha(ginv, f)
        out.append((i, sub.rep_index(f_new), gamma))
    return out


def induce_rep(sub: FiniteIndexSubgroup, pi: UnitaryRep, validate: bool = True) -> InducedRep:
    """``(pi~(g) q)(f) = pi(alpha(g^-1, f)) q(g^-1 f alpha(g^-1, f))`` on ``F``-indexed copies."""
    if pi.group != sub.subgroup:
        raise InputError("representation is not on the subgroup")
    d, n = pi.dim, len(sub.coset_reps)
    mats = []
    for s in sub.ambient.generators:
        m = np.zeros((d * n, d * n), dtype=complex)
        for i, j, gamma in _blocks(sub, s):
            m[i * d:(i + 1) * d, j * d:(j + 1) * d] = pi.evaluate(gamma)
        mats.append(m)
    induced = UnitaryRep(sub.ambient, mats, field=pi.field)
    if validate:
        validate_homomorphism(induced)
    return InducedRep(pi, induced, sub)


def induce_cocycle(sub: FiniteIndexSubgroup, phi: Cocycle, induced: InducedRep | None = None) -> Cocycle:
    """``phi~(g)(f) = phi(alpha(g^-1, f))``, validated against the induced representation."""
    if induced is None:
        induced = induce_rep(sub, phi.rep)
    d = phi.rep.dim
    values = []
    for s in sub.ambient.generators:
        vec = np.zeros(d * len(sub.coset_reps), dtype=phi.rep.dtype)
        for i, _, gamma in _blocks(sub, s):
            vec[i * d:(i + 1) * d] = phi.evaluate(gamma)
        values.append(vec)
    return from_generator_values(induced.induced, values)


def induce_vector(sub: FiniteIndexSubgroup, v) -> np.ndarray:
    """The constant section ``f -> v``; the coboundary of ``v`` induces to its coboundary."""
    return np.tile(np.asarray(v), len(sub.coset_reps))


def transfer_dimensions(sub: FiniteIndexSubgroup, pi: UnitaryRep) -> dict:
    """``dim H^1`` of ``Gamma`` with ``pi`` against ``G`` with the induced representation."""
    ind = induce_rep(sub, pi)
    base = h1_dimensions(pi)
    lifted = h1_dimensions(ind.induced)
    return {"subgroup": base.to_json(), "ambient": lifted.to_json(),
            "equal": base.dim_H1 == lifted.dim_H1}


def composition_holds(sub: FiniteIndexSubgroup, g, h, f) -> bool:
    """Whether ``alpha(gh, f) = alpha(h, f) alpha(g, h f alpha(h, f))`` holds exactly."""
    G, Gam = sub.ambient, sub.subgroup
    lhs, _ = sub.alpha(G._mul(g, h), f)
    a_h, f_h = sub.alpha(h, f)
    a_g, _ = sub.alpha(g, f_h)
    return lhs == Gam._mul(a_h, a_g)
