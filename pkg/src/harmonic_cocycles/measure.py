"""Finitely supported probability measures on catalog groups."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InputError
from .groups import CyclicGroup, FreeAbelianGroup, Group, ProductGroup
from .groups import DEFAULT_RADIUS_CAP

MASS_TOL = 1e-12
SYMMETRY_TOL = 1e-12
DEFAULT_GEN_RADIUS = 6


@dataclass(frozen=True)
class FinMeasure:
    """Probability measure with finite support.

    ``support`` is sorted by canonical form; zero weights are dropped and
    repeated elements merged by :meth:`from_pairs`.
    """

    support: tuple
    weights: tuple

    def __post_init__(self):
        if len(self.support) != len(self.weights):
            raise InputError("support and weights differ in length")
        if len(set(self.support)) != len(self.support):
            raise InputError("support elements must be distinct")
        if any(not w > 0 for w in self.weights):
            raise InputError("weights must be positive (zero weights are not stored)")
        total = sum(self.weights)
        if abs(total - 1.0) > MASS_TOL:
            raise InputError(f"weights sum to {total!r}, not 1", total=total)

    @classmethod
    def from_pairs(cls, pairs, normalize: bool = False) -> "FinMeasure":
        acc: dict = {}
        for g, w in pairs:
            w = float(w)
            if w < 0:
                raise InputError("negative weight", weight=w)
            acc[g] = acc.get(g, 0.0) + w
        items = sorted((g, w) for g, w in acc.items() if w > 0)
        if not items:
            raise InputError("a measure needs at least one positive weight")
        if normalize:
            total = sum(w for _, w in items)
            items = [(g, w / total) for g, w in items]
        return cls(tuple(g for g, _ in items), tuple(w for _, w in items))

    @classmethod
    def uniform(cls, elements) -> "FinMeasure":
        elements = list(dict.fromkeys(elements))
        return cls.from_pairs((g, 1.0 / len(elements)) for g in elements)

    @classmethod
    def dirac(cls, g) -> "FinMeasure":
        return cls((g,), (1.0,))

    def weight(self, g) -> float:
        try:
            return self.weights[self.support.index(g)]
        except ValueError:
            return 0.0

    def items(self):
        return zip(self.support, self.weights)

    def __len__(self):
        return len(self.support)

    def check_group(self, G: Group) -> "FinMeasure":
        for g in self.support:
            G.check(g)
        return self

    def to_json(self, G: Group) -> dict:
        return {"support": [G.encode(g) for g in self.support], "weights": list(self.weights)}

    @classmethod
    def from_json(cls, G: Group, obj: dict) -> "FinMeasure":
        try:
            support = [G.element(x) for x in obj["support"]]
            weights = obj["weights"]
        except (KeyError, TypeError):
            raise InputError("measure needs 'support' and 'weights'") from None
        return cls.from_pairs(zip(support, weights))


def uniform_on_generators(G: Group, lazy: float = 0.0) -> FinMeasure:
    """Uniform measure on ``S ∪ S^-1``, optionally with mass ``lazy`` at ``e``."""
    elements = []
    for i in range(G.ngens):
        elements.extend([G.letter(i + 1), G.letter(-(i + 1))])
    mu = FinMeasure.uniform(elements)
    if lazy:
        pairs = [(g, (1 - lazy) * w) for g, w in mu.items()] + [(G.identity, lazy)]
        mu = FinMeasure.from_pairs(pairs, normalize=True)
    return mu


def check_mu(mu: FinMeasure, G: Group) -> FinMeasure:
    """Reject measures whose support does not lie in ``G``."""
    return mu.check_group(G)


def reflect(G: Group, mu: FinMeasure) -> FinMeasure:
    """The opposite measure ``g -> mu(g^-1)``."""
    check_mu(mu, G)
    return FinMeasure.from_pairs((G._inv(g), w) for g, w in mu.items())


def symmetrize(G: Group, mu: FinMeasure) -> FinMeasure:
    """``(mu + mu_reflected) / 2``."""
    check_mu(mu, G)
    pairs = [(g, w / 2) for g, w in mu.items()]
    pairs += [(G._inv(g), w / 2) for g, w in mu.items()]
    return FinMeasure.from_pairs(pairs)


def is_symmetric(G: Group, mu: FinMeasure, tol: float = SYMMETRY_TOL) -> bool:
    check_mu(mu, G)
    return all(abs(w - mu.weight(G._inv(g))) < tol for g, w in mu.items())


def convolve(G: Group, mu: FinMeasure, nu: FinMeasure) -> FinMeasure:
    """``(mu * nu)(g) = sum over a b = g of mu(a) nu(b)``."""
    check_mu(mu, G)
    check_mu(nu, G)
    pairs = [(G._mul(a, b), wa * wb) for (a, wa), (b, wb) in itertools.product(mu.items(), nu.items())]
    return FinMeasure.from_pairs(pairs, normalize=True)


def product_measure(G: ProductGroup, mus) -> FinMeasure:
    """``mu_1 x ... x mu_k`` on a direct product."""
    mus = list(mus)
    if not isinstance(G, ProductGroup) or len(mus) != len(G.factors):
        raise InputError("need one measure per factor of a product group")
    for f, m in zip(G.factors, mus):
        check_mu(m, f)
    pairs = []
    for combo in itertools.product(*(m.items() for m in mus)):
        weight = 1.0
        for _, w in combo:
            weight *= w
        pairs.append((tuple(g for g, _ in combo), weight))
    return FinMeasure.from_pairs(pairs, normalize=True)


def second_moment(G: Group, mu: FinMeasure, radius_cap: int = DEFAULT_RADIUS_CAP) -> float:
    return sum(w * G.word_length(g, radius_cap) ** 2 for g, w in mu.items())


def first_moment(G: Group, mu: FinMeasure, radius_cap: int = DEFAULT_RADIUS_CAP) -> float:
    return sum(w * G.word_length(g, radius_cap) for g, w in mu.items())


@dataclass(frozen=True)
class ReasonablenessReport:
    symmetric: bool
    generates: bool | None
    second_moment: float
    nonsingular: bool = True
    note: str = ("nonsingularity with respect to counting measure is automatic "
                 "for discrete groups")

    @property
    def reasonable(self) -> bool | None:
        if not self.symmetric or self.generates is False:
            return False
        return None if self.generates is None else True

    def to_json(self) -> dict:
        return {"symmetric": self.symmetric, "generates": self.generates,
                "second_moment": self.second_moment, "nonsingular": self.nonsingular,
                "reasonable": self.reasonable, "note": self.note}


def support_generates(G: Group, mu: FinMeasure, gen_radius: int = DEFAULT_GEN_RADIUS) -> bool | None:
    """Whether the support of ``mu`` generates ``G``.

    Products of at most ``gen_radius`` support elements (and inverses) are
    searched first.  If that fails the answer is settled exactly for finite
    groups (closure) and for abelian catalog groups (integer lattices);
    otherwise ``None`` (unknown) is returned.
    """
    check_mu(mu, G)
    if gen_radius < 1:
        raise InputError("gen_radius must be at least 1")
    steps = set(mu.support) | {G._inv(g) for g in mu.support}
    targets = set(G.generators)
    reached = {G.identity}
    frontier = [G.identity]
    for _ in range(gen_radius):
        nxt = []
        for g in frontier:
            for s in steps:
                h = G._mul(g, s)
                if h not in reached:
                    reached.add(h)
                    nxt.append(h)
        frontier = nxt
        if targets <= reached:
            return True
        if not frontier:
            return False
    if G.is_finite:
        while frontier:
            nxt = []
            for g in frontier:
                for s in steps:
                    h = G._mul(g, s)
                    if h not in reached:
                        reached.add(h)
                        nxt.append(h)
            frontier = nxt
        return targets <= reached
    coords = _abelian_coordinates(G)
    if coords is not None:
        to_vec, torsion, rank = coords
        rows = [to_vec(g) for g in mu.support]
        for i, n in enumerate(torsion):
            row = [0] * rank
            row[i] = n
            rows.append(row)
        return lattice_is_full(rows, rank)
    return None


def _abelian_coordinates(G: Group):
    """Present an abelian catalog group as ``Z^rank`` modulo torsion relations.

    Returns ``(to_vector, torsion_orders, rank)`` where the first
    ``len(torsion_orders)`` coordinates are cyclic; ``None`` for non-abelian kinds.
    """
    if isinstance(G, FreeAbelianGroup):
        return (lambda g: list(g)), [], G.rank
    if isinstance(G, CyclicGroup):
        return (lambda g: [g]), [G.n], 1
    if isinstance(G, ProductGroup):
        parts = [_abelian_coordinates(f) for f in G.factors]
        if any(p is None for p in parts):
            return None
        # reorder so that torsion coordinates come first
        torsion = [n for _, t, _ in parts for n in t]
        rank = sum(r for _, _, r in parts)

        def to_vec(g):
            tors, free = [], []
            for (fn, t, r), x in zip(parts, g):
                v = fn(x)
                tors.extend(v[:len(t)])
                free.extend(v[len(t):])
            return tors + free
        return to_vec, torsion, rank
    return None


def hermite_rows(rows, ncols):
    """Integer row echelon basis (Hermite-style) of the lattice spanned by ``rows``."""
    rows = [list(map(int, r)) for r in rows if any(r)]
    basis = []
    col = 0
    while rows and col < ncols:
        pivots = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        while len(pivots) > 1:
            pivots.sort(key=lambda r: abs(r[col]))
            p = pivots[0]
            new = [p]
            for r in pivots[1:]:
                q = r[col] // p[col]
                r = [a - q * b for a, b in zip(r, p)]
                if r[col] != 0:
                    new.append(r)
                elif any(r):
                    rest.append(r)
            pivots = new
        if pivots:
            p = pivots[0]
            if p[col] < 0:
                p = [-a for a in p]
            basis.append(p)
        rows = rest
        col += 1
    return basis


def lattice_is_full(rows, ncols) -> bool:
    basis = hermite_rows(rows, ncols)
    return len(basis) == ncols and all(abs(b[i]) == 1 for i, b in enumerate(basis))


def validate_reasonable(G: Group, mu: FinMeasure, gen_radius: int = DEFAULT_GEN_RADIUS,
                        radius_cap: int = DEFAULT_RADIUS_CAP) -> ReasonablenessReport:
    return ReasonablenessReport(
        symmetric=is_symmetric(G, mu),
        generates=support_generates(G, mu, gen_radius),
        second_moment=second_moment(G, mu, radius_cap),
    )
