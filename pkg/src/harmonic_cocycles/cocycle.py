"""1-cocycles ``b(gh) = pi(g) b(h) + b(g)`` stored by their generator values."""

from __future__ import annotations

import numpy as np

from . import linalg
from .errors import InputError, RelatorViolation
from .measure import FinMeasure, check_mu
from .rep import UnitaryRep, decode_vector, encode_vector, fixed_subspace

RELATOR_TOL = 1e-8
HARMONIC_TOL = 1e-8
EXHAUSTIVE_PAIR_LIMIT = 64


class Cocycle:
    """A cocycle for ``rep``, determined by its values on the generators.

    ``values[i]`` is ``b(s_i)``.  Values elsewhere are obtained by
    telescoping along canonical words; ``b(s^-1) = -pi(s)^* b(s)``.
    Construct through :func:`from_generator_values` to validate relators.
    """

    def __init__(self, rep: UnitaryRep, values):
        self.rep = rep
        vals = np.array(values, dtype=rep.dtype).reshape(rep.group.ngens, rep.dim)
        vals.setflags(write=False)
        self.values = vals
        self._cache = {}

    @property
    def group(self):
        return self.rep.group

    def letter_value(self, letter: int) -> np.ndarray:
        v = self.values[abs(letter) - 1]
        return v if letter > 0 else -(self.rep.matrices[abs(letter) - 1].conj().T @ v)

    def evaluate_word(self, word):
        """``(pi(w), b(w))`` for a word ``w``."""
        P = np.eye(self.rep.dim, dtype=self.rep.dtype)
        total = np.zeros(self.rep.dim, dtype=self.rep.dtype)
        for letter in word:
            total = total + P @ self.letter_value(letter)
            P = P @ self.rep.letter_matrix(letter)
        return P, total

    def evaluate(self, g) -> np.ndarray:
        v = self._cache.get(g)
        if v is None:
            self.group.check(g)
            v = self.evaluate_word(self.group.word(g))[1]
            v.setflags(write=False)
            self._cache[g] = v
        return v

    def __call__(self, g):
        return self.evaluate(g)

    def value(self, label: str) -> np.ndarray:
        return self.values[self.group.label_index(label)]

    # -- linear structure --------------------------------------------------
    def _like(self, values) -> "Cocycle":
        return Cocycle(self.rep, values)

    def _compatible(self, other):
        if not isinstance(other, Cocycle):
            raise TypeError(f"expected a Cocycle, got {type(other).__name__}")
        if other.rep is self.rep:
            return
        same = (other.rep.group == self.rep.group and other.rep.dim == self.rep.dim
                and all(np.allclose(a, b) for a, b in zip(self.rep.matrices, other.rep.matrices)))
        if not same:
            raise InputError("cocycles belong to different representations")

    def __add__(self, other):
        self._compatible(other)
        return self._like(self.values + other.values)

    def __sub__(self, other):
        self._compatible(other)
        return self._like(self.values - other.values)

    def __neg__(self):
        return self._like(-self.values)

    def __mul__(self, c):
        return self._like(c * self.values)

    __rmul__ = __mul__

    def shifted(self, v) -> "Cocycle":
        """``b_v(g) = b(g) + pi(g) v - v`` (cohomologous to ``b``)."""
        return self + coboundary(self.rep, v)

    def project(self, P: np.ndarray) -> "Cocycle":
        return self._like(self.values @ P.T)

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))

    def distance(self, other: "Cocycle") -> float:
        """Largest generator-value difference."""
        self._compatible(other)
        d = self.values - other.values
        return float(np.linalg.norm(d, axis=1).max()) if d.size else 0.0

    def to_json(self, rep_name: str | None = None) -> dict:
        out = {"gen_values": {label: encode_vector(v, self.rep.field)
                              for label, v in zip(self.group.labels, self.values)}}
        if rep_name is not None:
            out["rep"] = rep_name
        return out

    def __repr__(self):
        return f"Cocycle({self.rep!r}, values={self.values.tolist()})"


# -- linear operators on generator values -----------------------------------

def value_operator(rep: UnitaryRep, word) -> np.ndarray:
    """Matrix ``C`` (``dim x ngens*dim``) with ``b(w) = C @ vec(values)``."""
    d, k = rep.dim, rep.group.ngens
    C = np.zeros((d, k * d), dtype=rep.dtype)
    P = np.eye(d, dtype=rep.dtype)
    for letter in word:
        j = abs(letter) - 1
        if letter > 0:
            C[:, j * d:(j + 1) * d] += P
        else:
            C[:, j * d:(j + 1) * d] -= P @ rep.matrices[j].conj().T
        P = P @ rep.letter_matrix(letter)
    return C


def relator_operator(rep: UnitaryRep) -> np.ndarray:
    """Stacked telescoped-relator constraints; its kernel is Z^1."""
    d, k = rep.dim, rep.group.ngens
    blocks = [value_operator(rep, r) for r in rep.group.relators]
    if not blocks:
        return np.zeros((0, k * d), dtype=rep.dtype)
    return np.vstack(blocks)


def coboundary_operator(rep: UnitaryRep) -> np.ndarray:
    """``v -> (pi(s) v - v)_s`` as an ``ngens*dim x dim`` matrix."""
    eye = np.eye(rep.dim)
    return np.vstack([m - eye for m in rep.matrices])


def cocycle_space(rep: UnitaryRep) -> np.ndarray:
    """Orthonormal basis (columns, length ``ngens*dim``) of Z^1."""
    return linalg.null_space(relator_operator(rep), rtol=linalg.RANK_RTOL,
                             ncols=rep.group.ngens * rep.dim)


def relator_residuals(rep: UnitaryRep, values) -> list[tuple[tuple[int, ...], float]]:
    c = Cocycle(rep, values)
    return [(r, float(np.linalg.norm(c.evaluate_word(r)[1]))) for r in rep.group.relators]


def check_cocycle_identity(c: Cocycle, pairs) -> float:
    """Largest ``|b(gh) - pi(g) b(h) - b(g)|`` over ``pairs``."""
    G = c.group
    worst = 0.0
    for g, h in pairs:
        r = c.evaluate(G._mul(g, h)) - c.rep.evaluate(g) @ c.evaluate(h) - c.evaluate(g)
        worst = max(worst, float(np.linalg.norm(r)))
    return worst


def from_generator_values(rep: UnitaryRep, gen_values) -> Cocycle:
    """Validated cocycle from ``{label: vector}`` (or a sequence in generator order)."""
    G = rep.group
    if isinstance(gen_values, dict):
        missing = set(G.labels) - set(gen_values)
        extra = set(gen_values) - set(G.labels)
        if missing or extra:
            raise InputError("gen_values must name every generator exactly",
                             missing=sorted(missing), extra=sorted(extra))
        gen_values = [gen_values[label] for label in G.labels]
    if len(gen_values) != G.ngens:
        raise InputError("one value per generator required")
    values = [rep.vector(np.asarray(v)) for v in gen_values]
    c = Cocycle(rep, values)
    for r in G.relators:
        res = float(np.linalg.norm(c.evaluate_word(r)[1]))
        if res >= RELATOR_TOL:
            raise RelatorViolation(f"relator {G.format_word(r)} is violated (residual {res:.3g})",
                                   relator=G.format_word(r), residual=res)
    if G.is_finite and G.order() <= EXHAUSTIVE_PAIR_LIMIT:
        elements = G.elements()
        res = check_cocycle_identity(c, [(a, b) for a in elements for b in elements])
        if res >= RELATOR_TOL:
            raise RelatorViolation(f"cocycle identity fails (residual {res:.3g})", residual=res)
    return c


def from_json(rep: UnitaryRep, obj: dict) -> Cocycle:
    try:
        gv = obj["gen_values"]
    except (KeyError, TypeError):
        raise InputError("cocycle needs 'gen_values'") from None
    return from_generator_values(rep, {k: decode_vector(v) for k, v in gv.items()})


def zero_cocycle(rep: UnitaryRep) -> Cocycle:
    return Cocycle(rep, np.zeros((rep.group.ngens, rep.dim)))


def coboundary(rep: UnitaryRep, v) -> Cocycle:
    """``g -> pi(g) v - v``."""
    v = rep.vector(np.asarray(v))
    return Cocycle(rep, [m @ v - v for m in rep.matrices])


def mu_center(c: Cocycle, mu: FinMeasure):
    """``(sum_g mu(g) b(g), is_harmonic)``; harmonic means the center vanishes."""
    check_mu(mu, c.group)
    center = np.zeros(c.rep.dim, dtype=c.rep.dtype)
    for g, w in mu.items():
        center = center + w * c.evaluate(g)
    return center, bool(np.linalg.norm(center) < HARMONIC_TOL)


def mean_value_defect(c: Cocycle, mu: FinMeasure, g) -> float:
    """``|b(g) - sum_h mu(h) b(gh)|``, the defect in the mean-value form of harmonicity."""
    G = c.group
    avg = sum(w * c.evaluate(G._mul(g, h)) for h, w in mu.items())
    return float(np.linalg.norm(c.evaluate(g) - avg))


def split_fixed(c: Cocycle):
    """``(b_fixed, b_unfixed)``: projections onto the fixed subspace and its complement."""
    P = fixed_subspace(c.rep).projector()
    fixed = c.project(P)
    return fixed, c - fixed
