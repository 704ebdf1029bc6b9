"""Finite-dimensional unitary representations given on generators."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import InputError, InvariantViolation, ValidationFailed
from .groups import Group
from .measure import FinMeasure, check_mu

UNITARY_TOL = 1e-9
RELATOR_TOL = 1e-8
KERNEL_RTOL = 1e-9
EXHAUSTIVE_LIMIT = 200


class UnitaryRep:
    """A homomorphism ``G -> U(n)`` determined by generator matrices.

    ``matrices`` is either a sequence in generator order or a mapping from
    generator label to matrix.  Group elements are evaluated along their
    canonical words, with ``pi(s^-1) = pi(s)^*``.
    """

    def __init__(self, group: Group, matrices, field: str | None = None):
        self.group = group
        if isinstance(matrices, dict):
            missing = set(group.labels) - set(matrices)
            if missing:
                raise InputError("missing generator matrices", missing=sorted(missing))
            matrices = [matrices[label] for label in group.labels]
        mats = [np.array(m, dtype=complex) for m in matrices]
        if len(mats) != group.ngens:
            raise InputError("one matrix per generator required",
                             expected=group.ngens, got=len(mats))
        if not mats:
            raise InputError("group has no generators")
        n = mats[0].shape[0]
        for m in mats:
            if m.shape != (n, n):
                raise InputError("generator matrices must be square of equal size",
                                 shape=m.shape)
        if field is None:
            field = "complex" if any(np.any(m.imag != 0) for m in mats) else "real"
        if field not in ("real", "complex"):
            raise InputError(f"field must be 'real' or 'complex', not {field!r}")
        if field == "real":
            if any(np.any(m.imag != 0) for m in mats):
                raise InputError("real representation has complex entries")
            mats = [m.real.copy() for m in mats]
        for m in mats:
            m.setflags(write=False)
        self.field = field
        self.matrices = tuple(mats)
        self.dim = n
        self._cache = {group.identity: self._readonly(np.eye(n, dtype=self.dtype))}

    @property
    def dtype(self):
        return float if self.field == "real" else complex

    @staticmethod
    def _readonly(m):
        m.setflags(write=False)
        return m

    def letter_matrix(self, letter: int) -> np.ndarray:
        m = self.matrices[abs(letter) - 1]
        return m if letter > 0 else m.conj().T

    def evaluate_word(self, word) -> np.ndarray:
        out = np.eye(self.dim, dtype=self.dtype)
        for letter in word:
            out = out @ self.letter_matrix(letter)
        return out

    def evaluate(self, g) -> np.ndarray:
        """``pi(g)`` as the product of generator matrices along ``g``'s canonical word."""
        m = self._cache.get(g)
        if m is None:
            self.group.check(g)
            m = self._readonly(self.evaluate_word(self.group.word(g)))
            self._cache[g] = m
        return m

    def __call__(self, g):
        return self.evaluate(g)

    def zero_vector(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=self.dtype)

    def vector(self, v) -> np.ndarray:
        v = np.asarray(v)
        if v.shape != (self.dim,):
            raise InputError(f"expected a vector of length {self.dim}", shape=v.shape)
        if self.field == "real":
            if np.iscomplexobj(v) and np.any(v.imag != 0):
                raise InputError("complex vector for a real representation")
            return v.real.astype(float)
        return v.astype(complex)

    # -- constructions -----------------------------------------------------
    def restrict_to(self, basis: np.ndarray) -> "UnitaryRep":
        """The subrepresentation on the (invariant) span of ``basis``'s columns."""
        return UnitaryRep(self.group, [basis.conj().T @ m @ basis for m in self.matrices],
                          field=self.field)

    def conjugate_by(self, Q: np.ndarray) -> "UnitaryRep":
        Q = np.asarray(Q)
        field = "complex" if np.iscomplexobj(Q) and np.any(Q.imag != 0) else self.field
        return UnitaryRep(self.group, [Q @ m @ Q.conj().T for m in self.matrices], field=field)

    def direct_sum(self, other: "UnitaryRep") -> "UnitaryRep":
        if other.group != self.group:
            raise InputError("direct sum needs representations of the same group")
        n, k = self.dim, other.dim
        mats = []
        for a, b in zip(self.matrices, other.matrices):
            m = np.zeros((n + k, n + k), dtype=complex)
            m[:n, :n] = a
            m[n:, n:] = b
            mats.append(m)
        field = "real" if self.field == other.field == "real" else "complex"
        return UnitaryRep(self.group, mats, field=field)

    def to_json(self) -> dict:
        def enc(x):
            return float(x.real) if self.field == "real" else [float(x.real), float(x.imag)]
        return {"dim": self.dim, "field": self.field,
                "matrices": {label: [[enc(x) for x in row] for row in m]
                             for label, m in zip(self.group.labels, self.matrices)}}

    @classmethod
    def from_json(cls, group: Group, obj: dict) -> "UnitaryRep":
        try:
            field = obj.get("field", "real")
            mats = {label: decode_matrix(m) for label, m in obj["matrices"].items()}
        except (KeyError, TypeError, AttributeError):
            raise InputError("representation needs 'matrices'") from None
        rep = cls(group, mats, field=field)
        if "dim" in obj and obj["dim"] != rep.dim:
            raise InputError("declared dim does not match matrices", dim=obj["dim"])
        return rep

    def __repr__(self):
        return f"UnitaryRep({self.group!r}, dim={self.dim}, field={self.field!r})"


def decode_scalar(x):
    if isinstance(x, (list, tuple)):
        re, im = x
        return complex(float(re), float(im))
    return float(x)


def decode_vector(v):
    vals = [decode_scalar(x) for x in v]
    if any(isinstance(x, complex) for x in vals):
        return np.array(vals, dtype=complex)
    return np.array(vals, dtype=float)


def decode_matrix(m):
    return np.array([[decode_scalar(x) for x in row] for row in m], dtype=complex)


def encode_vector(v, field: str):
    if field == "real":
        return [float(x) for x in np.real(v)]
    return [[float(x.real), float(x.imag)] for x in np.asarray(v, dtype=complex)]


def _maxabs(a) -> float:
    return float(np.abs(a).max()) if np.size(a) else 0.0


@dataclass
class ValidationReport:
    ok: bool
    unitarity_residual: float
    relator_residual: float
    pair_residual: float
    checked_relators: int
    checked_pairs: int
    exhaustive: bool
    failures: list = field(default_factory=list)

    @property
    def max_residual(self) -> float:
        return max(self.unitarity_residual, self.relator_residual, self.pair_residual)

    def to_json(self) -> dict:
        return {"ok": self.ok, "max_residual": self.max_residual,
                "unitarity_residual": self.unitarity_residual,
                "relator_residual": self.relator_residual,
                "pair_residual": self.pair_residual,
                "checked_relators": self.checked_relators,
                "checked_pairs": self.checked_pairs, "exhaustive": self.exhaustive,
                "failures": self.failures}


def validate_homomorphism(rep: UnitaryRep, trials: int = 50, seed: int = 0,
                          raise_on_failure: bool = True) -> ValidationReport:
    """Certify that the generator matrices define a unitary representation.

    Checks unitarity of each generator, every catalog relator, for small
    finite groups every pair ``pi(a) pi(b) = pi(ab)``, and ``trials``
    random pairs of short words.
    """
    if trials < 1:
        raise InputError("trials must be at least 1")
    G = rep.group
    failures = []
    eye = np.eye(rep.dim)
    unit = 0.0
    for label, m in zip(G.labels, rep.matrices):
        r = _maxabs(m.conj().T @ m - eye)
        unit = max(unit, r)
        if r >= UNITARY_TOL:
            failures.append({"kind": "unitarity", "generator": label, "residual": r})
    rel = 0.0
    for word in G.relators:
        r = _maxabs(rep.evaluate_word(word) - eye)
        rel = max(rel, r)
        if r >= RELATOR_TOL:
            failures.append({"kind": "relator", "relator": G.format_word(word), "residual": r})
    pair = 0.0
    npairs = 0
    exhaustive = G.is_finite and G.order() <= EXHAUSTIVE_LIMIT
    if exhaustive:
        elements = G.elements()
        pairs = [(a, b) for a in elements for b in elements]
    else:
        rng = np.random.default_rng(seed)
        pairs = [(G.random_element(rng, rng.integers(0, 5)), G.random_element(rng, rng.integers(0, 5)))
                 for _ in range(trials)]
    for a, b in pairs:
        r = _maxabs(rep.evaluate(a) @ rep.evaluate(b) - rep.evaluate(G._mul(a, b)))
        npairs += 1
        pair = max(pair, r)
        if r >= RELATOR_TOL and len(failures) < 20:
            failures.append({"kind": "pair", "a": G.describe(a), "b": G.describe(b), "residual": r})
    report = ValidationReport(not failures, unit, rel, pair, len(G.relators), npairs,
                              exhaustive, failures)
    if failures and raise_on_failure:
        first = failures[0]
        raise ValidationFailed(f"representation check failed: {first}", report=report.to_json())
    return report


@dataclass(frozen=True)
class Subspace:
    """Subspace given by an orthonormal basis (columns)."""

    basis: np.ndarray

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T

    def project(self, v) -> np.ndarray:
        return self.basis @ (self.basis.conj().T @ v)

    def complement(self) -> "Subspace":
        return Subspace(linalg.orthogonal_complement(self.basis))

    def contains(self, v, tol: float = 1e-8) -> bool:
        return float(np.linalg.norm(v - self.project(v))) < tol


def invariant_subspace(rep: UnitaryRep, generators=None) -> Subspace:
    """Common fixed vectors of ``pi(s)`` for the given generator indices (default: all)."""
    idx = range(rep.group.ngens) if generators is None else generators
    eye = np.eye(rep.dim)
    blocks = [rep.matrices[i] - eye for i in idx]
    if not blocks:
        return Subspace(linalg.canonical_basis(np.eye(rep.dim, dtype=rep.dtype)))
    return Subspace(linalg.null_space(np.vstack(blocks), rtol=KERNEL_RTOL, ncols=rep.dim))


def fixed_subspace(rep: UnitaryRep) -> Subspace:
    """Vectors fixed by every ``pi(g)``: the joint kernel of ``pi(s) - I``."""
    return invariant_subspace(rep)


def pi_mu(rep: UnitaryRep, mu: FinMeasure) -> np.ndarray:
    """The averaging operator ``sum_g mu(g) pi(g)``."""
    check_mu(mu, rep.group)
    out = np.zeros((rep.dim, rep.dim), dtype=rep.dtype)
    for g, w in mu.items():
        out = out + w * rep.evaluate(g)
    norm = linalg.op_norm(out)
    if norm > 1 + 1e-9:
        raise InvariantViolation("averaging operator has norm above 1", norm=norm)
    return out
