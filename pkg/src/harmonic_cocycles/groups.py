"""Catalog of finitely generated groups with exact canonical forms.

Elements are plain hashable Python values, one canonical form per kind:

=============  ==============================================
kind           canonical form
=============  ==============================================
finite_perm    tuple of images ``p[i]``
finite_cyclic  residue ``r`` in ``range(n)``
free_abelian   tuple of integers
free           freely reduced tuple of signed letters
heisenberg     integer triple ``(a, b, c)``
product        tuple of factor elements
=============  ==============================================

Words are tuples of *signed letters*: ``+(i+1)`` is generator ``i`` and
``-(i+1)`` its inverse.  The same encoding is used for relators and for
free-group elements.  Commutators follow ``[a, b] = a b a^-1 b^-1``.
"""

from __future__ import annotations

import re
import threading
from collections.abc import Iterable, Sequence

from .errors import BallTooLarge, InputError, KindMismatch, RadiusExceeded

DEFAULT_RADIUS_CAP = 20
DEFAULT_BALL_LIMIT = 10**6


def free_reduce(word: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def invert_word(word: Sequence[int]) -> tuple[int, ...]:
    return tuple(-letter for letter in reversed(word))


def commutator(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(a) + tuple(b) + invert_word(a) + invert_word(b)


class Group:
    """Base class for catalog groups.

    Subclasses provide ``_mul``, ``_inv``, ``_contains``, ``word``,
    ``encode`` and ``decode``; the word metric, Cayley balls and relator
    bookkeeping live here.
    """

    kind: str = ""
    is_finite: bool = False
    relators_by_exhaustion: bool = False

    def __init__(self, labels: Sequence[str], generators: Sequence):
        labels = tuple(labels)
        if len(labels) != len(generators):
            raise InputError("one label per generator required",
                             labels=labels, ngens=len(generators))
        if len(set(labels)) != len(labels):
            raise InputError("generator labels must be distinct", labels=labels)
        for label in labels:
            if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_.]*", label):
                raise InputError(f"invalid generator label {label!r}")
        self.labels = labels
        self.generators = tuple(generators)
        self._letters = {}
        for i, g in enumerate(self.generators):
            self._letters[i + 1] = g
            self._letters[-(i + 1)] = self._inv(g)
        self._lock = threading.RLock()
        self._dist = {self.identity: 0}
        self._parent = {self.identity: None}
        self._layers = [[self.identity]]
        self._exhausted = False
        self._relators = None

    # -- group law ---------------------------------------------------------
    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def identity(self):
        raise NotImplementedError

    def contains(self, a) -> bool:
        try:
            return self._contains(a)
        except (TypeError, ValueError):
            return False

    def check(self, a):
        if not self.contains(a):
            raise KindMismatch(f"{a!r} is not an element of {self}")
        return a

    def mul(self, a, b):
        return self._mul(self.check(a), self.check(b))

    def inv(self, a):
        return self._inv(self.check(a))

    def letter(self, letter: int):
        try:
            return self._letters[letter]
        except KeyError:
            raise InputError(f"letter {letter} out of range for {self}") from None

    def evaluate_word(self, word: Iterable[int]):
        g = self.identity
        for letter in word:
            g = self._mul(g, self.letter(letter))
        return g

    def label_index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"unknown generator label {label!r}",
                             labels=self.labels) from None

    # -- relators ----------------------------------------------------------
    @property
    def relators(self) -> tuple[tuple[int, ...], ...]:
        if self._relators is None:
            self._relators = tuple(self._make_relators())
        return self._relators

    def _make_relators(self):
        return []

    # -- word metric -------------------------------------------------------
    def _expand(self, radius: int, limit: int = DEFAULT_BALL_LIMIT):
        with self._lock:
            while len(self._layers) <= radius and not self._exhausted:
                frontier = self._layers[-1]
                r = len(self._layers)
                layer = []
                for g in frontier:
                    for i in range(self.ngens):
                        for letter in (i + 1, -(i + 1)):
                            h = self._mul(g, self._letters[letter])
                            if h not in self._dist:
                                self._dist[h] = r
                                self._parent[h] = (g, letter)
                                layer.append(h)
                    if len(self._dist) > limit:
                        raise BallTooLarge(
                            f"Cayley ball of radius {r} exceeds {limit} elements",
                            radius=r, limit=limit)
                if not layer:
                    self._exhausted = True
                    break
                self._layers.append(layer)

    def word_length(self, a, radius_cap: int = DEFAULT_RADIUS_CAP) -> int:
        """Word length with respect to the symmetrized generating set.

        Computed by breadth-first search over the Cayley graph; the search
        is memoized per group.
        """
        self.check(a)
        if radius_cap < 0:
            raise InputError("radius_cap must be nonnegative")
        d = self._dist.get(a)
        if d is not None:
            return d
        while a not in self._dist and len(self._layers) <= radius_cap and not self._exhausted:
            self._expand(len(self._layers))
        d = self._dist.get(a)
        if d is None or d > radius_cap:
            raise RadiusExceeded(f"{self.describe(a)} not found within radius {radius_cap}",
                                 radius_cap=radius_cap)
        return d

    def cayley_ball(self, radius: int, limit: int = DEFAULT_BALL_LIMIT):
        """All ``(g, |g|)`` with ``|g| <= radius``, sorted by canonical form."""
        if radius < 0:
            raise InputError("radius must be nonnegative")
        self._expand(radius, limit)
        out = [(g, d) for g, d in self._dist.items() if d <= radius]
        if len(out) > limit:
            raise BallTooLarge(f"Cayley ball of radius {radius} exceeds {limit} elements",
                               radius=radius, limit=limit)
        out.sort(key=lambda item: item[0])
        return out

    def geodesic_word(self, a, radius_cap: int = DEFAULT_RADIUS_CAP) -> tuple[int, ...]:
        """A shortest word for ``a`` read off the breadth-first search tree."""
        self.word_length(a, radius_cap)
        letters = []
        node = a
        while self._parent[node] is not None:
            node, letter = self._parent[node]
            letters.append(letter)
        return tuple(reversed(letters))

    def bfs_parent(self, a):
        """``(parent, letter)`` with ``a = parent * letter`` in the search tree."""
        return self._parent[a]

    # -- finite groups -----------------------------------------------------
    def elements(self) -> list:
        if not self.is_finite:
            raise InputError(f"{self} is infinite; use cayley_ball")
        while not self._exhausted:
            self._expand(len(self._layers))
        return sorted(self._dist)

    def order(self) -> int:
        return len(self.elements())

    # -- random sampling ---------------------------------------------------
    def random_word(self, rng, length: int) -> tuple[int, ...]:
        if self.ngens == 0:
            return ()
        letters = rng.integers(1, self.ngens + 1, size=length)
        signs = rng.choice([-1, 1], size=length)
        return tuple(int(s * l) for s, l in zip(signs, letters))

    def random_element(self, rng, length: int = 6):
        return self.evaluate_word(self.random_word(rng, int(length)))

    # -- text and JSON -----------------------------------------------------
    def element(self, obj):
        """Element from its JSON encoding or from a word string like ``"s t^-2"``."""
        if isinstance(obj, str):
            return self.parse(obj)
        return self.check(self.decode(obj))

    def parse(self, text: str):
        tokens = [t for t in re.split(r"[\s*]+", text.strip()) if t]
        word: list[int] = []
        for tok in tokens:
            if tok in ("e", "1") and "e" not in self.labels:
                continue
            m = re.fullmatch(r"([A-Za-z][A-Za-z0-9_.]*)(?:\^(-?\d+))?", tok)
            if not m:
                raise InputError(f"cannot parse word token {tok!r}")
            i = self.label_index(m.group(1))
            power = int(m.group(2)) if m.group(2) is not None else 1
            word.extend([(i + 1) if power > 0 else -(i + 1)] * abs(power))
        return self.evaluate_word(word)

    def format_word(self, word: Sequence[int]) -> str:
        if not word:
            return "e"
        parts = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            label = self.labels[abs(word[i]) - 1]
            power = (j - i) * (1 if word[i] > 0 else -1)
            parts.append(label if power == 1 else f"{label}^{power}")
            i = j
        return " ".join(parts)

    def describe(self, a) -> str:
        return self.format_word(self.word(a))

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": self._params()}

    def _params(self) -> dict:
        raise NotImplementedError

    def _key(self):
        return (self.kind, repr(sorted(self._params().items())))

    def __eq__(self, other):
        return isinstance(other, Group) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"{type(self).__name__}({self._params()})"

    # -- subclass hooks ----------------------------------------------------
    def word(self, a) -> tuple[int, ...]:
        """Canonical word for ``a``; representations extend along it."""
        raise NotImplementedError

    def encode(self, a):
        raise NotImplementedError

    def decode(self, obj):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _inv(self, a):
        raise NotImplementedError

    def _contains(self, a) -> bool:
        raise NotImplementedError


def _default_labels(prefix: str, n: int) -> list[str]:
    return [f"{prefix}{i + 1}" for i in range(n)]


class PermGroup(Group):
    """Finite group generated by permutations of ``range(degree)``.

    ``(p * q)[i] = p[q[i]]``.  Relators are produced by exhaustion: one
    relator ``w(g) s w(gs)^-1`` per non-tree edge of the Cayley graph, which
    together generate every relation among the generators.
    """

    kind = "finite_perm"
    is_finite = True
    relators_by_exhaustion = True

    def __init__(self, degree: int, generators: Sequence[Sequence[int]], labels=None):
        self.degree = int(degree)
        gens = []
        for p in generators:
            p = tuple(int(x) for x in p)
            if sorted(p) != list(range(self.degree)):
                raise InputError(f"{list(p)} is not a permutation of range({self.degree})")
            gens.append(p)
        if labels is None:
            labels = _default_labels("s", len(gens))
        super().__init__(labels, gens)

    @property
    def identity(self):
        return tuple(range(self.degree))

    def _mul(self, a, b):
        return tuple(a[i] for i in b)

    def _inv(self, a):
        out = [0] * len(a)
        for i, ai in enumerate(a):
            out[ai] = i
        return tuple(out)

    def _contains(self, a):
        if not (isinstance(a, tuple) and len(a) == self.degree):
            return False
        self.elements()
        return a in self._dist

    def word(self, a):
        return self.geodesic_word(a, radius_cap=len(self.elements()))

    def _make_relators(self):
        rels = set()
        for g in self.elements():
            wg = self.word(g)
            for i, s in enumerate(self.generators):
                gs = self._mul(g, s)
                r = free_reduce(wg + (i + 1,) + invert_word(self.word(gs)))
                if r:
                    rels.add(r)
        return sorted(rels, key=lambda r: (len(r), r))

    def encode(self, a):
        return list(a)

    def decode(self, obj):
        return tuple(int(x) for x in obj)

    def _params(self):
        return {"degree": self.degree, "generators": [list(g) for g in self.generators],
                "labels": list(self.labels)}


class CyclicGroup(Group):
    kind = "finite_cyclic"
    is_finite = True

    def __init__(self, n: int, labels=None):
        self.n = int(n)
        if self.n < 1:
            raise InputError("cyclic group order must be positive")
        super().__init__(labels or ["t"], [1 % self.n])

    @property
    def identity(self):
        return 0

    def _mul(self, a, b):
        return (a + b) % self.n

    def _inv(self, a):
        return (-a) % self.n

    def _contains(self, a):
        return isinstance(a, int) and not isinstance(a, bool) and 0 <= a < self.n

    def word(self, a):
        if 2 * a <= self.n:
            return (1,) * a
        return (-1,) * (self.n - a)

    def _make_relators(self):
        return [(1,) * self.n]

    def encode(self, a):
        return a

    def decode(self, obj):
        if isinstance(obj, list):
            (obj,) = obj
        return int(obj) % self.n

    def _params(self):
        return {"n": self.n, "labels": list(self.labels)}


class FreeAbelianGroup(Group):
    kind = "free_abelian"

    def __init__(self, rank: int, labels=None):
        self.rank = int(rank)
        if self.rank < 1:
            raise InputError("rank must be positive")
        if labels is None:
            labels = ["t"] if self.rank == 1 else _default_labels("e", self.rank)
        gens = [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]
        super().__init__(labels, gens)

    @property
    def identity(self):
        return (0,) * self.rank

    def _mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _inv(self, a):
        return tuple(-x for x in a)

    def _contains(self, a):
        return (isinstance(a, tuple) and len(a) == self.rank
                and all(isinstance(x, int) and not isinstance(x, bool) for x in a))

    def word(self, a):
        out = []
        for i, x in enumerate(a):
            out.extend([(i + 1) if x > 0 else -(i + 1)] * abs(x))
        return tuple(out)

    def _make_relators(self):
        return [commutator((i + 1,), (j + 1,))
                for i in range(self.rank) for j in range(i + 1, self.rank)]

    def encode(self, a):
        return list(a)

    def decode(self, obj):
        if isinstance(obj, int):
            obj = [obj]
        return tuple(int(x) for x in obj)

    def _params(self):
        return {"rank": self.rank, "labels": list(self.labels)}


class FreeGroup(Group):
    kind = "free"

    def __init__(self, rank: int, labels=None):
        self.rank = int(rank)
        if self.rank < 1:
            raise InputError("rank must be positive")
        if labels is None:
            labels = list("xyzw")[:self.rank] if self.rank <= 4 else _default_labels("x", self.rank)
        super().__init__(labels, [(i + 1,) for i in range(self.rank)])

    @property
    def identity(self):
        return ()

    def _mul(self, a, b):
        k = 0
        while k < min(len(a), len(b)) and a[len(a) - 1 - k] == -b[k]:
            k += 1
        return a[:len(a) - k] + b[k:]

    def _inv(self, a):
        return invert_word(a)

    def _contains(self, a):
        return (isinstance(a, tuple)
                and all(isinstance(x, int) and 0 < abs(x) <= self.rank for x in a)
                and free_reduce(a) == a)

    def word(self, a):
        return a

    def encode(self, a):
        return list(a)

    def decode(self, obj):
        return free_reduce(int(x) for x in obj)

    def _params(self):
        return {"rank": self.rank, "labels": list(self.labels)}


class HeisenbergGroup(Group):
    """Integer Heisenberg group; ``(a, b, c)`` is the unipotent matrix
    ``[[1, a, c], [0, 1, b], [0, 0, 1]]``.

    Generators ``x = (1,0,0)``, ``y = (0,1,0)``, ``z = (0,0,1) = [x, y]``.
    """

    kind = "heisenberg"

    def __init__(self, labels=None):
        super().__init__(labels or ["x", "y", "z"], [(1, 0, 0), (0, 1, 0), (0, 0, 1)])

    @property
    def identity(self):
        return (0, 0, 0)

    def _mul(self, a, b):
        return (a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1])

    def _inv(self, a):
        return (-a[0], -a[1], -a[2] + a[0] * a[1])

    def _contains(self, a):
        return (isinstance(a, tuple) and len(a) == 3
                and all(isinstance(x, int) and not isinstance(x, bool) for x in a))

    def word(self, a):
        x, y, c = a
        d = c - x * y
        return ((1,) * x if x > 0 else (-1,) * -x) + \
               ((2,) * y if y > 0 else (-2,) * -y) + \
               ((3,) * d if d > 0 else (-3,) * -d)

    def _make_relators(self):
        return [commutator((1,), (2,)) + (-3,), commutator((1,), (3,)), commutator((2,), (3,))]

    def encode(self, a):
        return list(a)

    def decode(self, obj):
        return tuple(int(x) for x in obj)

    def _params(self):
        return {"labels": list(self.labels)}


class ProductGroup(Group):
    """Direct product; generators are the factor generators in order."""

    kind = "product"

    def __init__(self, factors: Sequence[Group], labels=None):
        self.factors = tuple(factors)
        if len(self.factors) < 2:
            raise InputError("a product needs at least two factors")
        self.is_finite = all(f.is_finite for f in self.factors)
        self.relators_by_exhaustion = any(f.relators_by_exhaustion for f in self.factors)
        self.offsets = []
        gens = []
        flat_labels = []
        ident = tuple(f.identity for f in self.factors)
        off = 0
        for j, f in enumerate(self.factors):
            self.offsets.append(off)
            for g in f.generators:
                gens.append(ident[:j] + (g,) + ident[j + 1:])
            flat_labels.extend(f.labels)
            off += f.ngens
        if labels is None:
            labels = flat_labels
            if len(set(labels)) != len(labels):
                labels = [f"{lab}{j + 1}" for j, f in enumerate(self.factors) for lab in f.labels]
        self._ident = ident
        super().__init__(labels, gens)

    @property
    def identity(self):
        return self._ident

    def factor_of_generator(self, i: int) -> int:
        for j in reversed(range(len(self.factors))):
            if i >= self.offsets[j]:
                return j
        raise IndexError(i)

    def factor_generators(self, j: int) -> range:
        return range(self.offsets[j], self.offsets[j] + self.factors[j].ngens)

    def _mul(self, a, b):
        return tuple(f._mul(x, y) for f, x, y in zip(self.factors, a, b))

    def _inv(self, a):
        return tuple(f._inv(x) for f, x in zip(self.factors, a))

    def _contains(self, a):
        return (isinstance(a, tuple) and len(a) == len(self.factors)
                and all(f.contains(x) for f, x in zip(self.factors, a)))

    def embed(self, j: int, x):
        return self._ident[:j] + (x,) + self._ident[j + 1:]

    def _shift(self, word, j):
        off = self.offsets[j]
        return tuple(l + off if l > 0 else l - off for l in word)

    def word(self, a):
        out: tuple[int, ...] = ()
        for j, (f, x) in enumerate(zip(self.factors, a)):
            out += self._shift(f.word(x), j)
        return out

    def _make_relators(self):
        rels = []
        for j, f in enumerate(self.factors):
            rels.extend(self._shift(r, j) for r in f.relators)
        for i in range(len(self.factors)):
            for j in range(i + 1, len(self.factors)):
                for s in self.factor_generators(i):
                    for t in self.factor_generators(j):
                        rels.append(commutator((s + 1,), (t + 1,)))
        return rels

    def elements(self):
        if not self.is_finite:
            raise InputError(f"{self} is infinite; use cayley_ball")
        import itertools
        return sorted(itertools.product(*(f.elements() for f in self.factors)))

    def encode(self, a):
        return [f.encode(x) for f, x in zip(self.factors, a)]

    def decode(self, obj):
        if len(obj) != len(self.factors):
            raise KindMismatch("product element has the wrong number of factors")
        return tuple(f.decode(x) for f, x in zip(self.factors, obj))

    def _params(self):
        return {"factors": [f.to_json() for f in self.factors], "labels": list(self.labels)}


def group_from_json(spec: dict) -> Group:
    """Build a group from ``{"kind": ..., "params": {...}}``."""
    try:
        kind = spec["kind"]
        params = dict(spec.get("params", {}))
    except (TypeError, KeyError):
        raise InputError("group spec needs a 'kind' and 'params'", spec=spec) from None
    labels = params.pop("labels", None)
    try:
        if kind == "finite_perm":
            return PermGroup(params["degree"], params["generators"], labels)
        if kind == "finite_cyclic":
            return CyclicGroup(params["n"], labels)
        if kind == "free_abelian":
            return FreeAbelianGroup(params["rank"], labels)
        if kind == "free":
            return FreeGroup(params["rank"], labels)
        if kind == "heisenberg":
            return HeisenbergGroup(labels)
        if kind == "product":
            return ProductGroup([group_from_json(f) for f in params["factors"]], labels)
    except KeyError as exc:
        raise InputError(f"group spec of kind {kind!r} is missing {exc}") from None
    raise InputError(f"unknown group kind {kind!r}")
