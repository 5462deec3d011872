"""Permutation representations of automorphism groups and their matrix coefficients.

Vectors are finitely supported and exact (``Fraction`` coordinates) unless
a function says otherwise.  Group elements are finite partial isomorphisms
that grow on demand by least-witness back-and-forth, which by homogeneity
is as good as an automorphism for any finite computation.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .structures import (EmbeddingChunk, NotTypePreserving, Structure, abstract_types,
                         extend_embedding, qf_type, same_type)


class UnsupportedRelation(ValueError):
    pass


class NotIndiscernible(ValueError):
    pass


class SequenceNotIndiscernible(ValueError):
    pass


class EtaNotFixed(ValueError):
    pass


class ApproximationTooCoarse(ValueError):
    pass


# --- group elements ----------------------------------------------------------

class GroupElement:
    """An automorphism known on a finite set, extended lazily.

    Forward and backward queries share one graph, so ``g`` and
    ``g.inverse()`` always stay inverse to each other.
    """

    __slots__ = ("structure", "_fwd", "_bwd")

    def __init__(self, structure: Structure, graph: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        fwd = dict(graph)
        if len(set(fwd.values())) != len(fwd) or not same_type(structure, list(fwd), list(fwd.values())):
            raise NotTypePreserving(f"{fwd} is not a partial automorphism")
        self.structure = structure
        self._fwd = fwd
        self._bwd = {b: a for a, b in fwd.items()}

    @classmethod
    def from_chunk(cls, chunk: EmbeddingChunk) -> "GroupElement":
        return cls(chunk.structure, chunk.as_dict())

    def __call__(self, a: int) -> int:
        b = self._fwd.get(a)
        if b is None:
            b = extend_embedding(self.structure, self._fwd, a)[a]
            self._fwd[a] = b
            self._bwd[b] = a
        return b

    def preimage(self, b: int) -> int:
        a = self._bwd.get(b)
        if a is None:
            a = extend_embedding(self.structure, self._bwd, b)[b]
            self._bwd[b] = a
            self._fwd[a] = b
        return a

    def apply(self, t: Sequence[int]) -> tuple[int, ...]:
        return tuple(self(a) for a in t)

    def inverse(self) -> "GroupElement":
        inv = object.__new__(GroupElement)
        inv.structure = self.structure
        inv._fwd, inv._bwd = self._bwd, self._fwd
        return inv

    def __mul__(self, other: "GroupElement") -> "Composite":
        return Composite(self, other)

    def known(self) -> dict[int, int]:
        return dict(self._fwd)

    def __repr__(self):
        body = ", ".join(f"{a}->{b}" for a, b in sorted(self._fwd.items()))
        return f"GroupElement({{{body}}})"


class Identity:
    """The identity automorphism (an empty ``GroupElement`` would extend by least witnesses instead)."""

    __slots__ = ("structure",)

    def __init__(self, structure: Structure):
        self.structure = structure

    def __call__(self, a: int) -> int:
        return a

    def preimage(self, b: int) -> int:
        return b

    def apply(self, t: Sequence[int]) -> tuple[int, ...]:
        return tuple(t)

    def inverse(self) -> "Identity":
        return self

    def __mul__(self, other):
        return Composite(self, other)

    def __repr__(self):
        return "Identity()"


class Composite:
    """``g * h``: first ``h``, then ``g``."""

    __slots__ = ("outer", "inner", "structure")

    def __init__(self, outer, inner):
        self.outer, self.inner = outer, inner
        self.structure = outer.structure

    def __call__(self, a: int) -> int:
        return self.outer(self.inner(a))

    def preimage(self, b: int) -> int:
        return self.inner.preimage(self.outer.preimage(b))

    def apply(self, t: Sequence[int]) -> tuple[int, ...]:
        return tuple(self(a) for a in t)

    def inverse(self) -> "Composite":
        return Composite(self.inner.inverse(), self.outer.inverse())

    def __mul__(self, other) -> "Composite":
        return Composite(self, other)


def random_element(S: Structure, points: Sequence[int], window: int, rng: random.Random) -> GroupElement:
    """A group element whose values on ``points`` are drawn at random from the window.

    Each point picks uniformly among the window elements that keep the map
    type-preserving; if there are none it falls back to the least witness.
    """
    graph: dict[int, int] = {}
    for a in points:
        if a in graph:
            continue
        dom = list(graph) + [a]
        options = [b for b in range(window) if b not in graph.values()
                   and same_type(S, dom, list(graph.values()) + [b])]
        graph[a] = rng.choice(options) if options else extend_embedding(S, graph, a)[a]
    return GroupElement(S, graph)


def elements_moving(S: Structure, c: Sequence[int], window: int) -> list[GroupElement]:
    """One group element sending ``c`` to each window tuple of the same type."""
    out = []
    for img in itertools.product(range(window), repeat=len(c)):
        if same_type(S, c, img):
            graph = dict(zip(c, img))
            out.append(GroupElement(S, graph))
    return out


# --- relations and representations ----------------------------------------------

@dataclass(frozen=True)
class Relation:
    """A definable equivalence relation on ``arity``-tuples.

    ``kind`` is one of ``equality`` (tuples equal), ``projection`` (equal on
    ``coords``), ``same_set`` (same underlying set) or ``total`` (one class).
    """

    kind: str
    arity: int
    coords: tuple[int, ...] = ()

    KINDS = ("equality", "projection", "same_set", "total")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise UnsupportedRelation(f"no equivalence relation called {self.kind!r}")
        if self.kind == "projection" and not all(0 <= i < self.arity for i in self.coords):
            raise UnsupportedRelation(f"coordinates {self.coords} out of range for arity {self.arity}")

    @classmethod
    def parse(cls, text: str) -> "Relation":
        """``eq:2``, ``proj:3:0,2``, ``set:2`` or ``total:1``."""
        names = {"eq": "equality", "proj": "projection", "set": "same_set", "total": "total"}
        parts = text.split(":")
        if parts[0] not in names or len(parts) < 2:
            raise UnsupportedRelation(f"cannot parse relation {text!r}")
        coords = tuple(int(i) for i in parts[2].split(",")) if len(parts) > 2 and parts[2] else ()
        return cls(names[parts[0]], int(parts[1]), coords)

    def key(self, t: Sequence[int]) -> Hashable:
        t = tuple(t)
        if len(t) != self.arity:
            raise ValueError(f"expected a {self.arity}-tuple, got {t}")
        if self.kind == "equality":
            return t
        if self.kind == "projection":
            return tuple(t[i] for i in self.coords)
        if self.kind == "same_set":
            return frozenset(t)
        return ()

    def act(self, g, key: Hashable) -> Hashable:
        if self.kind == "same_set":
            return frozenset(g(a) for a in key)
        return tuple(g(a) for a in key)

    def points(self, key: Hashable) -> frozenset[int]:
        return frozenset(key)

    def __str__(self):
        short = {"equality": "eq", "projection": "proj", "same_set": "set", "total": "total"}[self.kind]
        tail = ":" + ",".join(map(str, self.coords)) if self.kind == "projection" else ""
        return f"{short}:{self.arity}{tail}"


class PermRep:
    """A permutation representation: ``pi(g) e_k = e_{act(g, k)}``."""

    structure: Structure

    def act(self, g, key: Hashable) -> Hashable:
        raise NotImplementedError

    def points(self, key: Hashable) -> frozenset[int]:
        """Universe elements a basis index depends on."""
        raise NotImplementedError


@dataclass(frozen=True)
class QuasiRegular(PermRep):
    """``l2`` of the classes of a relation on tuples."""

    structure: Structure
    relation: Relation

    def act(self, g, key):
        return self.relation.act(g, key)

    def points(self, key):
        return self.relation.points(key)


@dataclass(frozen=True)
class Trivial(PermRep):
    structure: Structure

    def act(self, g, key):
        return key

    def points(self, key):
        return frozenset()


@dataclass(frozen=True)
class DirectSum(PermRep):
    parts: tuple[PermRep, ...]

    @property
    def structure(self):
        return self.parts[0].structure

    def act(self, g, key):
        i, k = key
        return (i, self.parts[i].act(g, k))

    def points(self, key):
        i, k = key
        return self.parts[i].points(k)


@dataclass(frozen=True)
class Tensor(PermRep):
    left: PermRep
    right: PermRep

    @property
    def structure(self):
        return self.left.structure

    def act(self, g, key):
        return (self.left.act(g, key[0]), self.right.act(g, key[1]))

    def points(self, key):
        return self.left.points(key[0]) | self.right.points(key[1])


# --- vectors ----------------------------------------------------------------------

@dataclass(frozen=True)
class Vec:
    """Finitely supported vector; zero coordinates are dropped."""

    coords: Mapping[Hashable, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coords", {k: v for k, v in dict(self.coords).items() if v != 0})

    @classmethod
    def basis(cls, key: Hashable) -> "Vec":
        return cls({key: Fraction(1)})

    @property
    def support(self) -> frozenset:
        return frozenset(self.coords)

    def inner(self, other: "Vec"):
        a, b = (self, other) if len(self.coords) <= len(other.coords) else (other, self)
        return exact_sum(v * b.coords[k] for k, v in a.coords.items() if k in b.coords)

    def norm2(self):
        return exact_sum(v * v for v in self.coords.values())

    def __add__(self, other: "Vec") -> "Vec":
        out = dict(self.coords)
        for k, v in other.coords.items():
            out[k] = out.get(k, 0) + v
        return Vec(out)

    def __sub__(self, other: "Vec") -> "Vec":
        return self + other.scale(-1)

    def scale(self, s) -> "Vec":
        return Vec({k: s * v for k, v in self.coords.items()})

    def transform(self, rep: PermRep, g) -> "Vec":
        """``pi(g) self``."""
        return Vec({rep.act(g, k): v for k, v in self.coords.items()})

    def tagged(self, i: int) -> "Vec":
        return Vec({(i, k): v for k, v in self.coords.items()})

    def __eq__(self, other):
        return isinstance(other, Vec) and self.coords == other.coords

    def __hash__(self):
        return hash(frozenset(self.coords.items()))


def exact_sum(values: Iterable) -> Fraction | float:
    """Sum of rationals over a common denominator (much faster than chained ``+``)."""
    values = list(values)
    if any(isinstance(v, float) for v in values):
        return math.fsum(values)
    values = [Fraction(v) for v in values]
    if not values:
        return Fraction(0)
    den = math.lcm(*(v.denominator for v in values))
    return Fraction(sum(v.numerator * (den // v.denominator) for v in values), den)


def direct_sum(*vs: Vec) -> Vec:
    out: dict = {}
    for i, v in enumerate(vs):
        out.update(v.tagged(i).coords)
    return Vec(out)


def tensor(v: Vec, w: Vec) -> Vec:
    return Vec({(a, b): x * y for a, x in v.coords.items() for b, y in w.coords.items()})


# --- matrix coefficients ---------------------------------------------------------

@dataclass(frozen=True)
class MatrixCoefficient:
    """``g -> <v, pi(g) w>``."""

    rep: PermRep
    v: Vec
    w: Vec
    label: str = ""

    def __call__(self, g):
        return self.evaluate(g)

    def evaluate(self, g):
        total = []
        for k, x in self.w.coords.items():
            y = self.v.coords.get(self.rep.act(g, k))
            if y is not None:
                total.append(x * y)
        return exact_sum(total)

    def norm_bound2(self):
        """``(|v| |w|)^2``, the Cauchy-Schwarz bound on ``|f|^2``."""
        return self.v.norm2() * self.w.norm2()

    @property
    def structure(self) -> Structure:
        return self.rep.structure


def eq_rel_coefficient(S: Structure, phi: Relation | str, a: Sequence[int], b: Sequence[int]) -> MatrixCoefficient:
    """``g -> [ [a] = g[b] ]`` for the classes of ``phi``."""
    if isinstance(phi, str):
        phi = Relation.parse(phi)
    if len(a) != phi.arity or len(b) != phi.arity:
        raise ValueError(f"{phi} needs {phi.arity}-tuples")
    rep = QuasiRegular(S, phi)
    return MatrixCoefficient(rep, Vec.basis(phi.key(a)), Vec.basis(phi.key(b)),
                             label=f"[{tuple(a)} ~{phi} g{tuple(b)}]")


def vanishing_coefficient(S: Structure, F: Mapping[tuple, Fraction] | Callable, a: Sequence[int],
                          support: Iterable[tuple] | None = None) -> MatrixCoefficient:
    """``g -> F(g a)`` for a finitely supported ``F`` on tuples.

    ``F`` is a mapping from tuples to scalars, or a callable together with
    the finite ``support`` it is truncated to.
    """
    a = tuple(a)
    if callable(F) and not isinstance(F, Mapping):
        if support is None:
            raise ValueError("a callable F needs an explicit finite support")
        F = {tuple(t): F(tuple(t)) for t in support}
    rep = QuasiRegular(S, Relation("equality", len(a)))
    return MatrixCoefficient(rep, Vec({tuple(t): v for t, v in F.items()}), Vec.basis(a),
                             label=f"F(g{a})")


def constant_one(S: Structure) -> MatrixCoefficient:
    return MatrixCoefficient(Trivial(S), Vec.basis(()), Vec.basis(()), label="1")


def negation(m: MatrixCoefficient) -> MatrixCoefficient:
    """``1 - m`` as ``<v + e, (pi + 1)(-w + e)>``."""
    rep = DirectSum((m.rep, Trivial(m.structure)))
    one = Vec.basis(())
    return MatrixCoefficient(rep, direct_sum(m.v, one), direct_sum(m.w.scale(-1), one),
                             label=f"not {m.label}")


def conjunction(m0: MatrixCoefficient, m1: MatrixCoefficient) -> MatrixCoefficient:
    """``m0 * m1`` on the tensor product."""
    return MatrixCoefficient(Tensor(m0.rep, m1.rep), tensor(m0.v, m1.v), tensor(m0.w, m1.w),
                             label=f"({m0.label} and {m1.label})")


def coefficient_sum(ms: Sequence[MatrixCoefficient]) -> MatrixCoefficient:
    if not ms:
        raise ValueError("empty sum")
    if len(ms) == 1:
        return ms[0]
    rep = DirectSum(tuple(m.rep for m in ms))
    return MatrixCoefficient(rep, direct_sum(*(m.v for m in ms)), direct_sum(*(m.w for m in ms)),
                             label=" + ".join(m.label for m in ms))


def zero_coefficient(S: Structure) -> MatrixCoefficient:
    return MatrixCoefficient(Trivial(S), Vec(), Vec(), label="0")


def boolean_reconstruct(sample: Sequence, f_values: Sequence[int], approx: Sequence[MatrixCoefficient],
                        weights: Sequence | None = None) -> MatrixCoefficient:
    """Rebuild a {0,1}-valued ``f`` as a Boolean combination of the ``approx`` coefficients.

    On the sample ``f`` is a function of the pattern of values of the
    ``approx``; patterns never seen are decided by the threshold
    ``sum(weights * pattern) > 1/2`` when weights are given, else by 0.
    The result is the sum over accepted patterns of the matching minterm.
    """
    if len(sample) != len(f_values):
        raise ValueError("sample and values differ in length")
    if not approx:
        raise ValueError("need at least one approximating coefficient")
    S = approx[0].structure
    k = len(approx)
    table: dict[tuple, int] = {}
    for g, fv in zip(sample, f_values):
        if fv not in (0, 1):
            raise ValueError(f"target value {fv} is not in {{0, 1}}")
        pat = tuple(m(g) for m in approx)
        if any(x not in (0, 1) for x in pat):
            raise ValueError("approximating coefficients must be {0,1}-valued")
        if table.setdefault(pat, fv) != fv:
            raise ApproximationTooCoarse(f"pattern {pat} carries both values of f")
    truth = {}
    for pat in itertools.product((0, 1), repeat=k):
        if pat in table:
            truth[pat] = table[pat]
        elif weights is not None:
            truth[pat] = int(exact_sum(Fraction(w) * x for w, x in zip(weights, pat)) > Fraction(1, 2))
        else:
            truth[pat] = 0
    return _from_truth_table(S, approx, truth)


def _from_truth_table(S: Structure, ms: Sequence[MatrixCoefficient], truth: Mapping[tuple, int]) -> MatrixCoefficient:
    ones = [p for p, v in truth.items() if v]
    if not ones:
        return zero_coefficient(S)
    if len(ones) == len(truth):
        return constant_one(S)
    # a single literal or conjunction of literals gets its direct construction
    for i in range(len(ms)):
        if all(v == p[i] for p, v in truth.items()):
            return ms[i]
        if all(v == 1 - p[i] for p, v in truth.items()):
            return negation(ms[i])
    terms = []
    for pat in sorted(ones):
        term = None
        for m, bit in zip(ms, pat):
            lit = m if bit else negation(m)
            term = lit if term is None else conjunction(term, lit)
        terms.append(term)
    return coefficient_sum(terms)


# --- indiscernible sequences -----------------------------------------------------

@dataclass
class IndiscernibleSample:
    vectors: list[list[Fraction]]
    r2: Fraction
    c: Fraction

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence]) -> "IndiscernibleSample":
        """Read ``r2`` and ``c`` off the vectors (the invariants are checked later)."""
        vectors = [[Fraction(x) for x in v] for v in vectors]
        if not vectors:
            raise NotIndiscernible("empty sample")
        r2 = _dot(vectors[0], vectors[0])
        c = _dot(vectors[0], vectors[1]) if len(vectors) > 1 else r2
        return cls(vectors, r2, c)


@dataclass
class Decomposition:
    w_bar: list[Fraction]
    predicted_norm2: Fraction
    norm2: Fraction
    residual_gram: list[list[Fraction]]
    expected_gram: list[list[Fraction]]

    @property
    def holds(self) -> bool:
        return self.norm2 == self.predicted_norm2 and self.residual_gram == self.expected_gram


def _dot(u: Sequence, v: Sequence):
    return exact_sum(x * y for x, y in zip(u, v) if x and y)


def indiscernible_decompose(s: IndiscernibleSample) -> Decomposition:
    """Mean vector and residuals of a sequence with constant norms and inner products."""
    n = len(s.vectors)
    if n == 0:
        raise NotIndiscernible("empty sample")
    dim = len(s.vectors[0])
    if any(len(v) != dim for v in s.vectors):
        raise NotIndiscernible("vectors live in different dimensions")
    gram = [[_dot(u, v) for v in s.vectors] for u in s.vectors]
    for i in range(n):
        for j in range(n):
            want = s.r2 if i == j else s.c
            if gram[i][j] != want:
                raise NotIndiscernible(f"<w_{i}, w_{j}> = {gram[i][j]}, expected {want}")
    if s.c > s.r2:
        raise NotIndiscernible("pairwise inner product exceeds the common norm")
    w_bar = [exact_sum(v[d] for v in s.vectors) / n for d in range(dim)]
    residuals = [[x - m for x, m in zip(v, w_bar)] for v in s.vectors]
    res_gram = [[_dot(u, v) for v in residuals] for u in residuals]
    gap = s.r2 - s.c
    expected = [[gap * ((1 if i == j else 0) - Fraction(1, n)) for j in range(n)] for i in range(n)]
    return Decomposition(w_bar, s.c + gap / n, _dot(w_bar, w_bar), res_gram, expected)


# --- decay along indiscernible sequences ------------------------------------------

@dataclass
class DecayResult:
    n: int
    avg: Fraction | float
    bound: float
    holds: bool
    bound2: Fraction | float = 0

    def to_json(self) -> dict:
        return {"n": self.n, "avg": _fmt(self.avg), "bound": self.bound, "holds": self.holds}


def _fmt(x):
    return f"{x.numerator}/{x.denominator}" if isinstance(x, Fraction) else x


def check_indiscernible(chunks: Sequence[EmbeddingChunk], a: Sequence[int], prefix: int = 40) -> None:
    """Raise unless the tuples ``chunk_i(a)`` look indiscernible.

    All pairs and triples from the first ``prefix`` chunks are compared by
    qf-type, and ``chunk_i(a)`` must not be constant.
    """
    if not chunks:
        return
    S = chunks[0].structure
    rows = [tuple(ch(x) for x in a) for ch in chunks[:prefix]]
    if len(rows) > 1 and rows[0] == rows[1]:
        raise SequenceNotIndiscernible("the sequence chunk_i(a) is constant")
    for r in (1, 2, 3):
        types = {qf_type(S, sum((rows[i] for i in idx), ())) for idx in itertools.combinations(range(len(rows)), r)}
        if len(types) > 1:
            raise SequenceNotIndiscernible(f"{r}-subsequences realize {len(types)} types")


def decay_check(f: MatrixCoefficient, chunks: Sequence[EmbeddingChunk], a: Sequence[int], n: int,
                mode: str = "exact", tolerance: float = 1e-9) -> DecayResult:
    """Compare ``|mean_{i<n} f(chunk_i)|`` with ``|v| |w| / sqrt(n)``.

    Exact mode squares both sides so no square root is ever taken.
    """
    if n < 1 or n > len(chunks):
        raise ValueError(f"need 1 <= n <= {len(chunks)}")
    check_indiscernible(chunks, a)
    values = [f(GroupElement.from_chunk(ch)) for ch in chunks[:n]]
    total = exact_sum(values)
    bound2 = f.norm_bound2()
    if mode == "exact":
        avg = abs(Fraction(total) / n)
        holds = avg * avg * n <= bound2
    else:
        avg = abs(float(total) / n)
        holds = avg <= math.sqrt(float(bound2)) / math.sqrt(n) + tolerance
    return DecayResult(n, avg, math.sqrt(float(bound2)) / math.sqrt(n), holds, bound2)


def decay_sweep(values: Sequence[Fraction], bound2: Fraction) -> list[bool]:
    """``[ (sum_{i<n} values_i / n)^2 * n <= bound2  for n = 1..len(values) ]``, exactly.

    Prefix sums are kept as integers over one common denominator, so the
    whole sweep costs about as much as a single long sum.
    """
    values = [Fraction(v) for v in values]
    bound2 = Fraction(bound2)
    den = math.lcm(*(v.denominator for v in values)) if values else 1
    p, q = bound2.numerator, bound2.denominator
    out = []
    acc = 0
    for n, v in enumerate(values, start=1):
        acc += v.numerator * (den // v.denominator)
        out.append(q * acc * acc <= n * den * den * p)
    return out


def pure_set_chunks(count: int, start: int = 0) -> list[EmbeddingChunk]:
    """``chunk_i(0) = start + i`` on the pure set."""
    from .structures import PURE_SET
    return [EmbeddingChunk(PURE_SET, (0,), (start + i,)) for i in range(count)]


# --- inner-product census --------------------------------------------------------

@dataclass
class Census:
    values: set
    double_cosets: int
    window_double_cosets: int
    holds: bool

    def to_json(self) -> dict:
        return {"values": sorted(_fmt(Fraction(v)) if not isinstance(v, float) else v for v in self.values),
                "double_cosets": self.double_cosets, "window_double_cosets": self.window_double_cosets,
                "holds": self.holds}


def double_coset_count(S: Structure, c: Sequence[int]) -> int:
    """``|V\\G/V|`` for ``V`` the pointwise stabilizer of ``c``.

    By homogeneity this is the number of types of pairs ``(c, c')`` with
    ``c'`` of the same type as ``c``.
    """
    m = len(c)
    tc = qf_type(S, c)
    return sum(1 for t in abstract_types(S, 2 * m)
               if t.restrict(range(m)) == tc and t.restrict(range(m, 2 * m)) == tc)


def window_double_cosets(S: Structure, c: Sequence[int], window: int) -> int:
    """The same count by enumerating ``c'`` in the first ``window`` elements."""
    c = tuple(c)
    return len({qf_type(S, c + img) for img in itertools.product(range(window), repeat=len(c))
                if same_type(S, c, img)})


def fixes(rep: PermRep, eta: Vec, g) -> bool:
    return eta.transform(rep, g) == eta


def check_eta_fixed(rep: PermRep, eta: Vec, c: Sequence[int], sample: Sequence) -> None:
    """Raise ``EtaNotFixed`` unless the stabilizer of ``c`` fixes ``eta``.

    Structurally, every basis index in the support must depend only on
    points of ``c`` (the stabilizer moves everything else); on top of that
    every sample element that fixes ``c`` must fix ``eta``.
    """
    cset = set(c)
    for k in eta.support:
        if not rep.points(k) <= cset:
            raise EtaNotFixed(f"basis index {k!r} uses points outside {sorted(cset)}")
    for g in sample:
        if all(g(x) == x for x in c) and not fixes(rep, eta, g):
            raise EtaNotFixed(f"{g} fixes {tuple(c)} but moves eta")


def inner_value_census(rep: PermRep, eta: Vec, c: Sequence[int], sample: Sequence,
                       window: int | None = None) -> Census:
    """Values of ``<pi(g1) eta, pi(g2) eta>`` against the number of double cosets."""
    S = rep.structure
    check_eta_fixed(rep, eta, c, sample)
    moved = [eta.transform(rep, g) for g in sample]
    # pairs sharing no basis index contribute 0; the rest are found through
    # an index from basis keys to the vectors that use them
    users: dict[Hashable, list[int]] = {}
    for i, u in enumerate(moved):
        for k in u.coords:
            users.setdefault(k, []).append(i)
    sums: dict[tuple[int, int], list] = {}
    for k, idx in users.items():
        for i in idx:
            for j in idx:
                sums.setdefault((i, j), []).append(moved[i].coords[k] * moved[j].coords[k])
    values = {exact_sum(v) for v in sums.values()}
    if len(sums) < len(moved) ** 2:
        values.add(0)
    count = double_coset_count(S, c)
    wcount = window_double_cosets(S, c, window) if window else count
    return Census(values, count, wcount, len(values) <= count)
