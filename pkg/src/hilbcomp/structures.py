"""Bundled countable homogeneous structures.

Three structures are provided, each living on the natural numbers:

* the pure set (no relations),
* the dense linear order, with ``n`` interpreted as the ``n``-th dyadic
  rational of ``(0, 1)`` in breadth-first order,
* the Rado graph, with ``i ~ j`` iff bit ``min(i, j)`` of ``max(i, j)`` is set.

Everything here is deterministic: whenever a construction needs a new
element, the least natural number that works is used.
"""

from __future__ import annotations

import enum
import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

# linear scan limit before the Rado witness search switches to bit arithmetic
SEARCH_CAP = 1 << 16
# fallback witnesses get at least this many random bits, so each has about
# GENERIC_BITS / 2 neighbours inside the scanned range
GENERIC_BITS = 1 << 18
# a witness above a constraint vertex this large would be unusably large
FALLBACK_BITS = 1 << 20
# failed Rado witness searches tolerated before a multi-point extension gives up
BACKTRACK_BUDGET = 64
# candidates tried per point before backtracking further
BACKTRACK_WIDTH = 6
ORDER_RETRIES = 24


class Kind(enum.Enum):
    PURE_SET = "pure_set"
    DLO = "dlo"
    RADO = "rado"


class WitnessNotFound(RuntimeError):
    """No witness below the internal search cap (the cap is too small)."""


class NotTypePreserving(ValueError):
    pass


@dataclass(frozen=True)
class Structure:
    """Handle on one of the bundled structures.

    ``scale`` is the universe truncation used by enumerations that need a
    finite window; the structure itself is always the full countable one.
    """

    kind: Kind
    scale: int = 16
    tuple_arity_cap: int = 5

    def __post_init__(self):
        if not isinstance(self.kind, Kind):
            object.__setattr__(self, "kind", Kind(self.kind))
        if self.scale < 0 or self.tuple_arity_cap < 0:
            raise ValueError("scale and tuple_arity_cap must be non-negative")

    @classmethod
    def from_config(cls, cfg: Mapping) -> "Structure":
        aliases = {"pure_set": Kind.PURE_SET, "set": Kind.PURE_SET,
                   "dlo": Kind.DLO, "rado": Kind.RADO}
        try:
            kind = aliases[str(cfg["kind"]).lower()]
        except KeyError:
            raise ValueError(f"unknown structure kind in config: {cfg.get('kind')!r}")
        return cls(kind, int(cfg.get("scale", 16)), int(cfg.get("tuple_arity_cap", 5)))

    def window(self, n: int | None = None) -> range:
        return range(self.scale if n is None else n)

    def __str__(self):
        return self.kind.value


PURE_SET = Structure(Kind.PURE_SET)
DLO = Structure(Kind.DLO)
RADO = Structure(Kind.RADO)
BUNDLED = (PURE_SET, DLO, RADO)


def dyadic(n: int) -> Fraction:
    """The ``n``-th dyadic rational in (0, 1): 1/2, 1/4, 3/4, 1/8, 3/8, ..."""
    if n < 0:
        raise ValueError("universe elements are natural numbers")
    m = n + 1
    k = m.bit_length() - 1
    return Fraction(2 * (m - (1 << k)) + 1, 1 << (k + 1))


def dyadic_index(q: Fraction) -> int:
    """Inverse of :func:`dyadic`."""
    q = Fraction(q)
    den = q.denominator
    if not 0 < q < 1 or den & (den - 1):
        raise ValueError(f"{q} is not a dyadic rational in (0, 1)")
    k = den.bit_length() - 2
    return (1 << k) + (q.numerator - 1) // 2 - 1


def edge(i: int, j: int) -> bool:
    if i == j:
        return False
    lo, hi = (i, j) if i < j else (j, i)
    return bool((hi >> lo) & 1)


# --- quantifier-free types -------------------------------------------------

@dataclass(frozen=True, order=True)
class QfType:
    """Canonical orbit invariant of a tuple.

    ``pattern`` labels positions by first occurrence (so ``(3, 3, 5)`` gets
    ``(0, 0, 1)``).  ``relations`` holds the rank of each block for the
    order, or the sorted list of adjacent block pairs for the graph.
    """

    kind: Kind = field(compare=False)
    pattern: tuple
    relations: tuple = ()

    @property
    def arity(self) -> int:
        return len(self.pattern)

    @property
    def blocks(self) -> int:
        return max(self.pattern, default=-1) + 1

    def partition(self) -> list[set[int]]:
        parts = [set() for _ in range(self.blocks)]
        for pos, label in enumerate(self.pattern):
            parts[label].add(pos)
        return parts

    def restrict(self, positions: Sequence[int]) -> "QfType":
        """Type of the sub-tuple at ``positions``."""
        relabel: dict[int, int] = {}
        pattern = []
        for p in positions:
            pattern.append(relabel.setdefault(self.pattern[p], len(relabel)))
        if self.kind is Kind.DLO:
            old = sorted(relabel, key=lambda b: self.relations[b])
            rank = {b: r for r, b in enumerate(old)}
            rel = tuple(rank[b] for b in relabel)
        elif self.kind is Kind.RADO:
            rel = tuple(sorted(
                (min(relabel[u], relabel[v]), max(relabel[u], relabel[v]))
                for u, v in self.relations if u in relabel and v in relabel))
        else:
            rel = ()
        return QfType(self.kind, tuple(pattern), rel)

    def describe(self) -> str:
        if self.kind is Kind.DLO:
            order = sorted(range(self.blocks), key=lambda b: self.relations[b])
            return " < ".join("=".join(f"pos{p}" for p in sorted(self.partition()[b]))
                              for b in order)
        parts = ["{" + ",".join(map(str, sorted(b))) + "}" for b in self.partition()]
        text = " ".join(parts)
        if self.kind is Kind.RADO:
            text += " edges:" + ",".join(f"{u}-{v}" for u, v in self.relations)
        return text


def _pattern(t: Sequence[int]) -> tuple[tuple, list[int]]:
    labels: dict[int, int] = {}
    pat = tuple(labels.setdefault(a, len(labels)) for a in t)
    return pat, list(labels)


def qf_type(S: Structure, t: Sequence[int]) -> QfType:
    pat, reps = _pattern(t)
    if S.kind is Kind.DLO:
        order = sorted(range(len(reps)), key=lambda b: dyadic(reps[b]))
        rank = [0] * len(reps)
        for r, b in enumerate(order):
            rank[b] = r
        return QfType(S.kind, pat, tuple(rank))
    if S.kind is Kind.RADO:
        rel = tuple((u, v) for u, v in itertools.combinations(range(len(reps)), 2)
                    if edge(reps[u], reps[v]))
        return QfType(S.kind, pat, rel)
    return QfType(S.kind, pat, ())


def same_type(S: Structure, t1: Sequence[int], t2: Sequence[int]) -> bool:
    return len(t1) == len(t2) and qf_type(S, t1) == qf_type(S, t2)


def _restricted_growth(n: int) -> Iterator[tuple]:
    """Set partitions of ``range(n)`` as first-occurrence label tuples."""
    def rec(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for label in range(top + 2):
            prefix.append(label)
            yield from rec(prefix, max(top, label))
            prefix.pop()
    yield from rec([], -1)


def abstract_types(S: Structure, n: int) -> Iterator[QfType]:
    """Every qf-type of an ``n``-tuple, generated without touching the universe."""
    for pat in _restricted_growth(n):
        k = max(pat, default=-1) + 1
        if S.kind is Kind.DLO:
            for perm in itertools.permutations(range(k)):
                yield QfType(S.kind, pat, perm)
        elif S.kind is Kind.RADO:
            pairs = list(itertools.combinations(range(k), 2))
            for bits in range(1 << len(pairs)):
                yield QfType(S.kind, pat,
                             tuple(p for i, p in enumerate(pairs) if bits >> i & 1))
        else:
            yield QfType(S.kind, pat, ())


def _stirling2(n: int, k: int) -> int:
    return sum((-1) ** (k - j) * math.comb(k, j) * j ** n for j in range(k + 1)) // math.factorial(k)


def orbit_count(S: Structure, n: int) -> int:
    """Number of orbits of Aut(S) on ``n``-tuples."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if S.kind is Kind.PURE_SET:
        weight = lambda k: 1
    elif S.kind is Kind.DLO:
        weight = math.factorial
    else:
        weight = lambda k: 2 ** (k * (k - 1) // 2)
    if n == 0:
        return 1
    return sum(_stirling2(n, k) * weight(k) for k in range(1, n + 1))


def realize(S: Structure, t: QfType) -> tuple[int, ...]:
    """Least-witness realization of an abstract type (used as an oracle)."""
    def step(b, reps, skip):
        want = t.restrict([t.pattern.index(c) for c in range(b + 1)])
        return _least_extension(S, reps, reps, None, avoid=skip, target=want)

    reps = _backtrack(t.blocks, step)
    return tuple(reps[label] for label in t.pattern)


def _backtrack(n: int, step, budget: int = BACKTRACK_BUDGET) -> list[int]:
    """Choose ``n`` witnesses in turn, ``step(i, chosen, skip)`` giving the next.

    Only the Rado graph can run out of witnesses; when it does, the previous
    choice is retried with its old value skipped.  For the other structures
    this is plain greedy search.
    """
    left = [budget]

    def rec(chosen):
        i = len(chosen)
        if i == n:
            return chosen
        skip: set[int] = set()
        for _ in range(BACKTRACK_WIDTH):
            if left[0] <= 0:
                break
            try:
                b = step(i, chosen, skip)
            except WitnessNotFound:
                left[0] -= 1
                return None
            if b in skip:
                return None
            done = rec(chosen + [b])
            if done is not None:
                return done
            skip.add(b)
        return None

    out = rec([])
    if out is None:
        raise WitnessNotFound(f"no witnesses for a {n}-step extension")
    return out


# --- witnesses ---------------------------------------------------------------

def _edge_row(u: int, n: int) -> np.ndarray:
    """``edge(u, v)`` for ``v < n`` as a boolean array."""
    v = np.arange(n, dtype=np.int64)
    row = np.zeros(n, dtype=bool)
    lo = min(u, n)
    # below u: the bits of u
    nbytes = (lo + 7) // 8
    if nbytes:
        low = (u & ((1 << lo) - 1)).to_bytes(nbytes, "little")
        row[:lo] = np.unpackbits(np.frombuffer(low, dtype=np.uint8), bitorder="little")[:lo]
    # above u: bit u of v (only reachable while u < 63)
    if u + 1 < n:
        row[u + 1:] = ((v[u + 1:] >> u) & 1).astype(bool) if u < 63 else False
    return row


def _rado_least(constraints: Sequence[tuple[int, bool]], avoid: Iterable[int],
                cap: int = SEARCH_CAP) -> int:
    """Least witness below ``cap``, else a canonical generic witness.

    In the BIT graph a vertex ``u`` has neighbours above it only from
    ``2**u`` on, and a vertex ``v`` has at most ``v.bit_length()``
    neighbours below it.  The least witness past the cap would be a sparse
    number that starves every later search, so the fallback is:

    1. the least witness in ``[cap, L)``, ``L`` the shortest bit length of a
       constraint vertex past the cap (only possible when there is one);
       if all such vertices must be non-neighbours, any number past their
       bit lengths but below them works, and the least one with the right
       low bits is taken;
    2. otherwise a vertex above every constraint, with ``GENERIC_BITS``
       bits, the free ones filled by a PRNG seeded from the constraints.
       Such a vertex is adjacent to about half of everything below
       ``GENERIC_BITS``, which keeps step 1 alive for later searches.
    """
    avoid = set(avoid) | {u for u, _ in constraints}
    small = sorted(c for c in constraints if c[0] < cap)
    large = [c for c in constraints if c[0] >= cap]
    order = small + large
    head = min(cap, 256)
    for v in range(head):
        if v not in avoid and all(edge(u, v) == want for u, want in order):
            return v
    if cap > head:
        ok = np.ones(cap, dtype=bool)
        ok[:head] = False
        for u, want in order:
            ok &= _edge_row(u, cap) == want
        for v in np.flatnonzero(ok):
            v = int(v)
            if v not in avoid:
                return v
    mask = val = 0
    for u, want in small:
        mask |= 1 << u
        val |= want << u
    if large:
        top = min(u.bit_length() for u, _ in large)
        for v in range(cap, top):
            if (v & mask) == val and v not in avoid and all((u >> v) & 1 == want for u, want in large):
                return v
        if not any(want for _, want in large):
            # past every bit of the large vertices but still far below them
            floor = max(cap, max(u.bit_length() for u, _ in large))
            high = max(floor.bit_length(), max((u for u, _ in small), default=0) + 1)
            v = (1 << high) | val
            while v in avoid:
                high += 1
                v = (1 << high) | val
            return v
    hi = max((u for u, _ in constraints), default=0)
    if hi >= FALLBACK_BITS:
        raise WitnessNotFound(f"no Rado witness found for {len(constraints)} constraints")
    rng = random.Random(hash(tuple(sorted(constraints))))
    bits = max(hi + 2, GENERIC_BITS)
    while True:
        v = (1 << (bits - 1)) | rng.getrandbits(bits - 1)
        for u, want in constraints:
            v = v | (1 << u) if want else v & ~(1 << u)
        if v not in avoid:
            return v


def _least_dyadic_between(lo: Fraction | None, hi: Fraction | None,
                          avoid: set[int]) -> int:
    """Least universe index whose dyadic value lies strictly between lo and hi."""
    lo = Fraction(0) if lo is None else lo
    hi = Fraction(1) if hi is None else hi
    k = 0
    while True:
        scale = 1 << (k + 1)
        m = math.floor(lo * scale) + 1
        if m % 2 == 0:
            m += 1
        while Fraction(m, scale) < hi:
            idx = (1 << k) + (m - 1) // 2 - 1
            if idx not in avoid:
                return idx
            m += 2
        k += 1


def _least_extension(S: Structure, dom: Sequence[int], ran: Sequence[int], a: int | None,
                     avoid: Iterable[int] = (), target: QfType | None = None) -> int:
    """Least ``b`` such that ``ran + (b,)`` realizes the type of ``dom + (a,)``.

    ``b`` is never in ``avoid`` unless ``a`` itself is in ``dom`` (then the
    answer is forced).  ``target`` may replace the pair (dom, a).
    """
    if target is None:
        target = qf_type(S, tuple(dom) + (a,))
    forced = target.pattern[-1]
    if forced in target.pattern[:-1]:
        return ran[target.pattern.index(forced)]
    avoid = set(avoid) | set(ran)
    if S.kind is Kind.PURE_SET:
        b = 0
        while b in avoid:
            b += 1
        return b
    if S.kind is Kind.DLO:
        # rank of the new block among the existing blocks fixes an interval
        new_rank = target.relations[forced]
        lo = hi = None
        for pos, label in enumerate(target.pattern[:-1]):
            r = target.relations[label]
            v = dyadic(ran[pos])
            if r < new_rank and (lo is None or v > lo):
                lo = v
            if r > new_rank and (hi is None or v < hi):
                hi = v
        return _least_dyadic_between(lo, hi, avoid)
    constraints = []
    seen = set()
    for pos, label in enumerate(target.pattern[:-1]):
        if label in seen:
            continue
        seen.add(label)
        pair = (min(label, forced), max(label, forced))
        constraints.append((ran[pos], pair in target.relations))
    return _rado_least(constraints, avoid)


def extend_embedding(S: Structure, p, a: int):
    """One back-and-forth step: extend ``p`` to ``a`` with the least valid image.

    ``p`` may be a :class:`~hilbcomp.semigroup.PartialIso` or a plain mapping;
    the result has the same kind.
    """
    graph = dict(p.items())
    if a in graph:
        raise ValueError(f"{a} is already in the domain")
    dom = list(graph)
    ran = [graph[d] for d in dom]
    if not same_type(S, dom, ran):
        raise NotTypePreserving(f"{graph} is not type-preserving")
    graph[a] = _least_extension(S, dom, ran, a)
    if isinstance(p, Mapping) and not hasattr(p, "structure"):
        return graph
    from .semigroup import PartialIso
    return PartialIso(S, graph)


def extend_to(S: Structure, p, points: Iterable[int], avoid: Iterable[int] = ()) -> dict:
    """Extend a partial iso (as a dict) over ``points``, images avoiding ``avoid``."""
    graph = dict(p.items())
    avoid = set(avoid)
    new = [a for a in dict.fromkeys(points) if a not in graph]
    dom = list(graph)
    ran = [graph[d] for d in dom]

    # least witnesses depend on the order points are placed in; in the Rado
    # graph a bad order can push later points past any feasible size
    orders = itertools.permutations(new)
    if S.kind is Kind.RADO:
        # points tied by edges to fixed vertices are the expensive ones; place them last
        first = tuple(sorted(new, key=lambda a: sum(edge(a, d) for d in dom)))
        orders = itertools.chain([first], (o for o in orders if o != first))
    orders = itertools.islice(orders, ORDER_RETRIES)
    for order in orders:
        def step(i, chosen, skip, order=order):
            return _least_extension(S, dom + list(order[:i]), ran + chosen, order[i], avoid=avoid | skip)
        try:
            graph.update(zip(order, _backtrack(len(order), step)))
            return graph
        except WitnessNotFound:
            if S.kind is not Kind.RADO:
                raise
    raise WitnessNotFound(f"no witnesses for a {len(new)}-step extension in {ORDER_RETRIES} orders")


def acl(S: Structure, A: Iterable[int]) -> frozenset[int]:
    """Algebraic closure; trivial for every bundled structure."""
    return frozenset(A)


def rado_extension_witness(X: Iterable[int], Y: Iterable[int], bound: int | None = None) -> int:
    """Least vertex outside X and Y adjacent to all of X and none of Y.

    The search is exhaustive below ``SEARCH_CAP``; see ``_rado_least`` for
    what happens past it.
    """
    X, Y = set(X), set(Y)
    if X & Y:
        raise ValueError("X and Y must be disjoint")
    if bound is not None and any(v >= bound for v in X | Y):
        raise ValueError(f"vertices must lie below {bound}")
    return _rado_least([(x, True) for x in sorted(X)] + [(y, False) for y in sorted(Y)], ())


# --- embedding fragments -----------------------------------------------------

@dataclass(frozen=True)
class EmbeddingChunk:
    """Finite fragment of a self-embedding: an injective, type-preserving map."""

    structure: Structure
    support: tuple[int, ...]
    images: tuple[int, ...]

    def __post_init__(self):
        pairs = sorted(zip(self.support, self.images))
        object.__setattr__(self, "support", tuple(a for a, _ in pairs))
        object.__setattr__(self, "images", tuple(b for _, b in pairs))
        if len(self.support) != len(self.images):
            raise ValueError("support and images differ in length")
        if len(set(self.support)) != len(self.support) or len(set(self.images)) != len(self.images):
            raise NotTypePreserving("embedding chunks are injective")
        if not same_type(self.structure, self.support, self.images):
            raise NotTypePreserving(f"{dict(pairs)} does not preserve the qf-type")

    @classmethod
    def from_map(cls, S: Structure, mapping: Mapping[int, int]) -> "EmbeddingChunk":
        return cls(S, tuple(mapping), tuple(mapping.values()))

    @classmethod
    def identity(cls, S: Structure, support: Iterable[int]) -> "EmbeddingChunk":
        support = tuple(sorted(set(support)))
        return cls(S, support, support)

    def __call__(self, a: int) -> int:
        return self.images[self.support.index(a)]

    def items(self):
        return zip(self.support, self.images)

    def as_dict(self) -> dict[int, int]:
        return dict(self.items())

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.images)

    def compose_after(self, g: Mapping[int, int]) -> "EmbeddingChunk":
        """The chunk ``self o g`` on ``g``'s preimage of the support."""
        return EmbeddingChunk.from_map(self.structure, {a: self(g[a]) for a in g if g[a] in self.support})


def free_amalgam(S: Structure, x: EmbeddingChunk, C: Iterable[int], B: Iterable[int]) -> EmbeddingChunk:
    """Move ``x`` off ``B`` while fixing ``C`` pointwise.

    Points of ``x`` whose image lies in ``C`` stay put; every other point
    gets the least fresh element outside ``B`` that keeps the qf-type of the
    image together with ``C``.  The result is independent from ``B`` over ``C``.
    """
    C = sorted(set(C))
    graph = extend_to(S, {c: c for c in C}, x.images, avoid=set(B) | set(C))
    return EmbeddingChunk(S, x.support, tuple(graph[i] for i in x.images))
