"""Bi-embedding classes [x, y] and their semigroup calculus.

A class is presented by two embedding chunks on a common finite support.
For the bundled structures the weakly almost periodic functions are
generated by the equality functions ``g -> (a = g b)``, so a class is
determined by which support points get identified:

    matching(x, y) = {(a, b) : x(a) = y(b)}

and that is the equality used here.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence

import numpy as np

from .semigroup import PartialIso, all_partial_injections
from .structures import (EmbeddingChunk, NotTypePreserving, Structure, abstract_types, acl,
                         extend_to, free_amalgam, qf_type, realize, WitnessNotFound)


class RealignmentFailed(ValueError):
    pass


class NotBijectiveOnSupport(ValueError):
    pass


def is_independent(S: Structure, A: Iterable[int], C: Iterable[int], B: Iterable[int]) -> bool:
    """``A`` independent from ``B`` over ``C``: acl(A) & acl(B) <= acl(C)."""
    return acl(S, A) & acl(S, B) <= acl(S, C)


def stable_signature(t, B) -> tuple:
    """Equality pattern of the tuple ``t`` against the parameter set ``B``."""
    B = set(B)
    return tuple(a if a in B else None for a in t)


def same_stable_type(t1, t2, B) -> bool:
    return len(t1) == len(t2) and stable_signature(t1, B) == stable_signature(t2, B)


class WapClass:
    """The class of a pair of embedding chunks with a common support."""

    __slots__ = ("x", "y", "matching")

    def __init__(self, x: EmbeddingChunk, y: EmbeddingChunk):
        if x.structure != y.structure:
            raise ValueError("chunks live on different structures")
        if x.support != y.support:
            raise ValueError("chunks must share their support")
        self.x = x
        self.y = y
        pos = {img: a for a, img in x.items()}
        self.matching = frozenset((pos[img], b) for b, img in y.items() if img in pos)

    @property
    def structure(self) -> Structure:
        return self.x.structure

    @property
    def support(self) -> tuple[int, ...]:
        return self.x.support

    @classmethod
    def from_partial_map(cls, S: Structure, support: Iterable[int], pm: PartialIso) -> "WapClass":
        """Canonical representative of the class whose partial map is ``pm``.

        ``x`` is the identity on the support; ``y`` agrees with ``pm`` where
        defined and sends the remaining points to fresh elements.
        """
        support = tuple(sorted(set(support)))
        if not pm.domain <= set(support) or not pm.range <= set(support):
            raise ValueError("partial map must live inside the support")
        rest = [b for b in support if b not in pm]
        y = extend_to(S, pm, rest, avoid=support)
        return cls(EmbeddingChunk.identity(S, support), EmbeddingChunk.from_map(S, y))

    @classmethod
    def of(cls, S: Structure, x: dict, y: dict) -> "WapClass":
        return cls(EmbeddingChunk.from_map(S, x), EmbeddingChunk.from_map(S, y))

    def __eq__(self, other):
        if not isinstance(other, WapClass):
            return NotImplemented
        return (self.structure == other.structure and self.support == other.support
                and self.matching == other.matching)

    def __hash__(self):
        return hash((self.structure, self.support, self.matching))

    def __repr__(self):
        m = ", ".join(f"{a}~{b}" for a, b in sorted(self.matching))
        return f"WapClass(support={self.support}, matching={{{m}}})"

    def __mul__(self, other: "WapClass") -> "WapClass":
        return wap_product(self, other)

    def to_json(self) -> dict:
        return {"support": list(self.support), "x": list(self.x.images), "y": list(self.y.images),
                "matching": [list(p) for p in sorted(self.matching)]}


def rechunk(p: WapClass, support: Iterable[int]) -> WapClass:
    """Grow both chunks to a larger support without creating new matches."""
    support = sorted(set(support) | set(p.support))
    S = p.structure
    new = [a for a in support if a not in p.support]
    if not new:
        return p
    x = extend_to(S, p.x.as_dict(), new, avoid=p.x.image | p.y.image)
    y = extend_to(S, p.y.as_dict(), new, avoid=set(x.values()) | p.y.image)
    return WapClass.of(S, x, y)


def normalize(p: WapClass, y_first: bool = False) -> WapClass:
    """Same class, moved by an automorphism onto the least realization of its joint type.

    With ``y_first`` the second chunk gets the smallest elements.  If the
    Rado witness search gives up, ``p`` is returned as it is.
    """
    S = p.structure
    n = len(p.support)
    first, second = (p.y, p.x) if y_first else (p.x, p.y)
    try:
        r = realize(S, qf_type(S, first.images + second.images))
    except WitnessNotFound:
        return p
    a = EmbeddingChunk(S, p.support, r[:n])
    b = EmbeddingChunk(S, p.support, r[n:])
    return WapClass(b, a) if y_first else WapClass(a, b)


def wap_product(p: WapClass, q: WapClass) -> WapClass:
    """``[x, y][y, z] = [x, z]`` with ``z`` moved to be independent from ``x`` over ``y``.

    Inputs are first moved onto small elements.  Only the class matters,
    and in the Rado graph large elements leave later witness searches with
    nowhere to go.
    """
    S = p.structure
    if q.structure != S:
        raise ValueError("classes live on different structures")
    if p.support != q.support:
        common = set(p.support) | set(q.support)
        p, q = rechunk(p, common), rechunk(q, common)
    p = normalize(p, y_first=True)
    x, y = p.x, p.y
    # h maps q's first chunk onto y; push q's second chunk along it
    h = {q.x(s): y(s) for s in q.support}
    try:
        h = extend_to(S, h, q.y.images)
    except NotTypePreserving as err:
        raise RealignmentFailed(str(err)) from err
    z = EmbeddingChunk(S, q.support, tuple(h[i] for i in q.y.images))
    z = free_amalgam(S, z, y.image, x.image | y.image)
    return normalize(WapClass(x, z))


def wap_star(p: WapClass) -> WapClass:
    return WapClass(p.y, p.x)


def g_action(g: PartialIso, p: WapClass) -> WapClass:
    """``g[x, y] = [x g^-1, y]`` for ``g`` permuting the support."""
    support = set(p.support)
    if g.domain != support or g.range != support:
        raise NotBijectiveOnSupport(f"{g} is not a bijection of {sorted(support)}")
    ginv = {b: a for a, b in g.items()}
    return WapClass(EmbeddingChunk.from_map(p.structure, {a: p.x(ginv[a]) for a in p.support}), p.y)


def _meet(p: WapClass) -> frozenset[int]:
    return p.x.image & p.y.image


def is_idempotent_mt(p: WapClass) -> bool:
    C = _meet(p)
    return (same_stable_type(p.x.images, p.y.images, C)
            and is_independent(p.structure, p.x.image, C, p.y.image))


def is_regular_mt(p: WapClass) -> bool:
    return is_independent(p.structure, p.x.image, _meet(p), p.y.image)


def to_partial_map(p: WapClass) -> PartialIso:
    """``x^-1 o y``: sends ``b`` to ``a`` whenever ``x(a) = y(b)``."""
    return PartialIso(p.structure, {b: a for a, b in p.matching})


def canonical_supports(S: Structure, size: int) -> list[tuple[int, ...]]:
    """One least-witness support per orbit of injective ``size``-tuples."""
    out = []
    for t in abstract_types(S, size):
        if t.blocks == size:
            out.append(tuple(sorted(set(realize(S, t)))))
    return sorted(set(out))


def classes_on(S: Structure, support: Iterable[int]) -> list[WapClass]:
    """Every class with the given support, one canonical representative each."""
    support = tuple(sorted(set(support)))
    return [WapClass.from_partial_map(S, support, pm) for pm in all_partial_injections(S, support)]


def representatives(S: Structure, support: Iterable[int], window: Iterable[int]) -> Iterator[WapClass]:
    """All pairs of chunks on ``support`` with images inside ``window``."""
    support = tuple(sorted(set(support)))
    window = sorted(set(window))
    chunks = []
    for img in itertools.permutations(window, len(support)):
        try:
            chunks.append(EmbeddingChunk(S, support, img))
        except NotTypePreserving:
            pass
    for x in chunks:
        for y in chunks:
            yield WapClass(x, y)


# --- independence axioms --------------------------------------------------------

def _members(mask: int, window: Sequence[int]) -> tuple[int, ...]:
    return tuple(w for i, w in enumerate(window) if mask >> i & 1)


def independence_table(S: Structure, window: Sequence[int]) -> np.ndarray:
    """``ind[A, C, B]`` over all subsets of the window, sets coded as bitmasks."""
    window = list(window)
    n = 1 << len(window)
    sets = [_members(m, window) for m in range(n)]
    ind = np.zeros((n, n, n), dtype=bool)
    for a in range(n):
        for c in range(n):
            for b in range(n):
                ind[a, c, b] = is_independent(S, sets[a], sets[c], sets[b])
    return ind


def check_independence_axioms(S: Structure, window: Sequence[int] = range(6)) -> dict[str, bool]:
    """Test every clause of the independence calculus on all subsets of ``window``.

    Sets stand in for tuples except under stationarity, where injective
    tuples of length at most 2 are used so that equality patterns mean
    something.
    """
    window = list(window)
    k = len(window)
    n = 1 << k
    sets = [_members(m, window) for m in range(n)]
    ind = independence_table(S, window)
    masks = np.arange(n)
    out = {}

    # invariance under moving the whole window by a type-preserving map
    moved = extend_to(S, {}, window, avoid=window)
    image = [moved[w] for w in window]
    ok = all(is_independent(S, _members(a, image), _members(c, image), _members(b, image)) == ind[a, c, b]
             for a in range(n) for c in range(n) for b in range(n))
    # ... and under changing x without changing its stable type over yz
    for c in range(n):
        for b in range(n):
            d = c | b
            seen: dict[int, bool] = {}
            for a in range(n):
                if seen.setdefault(a & d, ind[a, c, b]) != ind[a, c, b]:
                    ok = False
    out["invariance"] = ok

    A, C, B = np.meshgrid(masks, masks, masks, indexing="ij")
    cond = (C & ~(A & B)) == 0
    out["symmetry"] = bool(np.all(~cond | (ind[A, C, B] == ind[B, C, A])))

    lhs_ok = True
    for w in range(n):
        lhs = ind[A, C, B | w]
        rhs = ind[A, C | B, w] & ind[A, C, B]
        lhs_ok &= bool(np.all(lhs == rhs))
    out["transitivity"] = lhs_ok

    # existence: one free amalgam per (C, B) serves every A inside the window
    ok = True
    for c in range(n):
        for b in range(n):
            Bs = sets[b]
            z = free_amalgam(S, EmbeddingChunk.identity(S, Bs), sets[c], window)
            if qf_type(S, sets[c] + z.images) != qf_type(S, sets[c] + Bs):
                ok = False
            if not all(is_independent(S, sets[a], sets[c], z.images) for a in range(n)):
                ok = False
    out["existence"] = ok

    tuples = [t for r in range(3) for t in itertools.permutations(window, r)]
    ok = True
    for y in range(n):
        Y = set(sets[y])
        groups: dict[tuple, list] = {}
        for t in tuples:
            groups.setdefault(stable_signature(t, Y), []).append(t)
        for w in range(n):
            YW = Y | set(sets[w])
            for group in groups.values():
                free = {stable_signature(t, YW) for t in group if is_independent(S, t, sets[y], sets[w])}
                if len(free) > 1:
                    ok = False
    out["stationarity"] = ok

    ok = True
    for a in range(n):
        for c in range(n):
            for b in range(n):
                if ind[a, c, b] and not acl(S, sets[a]) & acl(S, sets[b]) <= acl(S, sets[c]):
                    ok = False
    out["non_triviality"] = ok
    return out
