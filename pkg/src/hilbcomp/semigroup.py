"""Finite partial isomorphisms and the inverse monoid they form."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .structures import PURE_SET, NotTypePreserving, Structure, same_type


class CapExceeded(RuntimeError):
    """Closure enumeration stopped before the semigroup was complete."""

    def __init__(self, message, table=None):
        super().__init__(message)
        self.table = table


class IncompleteTable(ValueError):
    pass


class PartialIso:
    """A finite type-preserving partial bijection of a structure's universe.

    The graph is stored sorted by domain element; equality and hashing use
    that canonical form (the structure is part of the identity too).
    """

    __slots__ = ("structure", "graph", "_map")

    def __init__(self, structure: Structure, graph: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        pairs = sorted(dict(graph).items()) if isinstance(graph, Mapping) else sorted(graph)
        dom = [a for a, _ in pairs]
        ran = [b for _, b in pairs]
        if len(set(dom)) != len(dom) or len(set(ran)) != len(ran):
            raise NotTypePreserving(f"{pairs} is not injective")
        if not same_type(structure, dom, ran):
            raise NotTypePreserving(f"{pairs} does not preserve qf-types in {structure}")
        self.structure = structure
        self.graph = tuple(pairs)
        self._map = dict(pairs)

    @classmethod
    def identity(cls, structure: Structure, points: Iterable[int]) -> "PartialIso":
        return cls(structure, {a: a for a in points})

    @classmethod
    def parse(cls, structure: Structure, text: str) -> "PartialIso":
        """Parse ``"1->2, 3->0"`` (empty text is the empty map)."""
        pairs = []
        for chunk in text.replace(";", ",").split(","):
            chunk = chunk.strip()
            if chunk:
                a, b = chunk.split("->")
                pairs.append((int(a), int(b)))
        return cls(structure, pairs)

    # mapping protocol, enough for dict(p) and p[a]
    def __getitem__(self, a: int) -> int:
        return self._map[a]

    def __contains__(self, a) -> bool:
        return a in self._map

    def __len__(self) -> int:
        return len(self.graph)

    def __iter__(self):
        return iter(self._map)

    def items(self):
        return self._map.items()

    def get(self, a, default=None):
        return self._map.get(a, default)

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(self._map)

    @property
    def range(self) -> frozenset[int]:
        return frozenset(self._map.values())

    def __eq__(self, other):
        if not isinstance(other, PartialIso):
            return NotImplemented
        return self.structure == other.structure and self.graph == other.graph

    def __hash__(self):
        return hash((self.structure, self.graph))

    def sort_key(self):
        return (len(self.graph), self.graph)

    def __repr__(self):
        body = ", ".join(f"{a}->{b}" for a, b in self.graph)
        return f"PartialIso({{{body}}})"

    def __mul__(self, other: "PartialIso") -> "PartialIso":
        return compose(self, other)

    def apply(self, t: Sequence[int]) -> tuple[int, ...]:
        return tuple(self._map[a] for a in t)

    def to_json(self) -> list[str]:
        return [f"{a}->{b}" for a, b in self.graph]


def compose(p: PartialIso, q: PartialIso) -> PartialIso:
    """``p o q``: first ``q``, then ``p``."""
    if p.structure != q.structure:
        raise ValueError("cannot compose maps on different structures")
    return PartialIso(p.structure, {a: p._map[b] for a, b in q.graph if b in p._map})


def star(p: PartialIso) -> PartialIso:
    return PartialIso(p.structure, {b: a for a, b in p.graph})


def is_idempotent(p: PartialIso) -> bool:
    return compose(p, p) == p


def is_partial_identity(p: PartialIso) -> bool:
    return all(a == b for a, b in p.graph)


def is_regular(p: PartialIso) -> bool:
    return compose(compose(p, star(p)), p) == p


def inverse_of(p: PartialIso) -> PartialIso:
    """The unique ``q`` with ``pqp = p`` and ``qpq = q``."""
    q = star(p)
    assert compose(compose(p, q), p) == p and compose(compose(q, p), q) == q
    return q


def all_partial_injections(structure: Structure, points: Iterable[int]) -> list[PartialIso]:
    """Every type-preserving partial bijection among ``points``."""
    points = sorted(set(points))
    out = []

    def rec(i, graph, used):
        if i == len(points):
            try:
                out.append(PartialIso(structure, graph))
            except NotTypePreserving:
                pass
            return
        rec(i + 1, graph, used)
        for b in points:
            if b not in used:
                graph[points[i]] = b
                used.add(b)
                if same_type(structure, list(graph), list(graph.values())):
                    rec(i + 1, graph, used)
                used.discard(b)
                del graph[points[i]]

    rec(0, {}, set())
    return sorted(out, key=PartialIso.sort_key)


@dataclass
class SemigroupTable:
    """A finite semigroup given by its elements and Cayley table.

    ``cayley[i][j]`` is the index of ``elements[i] * elements[j]``.
    ``truncated`` marks an enumeration that hit its cap.
    """

    elements: list
    cayley: list[list[int]]
    generators: list[int] = field(default_factory=list)
    truncated: bool = False
    star_map: list[int] | None = None

    def __len__(self):
        return len(self.elements)

    def index(self, x) -> int:
        return self.elements.index(x)

    def mul(self, i: int, j: int) -> int:
        return self.cayley[i][j]

    def idempotents(self) -> list[int]:
        return [i for i in range(len(self)) if self.cayley[i][i] == i]

    def _require_complete(self):
        if self.truncated:
            raise IncompleteTable("table was truncated by the enumeration cap")


def generate(S: Structure, gens: Sequence[PartialIso], cap: int = 100_000,
             points: Iterable[int] | None = None) -> SemigroupTable:
    """Closure of ``gens`` under composition, with the identity adjoined.

    The identity is taken on ``points`` (default: the structure's window
    together with everything the generators touch).  Elements are returned
    in canonical order (size, then graph) so indices do not depend on the
    order of ``gens``.
    """
    if points is None:
        points = set(S.window())
        for g in gens:
            points |= g.domain | g.range
    one = PartialIso.identity(S, points)
    seen = {one: None}
    frontier = deque([one])
    gens = list(gens)
    for g in gens:
        if g.structure != S:
            raise ValueError("generator on a different structure")
        if g not in seen:
            seen[g] = None
            frontier.append(g)
    truncated = False
    while frontier:
        x = frontier.popleft()
        for g in gens:
            y = compose(x, g)
            if y not in seen:
                if len(seen) >= cap:
                    truncated = True
                    frontier.clear()
                    break
                seen[y] = None
                frontier.append(y)
    elements = sorted(seen, key=PartialIso.sort_key)
    table = _tabulate(elements, [elements.index(g) for g in gens], truncated)
    if truncated:
        raise CapExceeded(f"more than {cap} elements", table)
    return table


def _tabulate(elements: list[PartialIso], generators: list[int], truncated: bool) -> SemigroupTable:
    pos = {x: i for i, x in enumerate(elements)}
    cayley = []
    for x in elements:
        row = []
        for y in elements:
            z = compose(x, y)
            row.append(pos.get(z, -1))
        cayley.append(row)
    star_map = [pos.get(star(x), -1) for x in elements]
    return SemigroupTable(elements, cayley, generators, truncated, star_map)


def symmetric_inverse_monoid(n: int, structure: Structure = PURE_SET) -> SemigroupTable:
    """All partial bijections of ``{0..n-1}`` (type-preserving ones, for other structures)."""
    return _tabulate(all_partial_injections(structure, range(n)), [], False)


def check_inverse_semigroup(T: SemigroupTable) -> dict:
    """Regularity, commuting idempotents and uniqueness of inverses.

    Works on any complete table, not only tables of partial maps.
    """
    T._require_complete()
    n = len(T)
    mul = T.cayley

    def inverses(p):
        return [q for q in range(n) if mul[mul[p][q]][p] == p and mul[mul[q][p]][q] == q]

    regular = all(any(mul[mul[p][q]][p] == p for q in range(n)) for p in range(n))
    idem = T.idempotents()
    commute = all(mul[e][f] == mul[f][e] for e in idem for f in idem)
    unique = all(len(inverses(p)) == 1 for p in range(n))
    return {"regular": regular, "idempotents_commute": commute, "unique_inverses": unique,
            "fact_holds": (regular and commute) == unique}


def idempotents_self_adjoint(T: SemigroupTable) -> bool:
    T._require_complete()
    if T.star_map is None:
        raise ValueError("table carries no involution")
    return all(T.star_map[e] == e for e in T.idempotents())


def left_ideal(T: SemigroupTable, p: int) -> frozenset[int]:
    """``Sp`` inside the table."""
    return frozenset(T.cayley[s][p] for s in range(len(T)))


def summary(T: SemigroupTable) -> dict:
    report = {"elements": len(T), "truncated": T.truncated}
    if not T.truncated:
        report["idempotents"] = len(T.idempotents())
        report.update(check_inverse_semigroup(T))
        if T.star_map is not None:
            report["idempotents_self_adjoint"] = idempotents_self_adjoint(T)
    return report
