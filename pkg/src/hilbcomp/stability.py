"""Order-property ladders and iterated double limits.

A ladder of length ``n`` for ``phi`` is a pair of sequences with
``phi(a_i, b_j)`` exactly when ``i <= j``.  Its existence is the finite
obstruction to exchanging the two iterated limits of ``g -> phi(a, g b)``,
and translating it into group elements makes that failure concrete.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .hilbert import Composite, GroupElement, Identity
from .structures import (Kind, QfType, Structure, dyadic, edge, extend_to, qf_type, rado_extension_witness,
                         realize)


class TailNotStabilized(ValueError):
    """The sampled array has no constant tail; inconclusive, not a counterexample."""


@dataclass(frozen=True)
class Formula:
    """``phi(u, v)`` on ``arity``-tuples: ``equality``, ``order`` (DLO) or ``edge`` (Rado)."""

    structure: Structure
    kind: str
    arity: int = 1

    def __post_init__(self):
        if self.kind == "order" and self.structure.kind is not Kind.DLO:
            raise ValueError("the order formula lives on the dense linear order")
        if self.kind == "edge" and self.structure.kind is not Kind.RADO:
            raise ValueError("the edge formula lives on the Rado graph")
        if self.kind not in ("equality", "order", "edge"):
            raise ValueError(f"unknown formula kind {self.kind!r}")
        if self.kind != "equality" and self.arity != 1:
            raise ValueError(f"{self.kind} is a formula in single variables")

    def __call__(self, u: Sequence[int], v: Sequence[int]) -> int:
        u, v = tuple(u), tuple(v)
        if self.kind == "equality":
            return int(u == v)
        if self.kind == "order":
            return int(dyadic(u[0]) < dyadic(v[0]))
        return int(edge(u[0], v[0]))

    def __str__(self):
        return f"{self.kind}/{self.arity}"


def check_invariance(phi: Formula, pairs: Sequence[tuple], elements: Sequence) -> bool:
    """``phi(g u, g v) = phi(u, v)`` on every sampled pair and element."""
    return all(phi(g.apply(u), g.apply(v)) == phi(u, v) for u, v in pairs for g in elements)


@dataclass
class LadderWitness:
    rows: list[tuple[int, ...]]
    cols: list[tuple[int, ...]]

    @property
    def n(self) -> int:
        return len(self.rows)

    def verify(self, phi: Formula) -> bool:
        return all(phi(a, b) == int(i <= j) for i, a in enumerate(self.rows) for j, b in enumerate(self.cols))

    def to_json(self) -> dict:
        return {"n": self.n, "rows": [list(a) for a in self.rows], "cols": [list(b) for b in self.cols]}


@dataclass
class LadderReport:
    witness: LadderWitness | None
    window: int | None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.witness is not None

    def to_json(self) -> dict:
        out = {"found": self.found, "window": self.window, "nodes": self.nodes}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        else:
            out["certified_none_within_window"] = True
        return out


def ladder_search(phi: Formula, n: int, window: int | None = None) -> LadderReport:
    """Find a ladder of length ``n`` or certify there is none in the window.

    Equality formulas get an exhaustive search in the order
    ``a_0, b_0, a_1, b_1, ...`` with least candidates first.  The order on
    the dense order uses the interleaving of the ``2n`` smallest window
    values, and the Rado edge takes rows ``0..n-1`` and least extension
    witnesses for the columns (no window needed unless one is given).
    """
    if n < 2:
        raise ValueError("ladders have length at least 2")
    if phi.kind == "order":
        if window is None:
            window = 2 * n
        vals = sorted(range(window), key=dyadic)
        if len(vals) < 2 * n:
            return _exhaustive(phi, n, window)
        w = LadderWitness([(vals[2 * i],) for i in range(n)], [(vals[2 * j + 1],) for j in range(n)])
        return LadderReport(w if w.verify(phi) else None, window)
    if phi.kind == "edge":
        # rows are the least vertices; b_j sees a_0..a_j and misses the rest.
        # Choosing all rows first keeps every column small, which keeps the
        # back-and-forth extensions in ladder_to_elements cheap.
        rows = list(range(n))
        cols = [rado_extension_witness(rows[:j + 1], rows[j + 1:]) for j in range(n)]
        w = LadderWitness([(a,) for a in rows], [(b,) for b in cols])
        if window is not None and max(rows + cols) >= window:
            return LadderReport(None, window)
        return LadderReport(w if w.verify(phi) else None, window)
    return _exhaustive(phi, n, 30 if window is None else window)


def _exhaustive(phi: Formula, n: int, window: int) -> LadderReport:
    candidates = list(itertools.product(range(window), repeat=phi.arity))
    rows: list[tuple] = []
    cols: list[tuple] = []
    nodes = 0

    def options(is_row: bool):
        # b_j must equal a_0 under equality, which pins it down
        if phi.kind == "equality" and not is_row:
            return [rows[0]]
        return candidates

    def ok(x, is_row: bool) -> bool:
        if is_row:
            i = len(rows)
            return all(phi(x, b) == int(i <= j) for j, b in enumerate(cols))
        j = len(cols)
        return all(phi(a, x) == int(i <= j) for i, a in enumerate(rows))

    def rec() -> bool:
        nonlocal nodes
        nodes += 1
        if len(cols) == n:
            return True
        is_row = len(rows) == len(cols)
        target = rows if is_row else cols
        for x in options(is_row):
            if ok(x, is_row):
                target.append(x)
                if rec():
                    return True
                target.pop()
        return False

    found = rec()
    return LadderReport(LadderWitness(list(rows), list(cols)) if found else None, window, nodes)


# --- double limits -------------------------------------------------------------------

@dataclass
class DoubleLimits:
    row_then_col: object
    col_then_row: object
    tail: int

    @property
    def agree(self) -> bool:
        return self.row_then_col == self.col_then_row

    def to_json(self) -> dict:
        f = lambda x: f"{x.numerator}/{x.denominator}" if hasattr(x, "denominator") else x
        return {"row_then_col": f(self.row_then_col), "col_then_row": f(self.col_then_row),
                "agree": self.agree, "tail": self.tail}


def _tail_value(seq: Sequence, what: str):
    if len(set(seq)) != 1:
        raise TailNotStabilized(f"{what} is not constant on its tail: {list(seq)}")
    return seq[0]


def limits_of_array(M: Sequence[Sequence], tail: int | None = None) -> DoubleLimits:
    """Iterated limits of a finite array read off constant tails.

    With ``n`` rows, ``lim_i lim_j`` takes rows ``[n/2 - t, n/2)`` and, for
    each, the value on the last ``t`` columns; the outer limit is the common
    value of those.  The other order is symmetric.  Keeping the inner index
    well past the outer one is what makes a finite array mimic ``j >> i``.
    """
    n = len(M)
    m = len(M[0]) if n else 0
    if tail is None:
        tail = max(1, min(n, m) // 4)
    split_r, split_c = n // 2, m // 2
    if split_r < tail or split_c < tail or m - tail < split_r or n - tail < split_c:
        raise TailNotStabilized("array too small for the requested tail")
    inner_rows = [_tail_value([M[i][j] for j in range(m - tail, m)], f"row {i}")
                  for i in range(split_r - tail, split_r)]
    inner_cols = [_tail_value([M[i][j] for i in range(n - tail, n)], f"column {j}")
                  for j in range(split_c - tail, split_c)]
    return DoubleLimits(_tail_value(inner_rows, "row limits"), _tail_value(inner_cols, "column limits"), tail)


def double_limit_table(f: Callable, g_rows: Sequence, h_cols: Sequence, tail: int | None = None) -> DoubleLimits:
    """Iterated limits of ``f(g_i h_j)`` over the sampled array."""
    M = [[f(Composite(g, h)) for h in h_cols] for g in g_rows]
    return limits_of_array(M, tail)


def formula_function(phi: Formula, a: Sequence[int], b: Sequence[int]) -> Callable:
    """``g -> phi(a, g b)``."""
    a, b = tuple(a), tuple(b)
    return lambda g: phi(a, g.apply(b))


def ladder_to_elements(S: Structure, w: LadderWitness) -> tuple[list[GroupElement], list[GroupElement]]:
    """``g_i`` sends ``a_i`` to ``a_0`` and ``h_j`` sends ``b_0`` to ``b_j``.

    Then ``phi(a_0, g_i h_j b_0) = phi(a_i, b_j)`` by invariance.
    """
    a0, b0 = w.rows[0], w.cols[0]
    gs = [GroupElement(S, dict(zip(a, a0))) for a in w.rows]
    hs = [GroupElement(S, dict(zip(b0, b))) for b in w.cols]
    return gs, hs


def disjoint_copies(S: Structure, b: Sequence[int], count: int) -> list[tuple[int, ...]]:
    """``count`` copies of the type of ``b`` with nothing between them.

    In the order the copies sit one above the other; in the graph there are
    no edges across copies.  The configuration is realized by least
    witnesses, placing the first element of every copy before any second
    element (in the BIT graph that keeps the numbers small).
    """
    t = qf_type(S, b)
    k = t.blocks
    # label (c, x) of copy c and block x, realized in block-major order
    order = [(c, x) for x in range(k) for c in range(count)]
    pos = {lab: i for i, lab in enumerate(order)}
    if S.kind is Kind.DLO:
        rel = tuple(t.relations[x] + c * k for c, x in order)
    elif S.kind is Kind.RADO:
        rel = tuple(sorted((min(pos[(c, u)], pos[(c, v)]), max(pos[(c, u)], pos[(c, v)]))
                           for c in range(count) for u, v in t.relations))
    else:
        rel = ()
    flat = realize(S, QfType(S.kind, tuple(range(len(order))), rel))
    return [tuple(flat[pos[(c, x)]] for x in t.pattern) for c in range(count)]


def crafted_arrays(S: Structure, b: Sequence[int], length: int) -> dict[str, tuple[list, list]]:
    """Row and column samples whose arrays ``f(g_i h_j)`` have constant tails.

    ``c_k`` (``-N <= k <= N``) are disjoint copies of the type of ``b``
    with ``c_0 = b``.  Shifting every copy by ``s`` places is a partial
    automorphism, ``h_j`` shifts by ``+j`` and ``g_i`` by ``-i``, so
    ``g_i h_j b = c_{j-i}``.  The identity stands in for one side in the
    other two samples.  Every value is given explicitly; nothing is left to
    lazy extension.
    """
    b = tuple(b)
    N = length
    source = disjoint_copies(S, b, 2 * N + 1)
    # move the middle copy onto b
    flat = [x for block in source for x in block]
    image = extend_to(S, dict(zip(source[N], b)), flat)
    copies = {k: tuple(image[x] for x in source[k + N]) for k in range(-N, N + 1)}

    def shift(s: int) -> GroupElement:
        graph = {}
        for k in range(-N, N + 1):
            if -N <= k + s <= N:
                graph.update(zip(copies[k], copies[k + s]))
        return GroupElement(S, graph)

    rows = [shift(-i) for i in range(length)]
    cols = [shift(j) for j in range(length)]
    ident = [Identity(S) for _ in range(length)]
    return {"shift": (rows, cols), "rows_only": (rows, ident), "cols_only": (ident, cols)}
