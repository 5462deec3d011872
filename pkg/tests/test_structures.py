import itertools
from fractions import Fraction

import pytest

from hilbcomp.semigroup import PartialIso
from hilbcomp.structures import (DLO, PURE_SET, RADO, BUNDLED, EmbeddingChunk, Kind, NotTypePreserving, Structure,
                                 abstract_types, acl, dyadic, dyadic_index, edge, extend_embedding, extend_to,
                                 free_amalgam, orbit_count, qf_type, rado_extension_witness, realize, same_type)


def test_edge_is_symmetric_and_irreflexive():
    for i, j in itertools.product(range(40), repeat=2):
        assert edge(i, j) == edge(j, i)
    assert not any(edge(i, i) for i in range(40))


def test_edge_reads_the_bit_of_the_larger_vertex():
    assert edge(1, 3)        # bit 1 of 3
    assert not edge(0, 2)    # bit 0 of 2
    assert edge(0, 1)


def test_dyadic_encoding_is_a_bijection_onto_a_dense_order():
    values = [dyadic(n) for n in range(200)]
    assert len(set(values)) == 200
    assert all(dyadic_index(q) == n for n, q in enumerate(values))
    ordered = sorted(values)
    # between any two listed values the encoding reaches a third one
    for lo, hi in zip(ordered, ordered[1:]):
        mid = (lo + hi) / 2
        assert isinstance(mid, Fraction) and lo < mid < hi


def test_qf_type_examples():
    assert qf_type(PURE_SET, (3, 3, 5)).partition() == [{0, 1}, {2}]
    a, b = sorted(range(6), key=dyadic)[:2]
    assert qf_type(DLO, (a, b)).describe() == "pos0 < pos1"
    assert qf_type(RADO, (1, 3)).relations == ((0, 1),)
    assert qf_type(RADO, (0, 2)).relations == ()


@pytest.mark.parametrize("S,n,count", [(PURE_SET, 2, 2), (DLO, 2, 3), (RADO, 2, 3), (PURE_SET, 0, 1),
                                       (DLO, 0, 1), (RADO, 0, 1), (PURE_SET, 3, 5), (DLO, 3, 13), (RADO, 3, 15)])
def test_orbit_counts(S, n, count):
    assert orbit_count(S, n) == count
    assert len(list(abstract_types(S, n))) == count


@pytest.mark.parametrize("S", BUNDLED)
def test_qf_type_separates_orbits_in_a_window(S):
    # distinct tuples in one window get one type per realized orbit
    window = range(8)
    types = {qf_type(S, t) for t in itertools.product(window, repeat=2)}
    assert len(types) == orbit_count(S, 2)


@pytest.mark.parametrize("S", BUNDLED)
def test_realize_gives_each_abstract_type(S):
    for n in range(4):
        for t in abstract_types(S, n):
            assert qf_type(S, realize(S, t)) == t


def test_extend_embedding_examples():
    p = extend_embedding(PURE_SET, PartialIso(PURE_SET, {0: 1}), 2)
    assert dict(p.items()) == {0: 1, 2: 0}
    ident = PartialIso(DLO, {x: x for x in range(4)})
    assert extend_embedding(DLO, ident, 7)[7] == 7
    assert dict(extend_embedding(RADO, PartialIso(RADO, {}), 0).items()) == {0: 0}


def test_extend_embedding_rejects_non_type_preserving_input():
    with pytest.raises(NotTypePreserving):
        extend_embedding(RADO, {0: 0, 1: 2}, 3)


@pytest.mark.parametrize("S", BUNDLED)
def test_extend_to_keeps_types(S):
    p = {0: 0, 3: 1} if S.kind is not Kind.DLO else {0: 0}
    assert same_type(S, list(p), list(p.values()))
    g = extend_to(S, p, range(6))
    dom = sorted(g)
    assert same_type(S, dom, [g[d] for d in dom])


def test_acl_is_trivial():
    assert acl(PURE_SET, {1, 2}) == {1, 2}
    assert acl(DLO, set()) == frozenset()
    assert acl(RADO, {0}) == {0}


def test_free_amalgam_examples():
    x = EmbeddingChunk(PURE_SET, (0, 1), (0, 1))
    assert free_amalgam(PURE_SET, x, {0}, {0, 1}).images == (0, 2)
    y = EmbeddingChunk(RADO, (0, 1), (0, 1))
    assert free_amalgam(RADO, y, {0, 1}, {0, 1, 2}).images == (0, 1)


def test_free_amalgam_rado_respects_edges_to_c():
    x = EmbeddingChunk(RADO, (0, 1, 3), (0, 1, 3))
    z = free_amalgam(RADO, x, {5}, range(6))
    assert qf_type(RADO, (5,) + z.images) == qf_type(RADO, (5, 0, 1, 3))
    assert not set(z.images) & set(range(6))


def test_rado_extension_witness_examples():
    assert rado_extension_witness({0}, set()) == 1
    assert rado_extension_witness(set(), set()) == 0
    v = rado_extension_witness({1}, {0})
    assert edge(1, v) and not edge(0, v)
    assert all(not (edge(1, u) and not edge(0, u)) for u in range(v) if u not in (0, 1))
    with pytest.raises(ValueError):
        rado_extension_witness({1}, {1})


def test_rado_extension_witness_large_sets():
    X, Y = set(range(0, 12, 2)), set(range(1, 12, 2))
    v = rado_extension_witness(X, Y)
    assert all(edge(x, v) for x in X) and not any(edge(y, v) for y in Y)


def test_embedding_chunk_rejects_non_injective_maps():
    with pytest.raises(NotTypePreserving):
        EmbeddingChunk(PURE_SET, (0, 1), (3, 3))


def test_structure_from_config():
    S = Structure.from_config({"kind": "rado", "scale": 8})
    assert S.kind is Kind.RADO and S.scale == 8
    with pytest.raises(ValueError):
        Structure.from_config({"kind": "tree"})
    with pytest.raises(ValueError):
        Structure(Kind.DLO, scale=-1)
