import itertools

import pytest

from hilbcomp.semigroup import (CapExceeded, IncompleteTable, PartialIso, SemigroupTable, all_partial_injections,
                                check_inverse_semigroup, compose, generate, idempotents_self_adjoint, inverse_of,
                                is_idempotent, is_regular, star, summary, symmetric_inverse_monoid)
from hilbcomp.structures import DLO, PURE_SET, NotTypePreserving


def P(graph):
    return PartialIso(PURE_SET, graph)


def test_compose_examples():
    assert compose(P({1: 2}), P({3: 1})) == P({3: 2})
    assert compose(P({}), P({0: 1, 2: 3})) == P({})
    assert compose(P({0: 0, 1: 2}), P({0: 1, 5: 0})) == P({0: 2, 5: 0})


def test_star_examples():
    assert star(P({1: 2, 4: 5})) == P({2: 1, 5: 4})
    assert star(P({})) == P({})
    e = PartialIso.identity(PURE_SET, {0, 3})
    assert star(e) == e


def test_idempotents_and_regularity():
    assert is_idempotent(PartialIso.identity(PURE_SET, {0, 3}))
    assert not is_idempotent(P({1: 2}))
    T = symmetric_inverse_monoid(3)
    assert len(T) == 34
    assert len(T.idempotents()) == 8
    assert all(is_regular(p) for p in all_partial_injections(PURE_SET, range(4)))
    assert is_regular(P({}))


def test_inverse_of():
    assert inverse_of(P({1: 2})) == P({2: 1})
    e = PartialIso.identity(PURE_SET, {1, 2})
    assert inverse_of(e) == e


def test_partial_iso_checks_injectivity_and_types():
    with pytest.raises(ValueError):
        P({0: 1, 2: 1})
    with pytest.raises(NotTypePreserving):
        PartialIso(DLO, {0: 2, 2: 0})


def test_parse():
    assert PartialIso.parse(PURE_SET, "1->2, 3->0") == P({1: 2, 3: 0})
    assert PartialIso.parse(PURE_SET, "") == P({})


@pytest.mark.parametrize("n,size", [(0, 1), (1, 2), (2, 7), (3, 34), (4, 209)])
def test_monoid_sizes(n, size):
    assert len(symmetric_inverse_monoid(n)) == size


def test_generate_rank_one_maps_and_transpositions():
    gens = [P({i: j}) for i in range(3) for j in range(3)]
    gens += [P({0: 1, 1: 0, 2: 2}), P({0: 0, 1: 2, 2: 1}), P({0: 2, 1: 1, 2: 0})]
    # no product of these has rank 2: the empty map, 9 rank-one maps, 6 permutations
    T = generate(PURE_SET, gens, points=range(3))
    assert len(T) == 16
    T = generate(PURE_SET, gens + [P({0: 0, 1: 1})], points=range(3))
    assert len(T) == 34
    assert set(T.elements) == set(symmetric_inverse_monoid(3).elements)


def test_generate_trivial_cases():
    one = PartialIso.identity(PURE_SET, range(3))
    assert len(generate(PURE_SET, [one], points=range(3))) == 1
    assert len(generate(PURE_SET, [P({})], points=range(3))) == 2


def test_generate_is_independent_of_generator_order():
    gens = [P({0: 1, 1: 0}), P({0: 1, 1: 2, 2: 0}), P({1: 1})]
    a = generate(PURE_SET, gens, points=range(3))
    b = generate(PURE_SET, gens[::-1], points=range(3))
    assert a.elements == b.elements and a.cayley == b.cayley


def test_cap_exceeded_keeps_a_partial_table():
    gens = [P({0: 1, 1: 0}), P({0: 1, 1: 2, 2: 0})]
    with pytest.raises(CapExceeded) as info:
        generate(PURE_SET, gens, cap=2, points=range(3))
    table = info.value.table
    assert table.truncated
    with pytest.raises(IncompleteTable):
        check_inverse_semigroup(table)
    assert summary(table)["truncated"]


def test_inverse_semigroup_report_on_monoids():
    for n in range(4):
        T = symmetric_inverse_monoid(n)
        report = check_inverse_semigroup(T)
        assert report["regular"] and report["idempotents_commute"] and report["unique_inverses"]
        assert idempotents_self_adjoint(T)


def test_full_transformations_with_noncommuting_idempotents():
    # constant maps on {0, 1} and the identity, as a table of transformations
    maps = [(0, 0), (1, 1), (0, 1)]
    pos = {m: i for i, m in enumerate(maps)}
    cayley = [[pos[tuple(x[y[k]] for k in range(2))] for y in maps] for x in maps]
    T = SemigroupTable(maps, cayley)
    report = check_inverse_semigroup(T)
    assert not report["idempotents_commute"]
    assert not report["unique_inverses"]
    assert report["fact_holds"]


def test_trivial_semigroup():
    T = SemigroupTable(["e"], [[0]])
    report = check_inverse_semigroup(T)
    assert report["regular"] and report["idempotents_commute"] and report["unique_inverses"]


def test_star_is_an_anti_automorphism():
    els = symmetric_inverse_monoid(3).elements
    for p, q in itertools.product(els, repeat=2):
        assert star(compose(p, q)) == compose(star(q), star(p))
