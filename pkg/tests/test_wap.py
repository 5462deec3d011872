import itertools
import random

import pytest

from hilbcomp.semigroup import PartialIso, compose, star
from hilbcomp.structures import BUNDLED, DLO, PURE_SET, RADO, EmbeddingChunk, same_type
from hilbcomp.wap import (NotBijectiveOnSupport, WapClass, canonical_supports, check_independence_axioms,
                          classes_on, g_action, is_idempotent_mt, is_independent, is_regular_mt, normalize,
                          rechunk, representatives, same_stable_type, to_partial_map, wap_product, wap_star)


def test_is_independent_examples():
    assert is_independent(PURE_SET, {0, 1}, {0}, {0, 2})
    assert not is_independent(PURE_SET, {0, 1}, set(), {1})
    for B in ({1}, {0, 5}, set(range(8))):
        assert is_independent(RADO, {0, 1}, {0, 1, 2}, B)


def test_stable_type_is_the_equality_pattern():
    assert same_stable_type((0, 1), (0, 2), {0})
    assert not same_stable_type((0, 1), (1, 2), {1})


def cls(S, x, y):
    return WapClass.of(S, dict(enumerate(x)), dict(enumerate(y)))


def test_product_composes_matchings():
    p = cls(PURE_SET, (0, 1), (1, 2))   # x(1) = y(0): matching {1~0}
    q = cls(PURE_SET, (0, 1), (1, 2))
    assert p.matching == {(1, 0)}
    r = wap_product(p, q)
    assert to_partial_map(r) == compose(to_partial_map(p), to_partial_map(q))


@pytest.mark.parametrize("S", BUNDLED)
def test_identity_class_is_a_unit(S):
    sup = canonical_supports(S, 2)[0]
    one = WapClass(EmbeddingChunk.identity(S, sup), EmbeddingChunk.identity(S, sup))
    for p in classes_on(S, sup):
        assert wap_product(p, one) == p
        assert wap_product(one, p) == p


def test_star_examples():
    p = cls(PURE_SET, (0, 1), (1, 2))
    assert wap_star(p).matching == {(0, 1)}
    one = cls(PURE_SET, (0, 1), (0, 1))
    assert wap_star(one) == one


@pytest.mark.parametrize("S", BUNDLED)
def test_star_is_an_involution_on_random_classes(S):
    rng = random.Random(1)
    reps = list(representatives(S, range(2), range(5)))
    for p in rng.sample(reps, min(100, len(reps))):
        assert wap_star(wap_star(p)) == p


def test_g_action():
    p = cls(PURE_SET, (0, 1), (1, 2))
    ident = PartialIso.identity(PURE_SET, p.support)
    assert g_action(ident, p) == p
    swap = PartialIso(PURE_SET, {0: 1, 1: 0})
    rot = PartialIso(PURE_SET, {0: 1, 1: 0})
    assert g_action(compose(swap, rot), p) == g_action(swap, g_action(rot, p))
    # g [1, y] is the class of the translated embedding
    q = cls(PURE_SET, (0, 1), (0, 1))
    assert g_action(swap, q) == cls(PURE_SET, (1, 0), (0, 1))
    with pytest.raises(NotBijectiveOnSupport):
        g_action(PartialIso(PURE_SET, {0: 0}), p)


@pytest.mark.parametrize("S", BUNDLED)
def test_g_action_is_an_action_on_samples(S):
    sup = canonical_supports(S, 2)[0]
    perms = [PartialIso(S, dict(zip(sup, img))) for img in itertools.permutations(sup)
             if same_type(S, sup, img)]
    for p in classes_on(S, sup):
        for g, h in itertools.product(perms, repeat=2):
            assert g_action(compose(g, h), p) == g_action(g, g_action(h, p))


def test_idempotent_examples():
    assert is_idempotent_mt(cls(PURE_SET, (0, 1), (0, 1)))
    assert is_idempotent_mt(cls(PURE_SET, (0, 1), (0, 2)))
    assert not is_idempotent_mt(cls(PURE_SET, (0, 1), (1, 2)))


@pytest.mark.parametrize("S", BUNDLED)
def test_model_theoretic_and_algebraic_idempotents_agree(S):
    for k in range(3):
        for sup in canonical_supports(S, k):
            for p in classes_on(S, sup):
                assert is_idempotent_mt(p) == (p * p == p)
                assert is_regular_mt(p)
                assert p * wap_star(p) * p == p


@pytest.mark.parametrize("S", BUNDLED)
def test_partial_map_is_a_star_homomorphism(S):
    for k in range(3):
        for sup in canonical_supports(S, k):
            cs = classes_on(S, sup)
            assert len({to_partial_map(p) for p in cs}) == len(cs)
            for p in cs:
                assert to_partial_map(wap_star(p)) == star(to_partial_map(p))
                for q in cs:
                    assert to_partial_map(p * q) == compose(to_partial_map(p), to_partial_map(q))


@pytest.mark.parametrize("S", BUNDLED)
def test_product_is_associative(S):
    sup = canonical_supports(S, 2)[0]
    cs = classes_on(S, sup)
    for p, q, r in itertools.product(cs, repeat=3):
        assert (p * q) * r == p * (q * r)


def test_identity_class_maps_to_the_identity():
    one = cls(PURE_SET, (0, 1), (0, 1))
    assert to_partial_map(one) == PartialIso.identity(PURE_SET, (0, 1))


def test_products_do_not_depend_on_chunk_size():
    p = cls(PURE_SET, (0, 1), (1, 2))
    q = cls(PURE_SET, (0, 1), (0, 3))
    big_p, big_q = rechunk(p, range(4)), rechunk(q, range(4))
    assert big_p.matching == p.matching
    assert to_partial_map(big_p * big_q) == to_partial_map(p * q)


@pytest.mark.parametrize("S", BUNDLED)
def test_normalize_keeps_the_class(S):
    for p in itertools.islice(representatives(S, range(2), range(5)), 60):
        assert normalize(p) == p
        assert normalize(p, y_first=True) == p


def test_independence_axioms_on_the_pure_set():
    assert all(check_independence_axioms(PURE_SET, range(4)).values())
