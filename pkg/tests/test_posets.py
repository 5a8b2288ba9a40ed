import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_poset
from semistar import (
    EnumerationLimitError,
    OrderMap,
    Poset,
    antichain,
    are_isomorphic,
    binomial_order_poly,
    chain,
    count_hom,
    down_sets,
    enum_hom,
    hom_polynomial,
    ordinal_sum,
    product,
    subposet,
)
from semistar.oracle import brute_count_hom

posets = st.integers(0, 10_000).map(lambda seed: random_poset(random.Random(seed)))


def diamond():
    return product(chain(2), chain(2))


def test_chain_basics():
    assert chain(0).size == 0
    assert chain(1).size == 1
    c5 = chain(5)
    assert c5.maximal_elements() == [4]
    assert c5.minimal_elements() == [0]
    assert len(down_sets(chain(3))) == 4


def test_not_a_partial_order_rejected():
    with pytest.raises(ValueError):
        Poset([0b11, 0b11])  # 0 <= 1 and 1 <= 0
    with pytest.raises(ValueError):
        Poset([0b10, 0b10])  # element 0 not below itself
    with pytest.raises(ValueError):
        Poset.from_relation(3, [(0, 1), (1, 2)])  # not transitively closed


def test_ordinal_sum_shapes():
    assert are_isomorphic(ordinal_sum(chain(2), chain(3)), chain(5))
    p = diamond()
    assert are_isomorphic(ordinal_sum(p, chain(0)), p)
    s = ordinal_sum(antichain(2), chain(1))
    assert s.unique_max() is not None
    assert len(s.minimal_elements()) == 2


def test_ordinal_sum_associative_up_to_iso():
    rng = random.Random(7)
    for _ in range(20):
        p, q, r = (random_poset(rng, 3) for _ in range(3))
        assert are_isomorphic(
            ordinal_sum(ordinal_sum(p, q), r), ordinal_sum(p, ordinal_sum(q, r))
        )


def test_product_shapes():
    assert are_isomorphic(diamond(), Poset.from_covers(4, [(0, 1), (0, 2), (1, 3), (2, 3)]))
    p = random_poset(random.Random(3), 4)
    assert are_isomorphic(product(p, chain(1)), p)


def test_product_commutative_up_to_iso():
    rng = random.Random(11)
    for _ in range(20):
        p, q = random_poset(rng, 3), random_poset(rng, 3)
        assert are_isomorphic(product(p, q), product(q, p))


def test_product_hom_multiplicativity():
    rng = random.Random(5)
    for _ in range(25):
        r, p, q = (random_poset(rng, 3) for _ in range(3))
        assert count_hom(r, product(p, q)) == count_hom(r, p) * count_hom(r, q)


def test_down_sets():
    assert len(down_sets(antichain(4))) == 16
    assert len(down_sets(diamond())) == 6
    for s in down_sets(diamond()):
        for x in s:
            assert all(y in s for y in range(4) if diamond().leq(y, x))
    with pytest.raises(EnumerationLimitError):
        down_sets(antichain(25))


def test_enum_hom_counts():
    q = random_poset(random.Random(1), 4)
    assert len(enum_hom(chain(1), q)) == q.size
    assert len(enum_hom(q, chain(1))) == 1
    assert len(enum_hom(chain(2), chain(2))) == 3
    with pytest.raises(EnumerationLimitError):
        enum_hom(antichain(5), chain(9), max_maps=100)


def test_enum_hom_maps_are_valid_and_deterministic():
    p, q = diamond(), chain(3)
    maps = enum_hom(p, q)
    assert maps == enum_hom(p, q)
    for m in maps:
        OrderMap(p, q, m.image)  # re-validate through the checking constructor
    assert len(set(m.image for m in maps)) == len(maps)


def test_order_map_rejects_non_monotone():
    with pytest.raises(ValueError):
        OrderMap(chain(2), chain(2), (1, 0))


def test_count_hom_known_values():
    assert count_hom(chain(2), chain(3)) == 6
    assert count_hom(antichain(2), chain(7)) == 49
    assert count_hom(diamond(), chain(2)) == 6
    assert count_hom(diamond(), chain(3)) == 20
    assert count_hom(chain(0), chain(0)) == 1
    assert count_hom(chain(1), chain(0)) == 0


def test_count_hom_chain_to_chain_binomials():
    from math import comb

    for k in range(1, 7):
        for n in range(1, 7):
            assert count_hom(chain(k), chain(n)) == comb(n + k - 1, k)


@given(posets, posets)
@settings(max_examples=60, deadline=None)
def test_count_hom_matches_enum_and_brute(p, q):
    n = count_hom(p, q)
    assert n == len(enum_hom(p, q))
    assert n == brute_count_hom(p, q)


def test_count_hom_irregular_target_with_chain_on_top():
    # a fence with a 2-chain stacked above exercises the split-at-the-chain path
    fence = Poset.from_covers(3, [(0, 1), (2, 1)])
    target = ordinal_sum(fence, chain(2))
    for p in (chain(2), diamond(), antichain(3)):
        assert count_hom(p, target) == brute_count_hom(p, target)


def test_hom_polynomial_known():
    h2 = hom_polynomial(chain(2), chain(0))
    assert h2 == binomial_order_poly(2)
    h3 = hom_polynomial(chain(3), chain(0))
    assert h3 == binomial_order_poly(3)
    assert hom_polynomial(chain(1), chain(1)).evaluate({"n": 5}) == 6  # n + 1


@given(posets, posets)
@settings(max_examples=40, deadline=None)
def test_hom_polynomial_matches_direct_counts(p, q):
    poly = hom_polynomial(p, q)
    if p.size:
        assert poly.degree() == p.size
    for n in range(p.size + 3):
        assert poly.evaluate({"n": n}) == count_hom(p, ordinal_sum(q, chain(n)))


def test_subposet_and_covers():
    d = diamond()
    assert subposet(d, [0, 3]).covers() == [(0, 1)]
    assert chain(4).covers() == [(0, 1), (1, 2), (2, 3)]
    assert d.unique_max() == 3 and d.unique_min() == 0


def test_isomorphism_checker():
    assert are_isomorphic(chain(3), ordinal_sum(chain(1), chain(2)))
    assert not are_isomorphic(chain(4), ordinal_sum(antichain(2), chain(2)))
    assert not are_isomorphic(chain(3), chain(4))


def test_exports():
    d = diamond()
    data = d.to_json_dict()
    assert data == {"size": 4, "covers": [[0, 1], [0, 2], [1, 3], [2, 3]]}
    dot = d.to_dot(flagged={0})
    assert "n0 -> n1" in dot and "peripheries=2" in dot
    assert d.to_dot() == d.to_dot()
