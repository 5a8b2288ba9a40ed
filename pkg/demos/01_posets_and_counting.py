"""Finite posets and exact counting of order-preserving maps.

Walks through the poset toolkit: building orders, combining them, listing
down-sets, and counting maps both by enumeration and by the down-set
dynamic program, ending with order polynomials.
"""

from semistar import (
    Poset,
    antichain,
    binomial_order_poly,
    chain,
    count_hom,
    down_sets,
    enum_hom,
    hom_polynomial,
    ordinal_sum,
    product,
)

# A chain is a total order; elements are always 0..n-1 with 0 at the bottom.
c3 = chain(3)
print("chain(3) covers:", c3.covers())

# Ordinal sum stacks one poset on top of another; product orders pairs
# componentwise.  The product of two 2-chains is the diamond.
diamond = product(chain(2), chain(2))
print("diamond covers:", diamond.covers())
print("stack of chains is a chain:", ordinal_sum(chain(2), chain(3)).is_chain())

# Down-sets (order ideals) are the subsets closed downwards.
print("down-sets of the diamond:", [sorted(s) for s in down_sets(diamond)])
print("an antichain of 4 has", len(down_sets(antichain(4))), "down-sets")

# Order-preserving maps can be listed explicitly ...
maps = enum_hom(chain(2), chain(3))
print("maps from a 2-chain to a 3-chain:", [m.image for m in maps])

# ... or counted without enumeration; the two paths always agree.
print("count_hom agrees:", count_hom(chain(2), chain(3)) == len(maps))
print("maps from the diamond into a 3-chain:", count_hom(diamond, chain(3)))

# Irregular targets work too: here a fence with a chain stacked on top.
fence = Poset.from_covers(3, [(0, 1), (2, 1)])
target = ordinal_sum(fence, chain(2))
print("maps from the diamond into fence+chain:", count_hom(diamond, target))

# The number of maps into (q stacked under an n-chain) is a polynomial in n
# of degree |p|.  For chains it is the multiset-coefficient polynomial.
print("H for a 3-chain source:", hom_polynomial(chain(3), chain(0)))
print("same thing, closed form:", binomial_order_poly(3))
print("H for the diamond into the fence:", hom_polynomial(diamond, fence))
for n in range(5):
    direct = count_hom(diamond, ordinal_sum(fence, chain(n)))
    via_poly = hom_polynomial(diamond, fence).evaluate({"n": n})
    assert direct == via_poly
print("polynomial matches direct counts at n = 0..4")
