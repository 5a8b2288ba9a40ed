"""Spectral trees: validation, surgery, the skeleton, and supports.

A semilocal Prüfer domain enters the library as the reduced tree of its
prime spectrum.  The root is the zero ideal; leaves are the maximal ideals.
Each node carries a weight omega (how many fractional-star operations its
valuation slice has); each leaf also carries epsilon in {1, 2} (whether the
maximal ideal is principal: 1 if it is).
"""

from semistar import (
    SpectrumValidationError,
    branch_subtree,
    build_tree,
    derive_omega,
    enumerate_supports,
    quotient_subtree,
    skeleton,
    standard_decomposition,
    validate_tree,
)
from semistar.spectrum import IDEMPOTENT, NONIDEMPOTENT

# The two-branch running example: one branch forks at a prime P into two
# maximal ideals, the other is a single maximal ideal N.
tree = validate_tree(
    {
        "nodes": [
            {"id": "0", "parent": None, "omega": 1},
            {"id": "P", "parent": "0", "omega": 3},
            {"id": "M1", "parent": "P", "omega": 1, "epsilon": 1},
            {"id": "M2", "parent": "P", "omega": 1, "epsilon": 1},
            {"id": "N", "parent": "0", "omega": 2, "epsilon": 2},
        ]
    }
)
print("valid tree:", tree)
print(tree.to_dot())

# Validation reports every violated invariant at once.  A path is rejected
# because a non-root node with exactly one child is not a branching point.
try:
    build_tree([("0", None, 1), ("P", "0", 2), ("M", "P", 1, 1)])
except SpectrumValidationError as exc:
    print("rejected path tree:", exc.problems)

# The weight of a slice can be derived from the idempotency of its primes:
# nonidempotent primes contribute 1, idempotent ones 2.
print("slice weight:", derive_omega([IDEMPOTENT, IDEMPOTENT, NONIDEMPOTENT]))

# The standard decomposition: one branch per child of the root.
branches = standard_decomposition(tree)
print("branches:", branches)
for child in branches:
    sub = branch_subtree(tree, child)
    print(f"  branch {child}: leaves {sub.leaves()}")

# Re-rooting at P models the quotient by P: its weight resets to 1.
quotient = quotient_subtree(tree, "P")
print("quotient at P:", quotient, "omega(P) is now", quotient.omega("P"))

# The skeleton: all intersections of branch overrings, a Boolean lattice
# under reverse mask inclusion.  The full mask is the domain itself.
sk = skeleton(tree)
print("skeleton elements:", [sk.label(m) for m in sk.elements()])

# A support is a union-closed family of skeleton masks containing the
# quotient field; these are exactly the possible supports of a semistar
# operation.  Seven of them exist over two branches.
for support in enumerate_supports(tree):
    print("  support", support.label(sk.branch_ids))
print("supports over 3 branches:", len(enumerate_supports(3)))
