"""Ordered sets and counts of closure operations from a labeled spectral tree.

Everything is assembled branch by branch.  For a single branch whose child
``c`` is a leaf, the fractional-star operations of the branch overring form a
chain of length ``omega(c)`` whose bottom ``epsilon(c)`` elements close the
ring.  For an internal ``c`` the branch splits at the prime ``c``: below it
sits the full semistar poset of the quotient tree (re-rooted at ``c``), above
it a chain of length ``omega(c)`` coming from the valuation slice; gluing
removes the quotient's top element (the all-to-field closure, which is never
ring-closing there) and stacks the chain on what is left.

The semistar operations of the whole tree are classified by their support, a
union-closed family of skeleton masks containing the quotient-field mask.
The operations with a fixed support correspond to tuples of order-preserving
maps, one per branch meeting the support, from the support component into
that branch's fractional-star poset; comparison across supports reverses the
support inclusion.  An operation closes the domain exactly when its support
contains the domain and every branch map sends the domain to a ring-closing
element.

Cardinalities are obtained three ways, which the test suite plays against
each other: pure counting (``count_*``), explicit element enumeration
(``semistar_element_counts``), and full poset materialization
(``semistar_poset``).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from math import prod
from typing import Mapping, Sequence

from .errors import EnumerationLimitError
from .polynomials import MultiPoly, interpolate
from .posets import (
    OrderMap,
    Poset,
    chain,
    count_hom,
    enum_hom,
    ordinal_sum,
    product,
    subposet,
    _iter_bits,
)
from .spectrum import (
    SpectrumTree,
    Support,
    branch_subtree,
    enumerate_supports,
    quotient_subtree,
    standard_decomposition,
)


@dataclass(frozen=True)
class Limits:
    """Size guards; exceeding any of them raises, nothing is truncated."""

    max_branches: int = 4
    max_maps: int = 10_000_000
    max_poset: int = 2000


DEFAULT_LIMITS = Limits()


@dataclass(frozen=True)
class FlaggedPoset:
    """A poset with a marked down-set of ring-closing elements.

    The minimum (the identity operation) always closes the ring, and the
    marked set is closed downwards, so both are enforced here.
    """

    poset: Poset
    ring_closing: frozenset[int]

    def __post_init__(self):
        bottom = self.poset.unique_min()
        if bottom is None:
            raise ValueError("a flagged poset needs a unique minimum (the identity)")
        if bottom not in self.ring_closing:
            raise ValueError("the minimum must be ring-closing")
        for i in self.ring_closing:
            if not 0 <= i < self.poset.size:
                raise ValueError(f"flag {i} out of range")
            for j in _iter_bits(self.poset.down_mask(i)):
                if j not in self.ring_closing:
                    raise ValueError("ring-closing elements must form a down-set")

    @property
    def size(self) -> int:
        return self.poset.size

    def to_dot(self, labels: Sequence[str] | None = None) -> str:
        """Hasse diagram with the ring-closing elements double-bordered."""
        return self.poset.to_dot(labels=labels, flagged=self.ring_closing)

    def to_json_dict(self) -> dict:
        payload = self.poset.to_json_dict()
        payload["ring_closing"] = sorted(self.ring_closing)
        return payload


@dataclass(frozen=True)
class SemistarElement:
    """One semistar operation: a support plus one branch map per met branch.

    ``maps`` is aligned with the branch order; entries are ``None`` exactly
    for the branches whose support component is empty.  The support holding
    only the quotient field gives the single all-to-field operation, with no
    maps at all.
    """

    support: Support
    maps: tuple[OrderMap | None, ...]

    def image_of(self, branch: int, mask: int) -> int:
        component = self.support.component(branch)
        return self.maps[branch].image[component.index(mask)]


@dataclass(frozen=True)
class SemistarPoset:
    """The full ordered set of semistar operations with per-element labels."""

    flagged: FlaggedPoset
    elements: tuple[SemistarElement, ...]
    branch_ids: tuple[str, ...]

    @property
    def poset(self) -> Poset:
        return self.flagged.poset

    @property
    def ring_closing(self) -> frozenset[int]:
        return self.flagged.ring_closing

    @property
    def size(self) -> int:
        return self.flagged.poset.size


def _single_node(t: SpectrumTree) -> bool:
    return len(t.nodes) == 1


def _branches(t: SpectrumTree, limits: Limits) -> list[SpectrumTree]:
    ids = standard_decomposition(t)
    if len(ids) > limits.max_branches:
        raise EnumerationLimitError(
            f"tree has {len(ids)} branches, limit is {limits.max_branches}"
        )
    return [branch_subtree(t, c) for c in ids]


_FSTAR_CACHE: dict[SpectrumTree, FlaggedPoset] = {}


def fstar_poset(branch: SpectrumTree, limits: Limits = DEFAULT_LIMITS) -> FlaggedPoset:
    """Fractional-star operations of a single-branch tree, with star flags.

    For a leaf child this is a chain of length ``omega`` whose bottom
    ``epsilon`` elements are starred.  Otherwise the semistar poset of the
    quotient at the child loses its top and a chain of length ``omega`` is
    stacked above; the star flags are the quotient's ring-closing elements,
    all of which survive the removal of the top.
    """
    cached = _FSTAR_CACHE.get(branch)
    if cached is not None:
        return cached
    ids = standard_decomposition(branch)
    if len(ids) != 1:
        raise ValueError("fractional-star posets are built per branch (one root child)")
    child = ids[0]
    node = branch.node(child)
    if branch.is_leaf(child):
        result = FlaggedPoset(chain(node.omega), frozenset(range(branch.epsilon(child))))
    else:
        quotient = quotient_subtree(branch, child)
        sp = semistar_poset(quotient, limits)
        top = sp.poset.unique_max()
        assert top is not None and sp.elements[top].support.masks == frozenset({0})
        assert top not in sp.ring_closing
        keep = [i for i in range(sp.size) if i != top]
        base = subposet(sp.poset, keep)
        flags = frozenset(keep.index(i) for i in sp.ring_closing)
        result = FlaggedPoset(ordinal_sum(base, chain(node.omega)), flags)
    if len(_FSTAR_CACHE) < 10_000:
        _FSTAR_CACHE[branch] = result
    return result


def _branch_fstars(t: SpectrumTree, limits: Limits) -> list[FlaggedPoset]:
    return [fstar_poset(b, limits) for b in _branches(t, limits)]


def _support_components(support: Support, branch_count: int):
    """Per-branch (masks, poset, domain index) for one support."""
    out = []
    for i in range(branch_count):
        masks = support.component(i)
        poset, d_index = support.component_poset(i)
        out.append((masks, poset, d_index))
    return out


# -- counting ------------------------------------------------------------------


def count_semistar(t: SpectrumTree, limits: Limits = DEFAULT_LIMITS) -> int:
    """Number of semistar operations of a domain with this spectral tree.

    Sum over supports of the product, over branches met by the support, of
    the number of order-preserving maps of the support component into the
    branch's fractional-star poset.  The quotient-field-only support
    contributes the single all-to-field operation.
    """
    if _single_node(t):
        return 1
    fstars = _branch_fstars(t, limits)
    total = 0
    for support in enumerate_supports(len(fstars), max_branches=limits.max_branches):
        term = 1
        for i, fstar in enumerate(fstars):
            poset, _ = support.component_poset(i)
            if poset.size:
                term *= count_hom(poset, fstar.poset, max_steps=limits.max_maps)
        total += term
    return total


def count_fstar(t: SpectrumTree, limits: Limits = DEFAULT_LIMITS) -> int:
    """Number of fractional-star operations: the product over the branches."""
    if _single_node(t):
        return 1
    return prod(f.size for f in _branch_fstars(t, limits))


_TILDHOM_CACHE: dict[tuple[Poset, int | None, FlaggedPoset], int] = {}


def tildhom_count(
    component: Poset,
    d_index: int | None,
    fstar: FlaggedPoset,
    *,
    max_steps: int | None = None,
) -> int:
    """Order-preserving maps into ``fstar`` sending the domain to a starred element.

    With no designated domain element this is a plain map count.  Otherwise
    the domain is the minimum of the component, so the maps split by the
    image of the domain: for each starred ``q`` the rest of the component
    maps anywhere in the up-set of ``q``.
    """
    if d_index is None:
        return count_hom(component, fstar.poset, max_steps=max_steps)
    full = (1 << component.size) - 1
    if component.up_mask(d_index) != full:
        raise ValueError("the designated domain element must be the component minimum")
    key = (component, d_index, fstar)
    cached = _TILDHOM_CACHE.get(key)
    if cached is not None:
        return cached
    rest = subposet(component, (i for i in range(component.size) if i != d_index))
    target = fstar.poset
    if rest.is_chain():
        # one sweep computes |hom(chain(k), up-set of x)| for every x at once
        counts = [1] * target.size
        for _ in range(rest.size):
            counts = [
                sum(counts[y] for y in _iter_bits(target.up_mask(x)))
                for x in range(target.size)
            ]
        total = sum(counts[q] for q in fstar.ring_closing)
    else:
        total = 0
        for q in sorted(fstar.ring_closing):
            upper = subposet(target, _iter_bits(target.up_mask(q)))
            total += count_hom(rest, upper, max_steps=max_steps)
    if len(_TILDHOM_CACHE) < 50_000:
        _TILDHOM_CACHE[key] = total
    return total


def count_smstar(t: SpectrumTree, limits: Limits = DEFAULT_LIMITS) -> int:
    """Number of semistar operations that close the domain itself."""
    if _single_node(t):
        return 1
    fstars = _branch_fstars(t, limits)
    total = 0
    for support in enumerate_supports(len(fstars), max_branches=limits.max_branches):
        if not support.contains_domain():
            continue
        term = 1
        for i, fstar in enumerate(fstars):
            poset, d_index = support.component_poset(i)
            term *= tildhom_count(poset, d_index, fstar, max_steps=limits.max_maps)
        total += term
    return total


def count_star(t: SpectrumTree, limits: Limits = DEFAULT_LIMITS) -> int:
    """Number of star operations: product of the branch ring-closing counts."""
    if _single_node(t):
        return 1
    return prod(len(f.ring_closing) for f in _branch_fstars(t, limits))


def count_report(t: SpectrumTree, limits: Limits = DEFAULT_LIMITS) -> dict[str, int]:
    """All four cardinalities, in a stable key order."""
    return {
        "semistar": count_semistar(t, limits),
        "fstar": count_fstar(t, limits),
        "smstar": count_smstar(t, limits),
        "star": count_star(t, limits),
    }


def semistar_element_counts(
    t: SpectrumTree, limits: Limits = DEFAULT_LIMITS
) -> tuple[int, int]:
    """(element count, ring-closing count) via explicit map enumeration.

    Independent of the counting programs in ``count_semistar`` and
    ``count_smstar``: every branch map is materialized and the ring-closing
    ones are found by inspection of the domain's image.
    """
    if _single_node(t):
        return 1, 1
    fstars = _branch_fstars(t, limits)
    total = 0
    flagged = 0
    for support in enumerate_supports(len(fstars), max_branches=limits.max_branches):
        sizes = []
        starred = []
        for i, fstar in enumerate(fstars):
            poset, d_index = support.component_poset(i)
            if not poset.size:
                continue
            maps = enum_hom(poset, fstar.poset, max_maps=limits.max_maps)
            sizes.append(len(maps))
            if support.contains_domain():
                starred.append(
                    sum(1 for m in maps if m.image[d_index] in fstar.ring_closing)
                )
        total += prod(sizes)
        if support.contains_domain():
            flagged += prod(starred)
    return total, flagged


# -- the full ordered set ---------------------------------------------------------


_SEMISTAR_POSET_CACHE: dict[SpectrumTree, "SemistarPoset"] = {}


def semistar_poset(t: SpectrumTree, limits: Limits = DEFAULT_LIMITS) -> SemistarPoset:
    """Materialize the ordered set of semistar operations, flags included.

    Elements are sorted by (support, map images).  The identity is the
    minimum, the all-to-field operation the maximum; comparisons hold
    exactly when the supports are reverse-included and every shared branch
    map is pointwise below.
    """
    cached = _SEMISTAR_POSET_CACHE.get(t)
    if cached is not None:
        if cached.size > limits.max_poset:
            raise EnumerationLimitError(
                f"semistar poset would hold {cached.size} elements, "
                f"limit is {limits.max_poset}"
            )
        return cached

    branch_ids = standard_decomposition(t)
    if _single_node(t):
        element = SemistarElement(Support(0, frozenset({0})), ())
        return SemistarPoset(FlaggedPoset(chain(1), frozenset({0})), (element,), branch_ids)

    fstars = _branch_fstars(t, limits)
    m = len(fstars)
    supports = enumerate_supports(m, max_branches=limits.max_branches)

    predicted = count_semistar(t, limits)
    if predicted > limits.max_poset:
        raise EnumerationLimitError(
            f"semistar poset would hold {predicted} elements, limit is {limits.max_poset}"
        )

    elements: list[SemistarElement] = []
    lookups: list[tuple[dict[int, int] | None, ...]] = []
    for support in supports:
        components = _support_components(support, m)
        map_lists = []
        for i, fstar in enumerate(fstars):
            masks, poset, _ = components[i]
            if poset.size:
                map_lists.append(enum_hom(poset, fstar.poset, max_maps=limits.max_maps))
            else:
                map_lists.append([None])
        for combo in cartesian(*map_lists):
            elements.append(SemistarElement(support, tuple(combo)))
            lookups.append(
                tuple(
                    None
                    if m_i is None
                    else dict(zip(components[i][0], m_i.image))
                    for i, m_i in enumerate(combo)
                )
            )

    order = sorted(
        range(len(elements)),
        key=lambda k: (
            elements[k].support.sort_key(),
            tuple(() if m_i is None else m_i.image for m_i in elements[k].maps),
        ),
    )
    elements = [elements[k] for k in order]
    lookups = [lookups[k] for k in order]

    pairs = []
    for a, ea in enumerate(elements):
        masks_a = ea.support.masks
        for b, eb in enumerate(elements):
            if not masks_a >= eb.support.masks:
                continue
            ok = True
            for i in range(m):
                look_b = lookups[b][i]
                if look_b is None:
                    continue
                look_a = lookups[a][i]
                fp = fstars[i].poset
                for mask, qb in look_b.items():
                    if not fp.leq(look_a[mask], qb):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                pairs.append((a, b))

    poset = Poset.from_relation(len(elements), pairs)
    flags = frozenset(
        k
        for k, e in enumerate(elements)
        if e.support.contains_domain()
        and all(
            lookups[k][i][e.support.full_mask] in fstars[i].ring_closing for i in range(m)
        )
    )
    top = poset.unique_max()
    assert top is not None and elements[top].support.masks == frozenset({0})
    result = SemistarPoset(FlaggedPoset(poset, flags), tuple(elements), branch_ids)
    if len(_SEMISTAR_POSET_CACHE) < 1000:
        _SEMISTAR_POSET_CACHE[t] = result
    return result


def fstar_product(t: SpectrumTree, limits: Limits = DEFAULT_LIMITS) -> FlaggedPoset:
    """All fractional-star operations as a product of the branch posets.

    Branch by branch there is a bijection; representing the whole set with
    the componentwise product order is a modeling choice (only the branch
    posets carry an intrinsic order), so nothing downstream depends on the
    order of this object -- counts use cardinalities only.
    """
    if _single_node(t):
        return FlaggedPoset(chain(1), frozenset({0}))
    fstars = _branch_fstars(t, limits)
    acc = fstars[0]
    for nxt in fstars[1:]:
        combined = product(acc.poset, nxt.poset)
        flags = frozenset(
            a * nxt.size + b for a in acc.ring_closing for b in nxt.ring_closing
        )
        acc = FlaggedPoset(combined, flags)
    return acc


# -- symbolic counting polynomials ---------------------------------------------------


def _check_symbolic_omega(t: SpectrumTree, node_ids: Sequence[str]):
    roots = set(standard_decomposition(t))
    for node_id in node_ids:
        t.node(node_id)
        if node_id not in roots:
            raise ValueError(
                f"symbolic weight only at children of the root, {node_id!r} is not one"
            )


def _omega_grid_start(t: SpectrumTree, node_id: str, epsilon_symbolic: bool) -> int:
    """Smallest omega value consistent with the leaf's epsilon label."""
    if not t.is_leaf(node_id):
        return 1
    if epsilon_symbolic:
        return 2
    return max(1, t.epsilon(node_id))


def semistar_polynomial(
    t: SpectrumTree,
    variables: Sequence[str],
    limits: Limits = DEFAULT_LIMITS,
) -> MultiPoly:
    """The semistar count as an exact polynomial in the chosen branch weights.

    The variables must be children of the root (named by node id); all other
    labels stay fixed.  In each variable the degree is at most 2^(m-1) for m
    branches (the largest support component met by a branch), which fixes
    the interpolation grid; the result is verified off the grid.
    """
    if not variables:
        raise ValueError("need at least one symbolic node")
    _check_symbolic_omega(t, variables)
    m = len(standard_decomposition(t))
    bound = 2 ** (m - 1)
    bounds = {v: bound for v in variables}
    nodes = {}
    for v in variables:
        start = _omega_grid_start(t, v, epsilon_symbolic=False)
        nodes[v] = list(range(start, start + bound + 1))

    def evaluator(point: Mapping[str, int]) -> int:
        return count_semistar(t.with_labels(omega=dict(point)), limits)

    return interpolate(evaluator, bounds, nodes=nodes)


def smstar_polynomial(
    t: SpectrumTree,
    omega_variables: Sequence[str],
    epsilon_variables: Sequence[str] = (),
    limits: Limits = DEFAULT_LIMITS,
) -> MultiPoly:
    """The domain-closing count as a polynomial in weights and epsilon labels.

    Weight variables must be children of the root and have degree at most
    2^(m-1) - 1; epsilon variables may sit at any leaf, take values in
    {1, 2} and have degree 1.  Epsilon variables are named ``eps_<id>``.
    Off-grid verification moves only the weight variables, since epsilon
    has no meaning outside {1, 2}.
    """
    if not omega_variables and not epsilon_variables:
        raise ValueError("need at least one symbolic node")
    _check_symbolic_omega(t, omega_variables)
    eps_symbolic = set(epsilon_variables)
    for node_id in eps_symbolic:
        if not t.is_leaf(node_id):
            raise ValueError(f"epsilon is symbolic only at leaves, {node_id!r} is not one")
    eps_names = {node_id: f"eps_{node_id}" for node_id in sorted(eps_symbolic)}
    clash = set(eps_names.values()) & (set(omega_variables) | set(eps_symbolic))
    if clash:
        raise ValueError(f"variable name collision: {sorted(clash)}")
    for node_id in eps_symbolic:
        if node_id not in omega_variables and t.omega(node_id) < 2:
            raise ValueError(
                f"leaf {node_id!r} needs weight >= 2 for a symbolic epsilon "
                "(the weight always dominates epsilon)"
            )

    m = len(standard_decomposition(t))
    bounds: dict[str, int] = {}
    nodes: dict[str, list[int]] = {}
    verify_points: dict[str, list[int]] = {}
    for v in omega_variables:
        bound = 2 ** (m - 1) - 1
        start = _omega_grid_start(t, v, epsilon_symbolic=v in eps_symbolic)
        bounds[v] = bound
        nodes[v] = list(range(start, start + bound + 1))
        verify_points[v] = [start + bound + 1, start + bound + 2]
    for node_id, name in eps_names.items():
        bounds[name] = 1
        nodes[name] = [1, 2]
        verify_points[name] = [1, 2]

    def evaluator(point: Mapping[str, int]) -> int:
        omega = {v: point[v] for v in omega_variables}
        epsilon = {node_id: point[name] for node_id, name in eps_names.items()}
        return count_smstar(t.with_labels(omega=omega, epsilon=epsilon), limits)

    return interpolate(evaluator, bounds, nodes=nodes, verify_points=verify_points)


# -- two-level shortcut -----------------------------------------------------------


def height2_counts(t: SpectrumTree, limits: Limits = DEFAULT_LIMITS) -> tuple[int, int]:
    """(fractional-star, star) counts for trees of height at most two.

    Every internal node must hang directly off the root.  Per branch prime P
    with leaves above it the factors are ``semistar(quotient at P) +
    omega(P) - 1`` and ``smstar(quotient at P)``; a leaf branch contributes
    ``omega`` and ``epsilon``.  Must agree with the general
    ``count_fstar`` / ``count_star`` path.
    """
    for n in t.nodes:
        if n.parent is not None and t.children(n.id) and n.parent != t.root_id:
            raise ValueError(
                f"height-2 shortcut needs all internal nodes at depth 1, {n.id!r} is deeper"
            )
    fstar_total = 1
    star_total = 1
    for child in standard_decomposition(t):
        if t.is_leaf(child):
            fstar_total *= t.omega(child)
            star_total *= t.epsilon(child)
        else:
            quotient = quotient_subtree(t, child)
            fstar_total *= count_semistar(quotient, limits) + t.omega(child) - 1
            star_total *= count_smstar(quotient, limits)
    return fstar_total, star_total
