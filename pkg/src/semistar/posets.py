"""Finite posets with exact enumeration and counting of order-preserving maps.

Elements of a poset are the integers ``0..size-1``.  The order is stored as
the full reachability relation, one bitmask per element, so order queries are
O(1); covering relations are derived on demand for Hasse exports.  All values
are immutable and every operation is a pure deterministic function, so posets
can be shared freely across threads.

Counting of maps P -> Q works in three regimes:

- targets that are chains (or have a chain stacked on top of an arbitrary
  base) are handled by a dynamic program over the down-sets of P, with the
  chain part evaluated through its counting polynomial;
- irregular targets fall back to exhaustive backtracking;
- a chain target combined with a chain source short-circuits to a binomial
  coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EnumerationLimitError
from .polynomials import MultiPoly, binomial_order_poly

#: Default cap on the number of source elements in down-set enumerations.
DEFAULT_MAX_SIZE = 20

#: Default cap on the number of maps materialized by an enumeration.
DEFAULT_MAX_MAPS = 10_000_000


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """An immutable finite partial order on ``0..size-1``.

    ``up_masks[i]`` is the bitmask of all ``j`` with ``i <= j`` (including
    ``i`` itself).  The constructor checks reflexivity, antisymmetry and
    transitivity and rejects anything that is not a partial order.
    """

    __slots__ = ("size", "_up", "_down")

    def __init__(self, up_masks: Sequence[int]):
        up = tuple(up_masks)
        size = len(up)
        full = (1 << size) - 1
        for i, mask in enumerate(up):
            if mask & ~full:
                raise ValueError(f"relation of element {i} mentions elements out of range")
            if not (mask >> i) & 1:
                raise ValueError(f"relation is not reflexive at element {i}")
        for i in range(size):
            for j in _iter_bits(up[i]):
                if j != i and (up[j] >> i) & 1:
                    raise ValueError(f"relation is not antisymmetric on {{{i}, {j}}}")
                if up[j] & ~up[i]:
                    raise ValueError(f"relation is not transitive through {i} <= {j}")
        self._finish(up, size)

    def _finish(self, up: tuple[int, ...], size: int):
        down = [0] * size
        for i in range(size):
            mask = up[i]
            while mask:
                low = mask & -mask
                down[low.bit_length() - 1] |= 1 << i
                mask ^= low
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "_up", up)
        object.__setattr__(self, "_down", tuple(down))

    @classmethod
    def _unchecked(cls, up_masks) -> "Poset":
        """For constructions that are partial orders by construction."""
        obj = object.__new__(cls)
        up = tuple(up_masks)
        obj._finish(up, len(up))
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Poset is immutable")

    @classmethod
    def from_relation(cls, size: int, pairs: Iterable[tuple[int, int]]) -> "Poset":
        """Build from the full set of ordered pairs ``a <= b`` (reflexive pairs optional)."""
        up = [1 << i for i in range(size)]
        for a, b in pairs:
            if not (0 <= a < size and 0 <= b < size):
                raise ValueError(f"pair ({a}, {b}) out of range")
            up[a] |= 1 << b
        return cls(up)

    @classmethod
    def from_covers(cls, size: int, covers: Iterable[tuple[int, int]]) -> "Poset":
        """Build from covering pairs ``(lo, hi)``; the transitive closure is computed."""
        up = [1 << i for i in range(size)]
        for lo, hi in covers:
            if not (0 <= lo < size and 0 <= hi < size):
                raise ValueError(f"cover ({lo}, {hi}) out of range")
            up[lo] |= 1 << hi
        # closure by repeated relaxation (sizes here are small)
        changed = True
        while changed:
            changed = False
            for i in range(size):
                merged = up[i]
                for j in _iter_bits(up[i]):
                    merged |= up[j]
                if merged != up[i]:
                    up[i] = merged
                    changed = True
        return cls(up)

    # -- order queries -------------------------------------------------------

    def leq(self, a: int, b: int) -> bool:
        return (self._up[a] >> b) & 1 == 1

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.leq(a, b)

    def up_mask(self, a: int) -> int:
        return self._up[a]

    def down_mask(self, a: int) -> int:
        return self._down[a]

    def maximal_elements(self) -> list[int]:
        return [i for i in range(self.size) if self._up[i] == 1 << i]

    def minimal_elements(self) -> list[int]:
        return [i for i in range(self.size) if self._down[i] == 1 << i]

    def unique_max(self) -> int | None:
        full = (1 << self.size) - 1
        for i in range(self.size):
            if self._down[i] == full:
                return i
        return None

    def unique_min(self) -> int | None:
        full = (1 << self.size) - 1
        for i in range(self.size):
            if self._up[i] == full:
                return i
        return None

    def is_chain(self) -> bool:
        return sorted(m.bit_count() for m in self._up) == list(range(1, self.size + 1))

    def covers(self) -> list[tuple[int, int]]:
        """All covering pairs ``(lo, hi)`` with nothing strictly between."""
        out = []
        for i in range(self.size):
            strict = self._up[i] ^ (1 << i)
            between = 0
            for j in _iter_bits(strict):
                between |= self._up[j] ^ (1 << j)
            out.extend((i, j) for j in _iter_bits(strict & ~between))
        return sorted(out)

    def relation_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.size) for j in _iter_bits(self._up[i])]

    # -- value semantics -------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Poset) and self._up == other._up

    def __hash__(self):
        return hash(self._up)

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"Poset(size={self.size}, covers={self.covers()})"

    # -- exports ---------------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {"size": self.size, "covers": [list(c) for c in self.covers()]}

    def to_dot(self, labels: Sequence[str] | None = None, flagged: Iterable[int] = ()) -> str:
        """Hasse diagram as DOT; flagged nodes are drawn with a double border."""
        flagged = set(flagged)
        lines = ["digraph hasse {", "  rankdir=BT;", "  node [shape=ellipse];"]
        for i in range(self.size):
            label = labels[i] if labels is not None else str(i)
            extra = ", peripheries=2" if i in flagged else ""
            lines.append(f'  n{i} [label="{label}"{extra}];')
        for lo, hi in self.covers():
            lines.append(f"  n{lo} -> n{hi};")
        lines.append("}")
        return "\n".join(lines)


# -- basic constructions -------------------------------------------------------


def chain(n: int) -> Poset:
    """The total order on n elements (0 at the bottom); n = 0 is the empty poset."""
    if n < 0:
        raise ValueError("chain length must be nonnegative")
    full = (1 << n) - 1
    return Poset._unchecked(full & ~((1 << i) - 1) for i in range(n))


def antichain(n: int) -> Poset:
    """n pairwise incomparable elements."""
    return Poset._unchecked(1 << i for i in range(n))


def ordinal_sum(p: Poset, q: Poset) -> Poset:
    """Disjoint union with every element of ``p`` below every element of ``q``."""
    qs = p.size
    above = ((1 << q.size) - 1) << qs
    up = [p.up_mask(i) | above for i in range(p.size)]
    up.extend(q.up_mask(j) << qs for j in range(q.size))
    return Poset._unchecked(up)


def product(p: Poset, q: Poset) -> Poset:
    """Componentwise order on pairs; element (i, j) has index i*|q| + j."""
    up = []
    for i in range(p.size):
        for j in range(q.size):
            mask = 0
            for a in _iter_bits(p.up_mask(i)):
                for b in _iter_bits(q.up_mask(j)):
                    mask |= 1 << (a * q.size + b)
            up.append(mask)
    return Poset._unchecked(up)


def subposet(p: Poset, elements: Iterable[int]) -> Poset:
    """The induced order on the given elements, re-indexed in ascending order."""
    keep = sorted(set(elements))
    pos = {e: i for i, e in enumerate(keep)}
    up = []
    for e in keep:
        mask = 0
        for j in _iter_bits(p.up_mask(e)):
            if j in pos:
                mask |= 1 << pos[j]
        up.append(mask)
    return Poset._unchecked(up)


def _sub_from_mask(p: Poset, mask: int) -> Poset:
    return subposet(p, _iter_bits(mask))


# -- down-sets -------------------------------------------------------------------

_DOWN_SET_CACHE: dict[Poset, tuple[int, ...]] = {}


def _down_set_masks(p: Poset) -> tuple[int, ...]:
    """All down-set bitmasks of ``p``, ascending."""
    cached = _DOWN_SET_CACHE.get(p)
    if cached is not None:
        return cached
    strict_down = [p.down_mask(i) ^ (1 << i) for i in range(p.size)]
    seen = {0}
    frontier = [0]
    while frontier:
        s = frontier.pop()
        for x in range(p.size):
            if not (s >> x) & 1 and strict_down[x] & ~s == 0:
                t = s | (1 << x)
                if t not in seen:
                    seen.add(t)
                    frontier.append(t)
    result = tuple(sorted(seen))
    _DOWN_SET_CACHE[p] = result
    return result


def down_sets(p: Poset, *, max_size: int = DEFAULT_MAX_SIZE) -> list[frozenset[int]]:
    """Every subset closed downwards, from the empty set to all of ``p``.

    Deterministic order: by cardinality, then by sorted member tuple.
    """
    if p.size > max_size:
        raise EnumerationLimitError(
            f"down-set enumeration limited to {max_size} elements, poset has {p.size}"
        )
    sets = [frozenset(_iter_bits(m)) for m in _down_set_masks(p)]
    return sorted(sets, key=lambda s: (len(s), sorted(s)))


# -- order-preserving maps --------------------------------------------------------


@dataclass(frozen=True)
class OrderMap:
    """An order-preserving map, stored as the image of each source element."""

    source: Poset
    target: Poset
    image: tuple[int, ...]

    def __post_init__(self):
        if len(self.image) != self.source.size:
            raise ValueError("image length does not match source size")
        for i, q in enumerate(self.image):
            if not 0 <= q < self.target.size:
                raise ValueError(f"image of {i} out of range")
        for i in range(self.source.size):
            for j in _iter_bits(self.source.up_mask(i)):
                if not self.target.leq(self.image[i], self.image[j]):
                    raise ValueError(
                        f"map is not order-preserving: {i} <= {j} but "
                        f"{self.image[i]} !<= {self.image[j]}"
                    )

    def __call__(self, i: int) -> int:
        return self.image[i]

    @classmethod
    def _trusted(cls, source: Poset, target: Poset, image: tuple[int, ...]) -> "OrderMap":
        """Skip validation for maps that are order-preserving by construction."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "source", source)
        object.__setattr__(obj, "target", target)
        object.__setattr__(obj, "image", image)
        return obj


def _linear_extension(p: Poset) -> list[int]:
    """A deterministic linear extension (smallest index first among minima)."""
    remaining = set(range(p.size))
    placed = 0
    order = []
    while remaining:
        ready = sorted(x for x in remaining if p.down_mask(x) & ~placed == (1 << x))
        x = ready[0]
        order.append(x)
        remaining.remove(x)
        placed |= 1 << x
    return order


_ENUM_HOM_CACHE: dict[tuple[Poset, Poset], tuple[OrderMap, ...]] = {}
_ENUM_HOM_CACHE_MAX = 20_000


def enum_hom(p: Poset, q: Poset, *, max_maps: int = DEFAULT_MAX_MAPS) -> list[OrderMap]:
    """All order-preserving maps p -> q, in a fixed deterministic order.

    The backtracking assigns along a linear extension, intersecting the
    up-sets of the images of the predecessors, so each produced map is
    order-preserving by construction.
    """
    cached = _ENUM_HOM_CACHE.get((p, q))
    if cached is not None:
        if len(cached) > max_maps:
            raise EnumerationLimitError(f"more than {max_maps} maps")
        return list(cached)
    ext = _linear_extension(p)
    preds = [
        [y for y in ext[:k] if p.lt(y, x)] for k, x in enumerate(ext)
    ]
    full = (1 << q.size) - 1
    image = [0] * p.size
    out: list[OrderMap] = []

    def assign(k: int):
        if k == len(ext):
            if len(out) >= max_maps:
                raise EnumerationLimitError(f"more than {max_maps} maps")
            out.append(OrderMap._trusted(p, q, tuple(image)))
            return
        x = ext[k]
        candidates = full
        for y in preds[k]:
            candidates &= q.up_mask(image[y])
        for value in _iter_bits(candidates):
            image[x] = value
            assign(k + 1)

    assign(0)
    if len(out) <= _ENUM_HOM_CACHE_MAX:
        _ENUM_HOM_CACHE[(p, q)] = tuple(out)
    return out


# -- counting --------------------------------------------------------------------

_CHAIN_POLY_CACHE: dict[Poset, MultiPoly] = {}
_COUNT_CACHE: dict[tuple[Poset, Poset], int] = {}


def _chain_count_values(p: Poset, n_max: int) -> list[int]:
    """|hom(p, chain(n))| for n = 0..n_max, by a down-set dynamic program.

    A map into an n-chain is the same thing as a weakly increasing chain of
    n down-sets ending at the full set; each level of the program applies one
    subset-sum (zeta) transform over the cube, zeroed outside the down-sets.
    """
    size = p.size
    if size > DEFAULT_MAX_SIZE:
        raise EnumerationLimitError(f"chain-count program limited to {DEFAULT_MAX_SIZE} elements")
    is_down = [False] * (1 << size)
    for m in _down_set_masks(p):
        is_down[m] = True
    full = (1 << size) - 1
    g = [0] * (1 << size)
    g[0] = 1
    values = [g[full]]
    for _ in range(n_max):
        h = list(g)
        for bit in range(size):
            step = 1 << bit
            for mask in range(1 << size):
                if mask & step:
                    h[mask] += h[mask ^ step]
        g = [h[m] if is_down[m] else 0 for m in range(1 << size)]
        values.append(g[full])
    return values


def _chain_poly(p: Poset) -> MultiPoly:
    """The polynomial in ``n`` counting hom(p, chain(n)); degree |p|."""
    cached = _CHAIN_POLY_CACHE.get(p)
    if cached is not None:
        return cached
    if p.size == 0:
        poly = MultiPoly.constant(1)
    elif p.is_chain():
        poly = binomial_order_poly(p.size)
    else:
        from .polynomials import interpolate

        values = _chain_count_values(p, p.size)
        poly = interpolate(
            lambda pt: values[pt["n"]],
            {"n": p.size},
            nodes={"n": list(range(p.size + 1))},
            verify=False,
        )
    _CHAIN_POLY_CACHE[p] = poly
    return poly


def _count_into_chain(p: Poset, n: int) -> int:
    value = _chain_poly(p).evaluate({"n": n})
    assert value.denominator == 1
    return int(value)


_PEEL_CACHE: dict[Poset, tuple[Poset, int]] = {}


def _peel_chain_tail(q: Poset) -> tuple[Poset, int]:
    """Split q as (base, k) where q = base ⊕ chain(k) with k maximal."""
    cached = _PEEL_CACHE.get(q)
    if cached is not None:
        return cached
    alive = list(range(q.size))
    tail = 0
    while alive:
        alive_mask = 0
        for i in alive:
            alive_mask |= 1 << i
        top = None
        for i in alive:
            if q.down_mask(i) & alive_mask == alive_mask:
                top = i
                break
        if top is None:
            break
        alive.remove(top)
        tail += 1
    result = (subposet(q, alive), tail)
    if len(_PEEL_CACHE) < 50_000:
        _PEEL_CACHE[q] = result
    return result


def _backtrack_count(p: Poset, q: Poset, max_steps: int | None) -> int:
    """Exhaustive count for irregular targets (never materializes the maps)."""
    ext = _linear_extension(p)
    preds = [[y for y in ext[:k] if p.lt(y, x)] for k, x in enumerate(ext)]
    full = (1 << q.size) - 1
    image = {}
    steps = 0

    def count(k: int) -> int:
        nonlocal steps
        if k == len(ext):
            return 1
        steps += 1
        if max_steps is not None and steps > max_steps:
            raise EnumerationLimitError(f"map counting exceeded {max_steps} steps")
        candidates = full
        for y in preds[k]:
            candidates &= q.up_mask(image[y])
        total = 0
        for value in _iter_bits(candidates):
            image[ext[k]] = value
            total += count(k + 1)
        image.pop(ext[k], None)
        return total

    return count(0)


def count_hom(p: Poset, q: Poset, *, max_steps: int | None = None) -> int:
    """|hom(p, q)|, the number of order-preserving maps from p to q.

    Agrees with ``len(enum_hom(p, q))`` whenever both run.  Targets of the
    form (base ⊕ chain) are counted by splitting each map at the chain: the
    part landing in the base lives on a down-set of ``p`` and the rest is
    counted by the chain polynomial of the complementary up-set.
    """
    if p.size == 0:
        return 1
    if q.size == 0:
        return 0
    key = (p, q)
    cached = _COUNT_CACHE.get(key)
    if cached is not None:
        return cached
    q0, tail = _peel_chain_tail(q)
    if not q0.size:
        result = _count_into_chain(p, tail)
    elif tail == 0:
        result = _backtrack_count(p, q, max_steps)
    else:
        result = 0
        full = (1 << p.size) - 1
        for mask in _down_set_masks(p):
            lower = count_hom(_sub_from_mask(p, mask), q0, max_steps=max_steps)
            if lower:
                result += lower * _count_into_chain(_sub_from_mask(p, full & ~mask), tail)
    _COUNT_CACHE[key] = result
    return result


def hom_polynomial(p: Poset, q: Poset, *, max_size: int = DEFAULT_MAX_SIZE) -> MultiPoly:
    """The polynomial H(n) = |hom(p, q ⊕ chain(n))|, exact in ``n``.

    Splitting each map at the chain gives
    H(n) = sum over down-sets D of p of |hom(D, q)| * (chain polynomial of p \\ D),
    which has degree exactly |p| for nonempty p.
    """
    if p.size > max_size:
        raise EnumerationLimitError(
            f"hom polynomial limited to {max_size} source elements, poset has {p.size}"
        )
    full = (1 << p.size) - 1
    result = MultiPoly.zero()
    for mask in _down_set_masks(p):
        lower = count_hom(_sub_from_mask(p, mask), q)
        if lower:
            result = result + lower * _chain_poly(_sub_from_mask(p, full & ~mask))
    return result


# -- isomorphism testing (used by structural assertions and tests) ----------------


def _signatures(p: Poset) -> list[tuple[int, int, tuple, tuple]]:
    base = [(p.up_mask(i).bit_count(), p.down_mask(i).bit_count()) for i in range(p.size)]
    return [
        (
            base[i][0],
            base[i][1],
            tuple(sorted(base[j] for j in _iter_bits(p.up_mask(i)))),
            tuple(sorted(base[j] for j in _iter_bits(p.down_mask(i)))),
        )
        for i in range(p.size)
    ]


def are_isomorphic(p: Poset, q: Poset) -> bool:
    """Backtracking order-isomorphism test; intended for small posets."""
    if p.size != q.size:
        return False
    sp, sq = _signatures(p), _signatures(q)
    if sorted(sp) != sorted(sq):
        return False
    candidates = [[j for j in range(q.size) if sq[j] == sp[i]] for i in range(p.size)]
    order = sorted(range(p.size), key=lambda i: len(candidates[i]))
    match: dict[int, int] = {}
    used = set()

    def extend(k: int) -> bool:
        if k == p.size:
            return True
        i = order[k]
        for j in candidates[i]:
            if j in used:
                continue
            ok = True
            for i2, j2 in match.items():
                if p.leq(i, i2) != q.leq(j, j2) or p.leq(i2, i) != q.leq(j2, j):
                    ok = False
                    break
            if ok:
                match[i] = j
                used.add(j)
                if extend(k + 1):
                    return True
                used.remove(j)
                del match[i]
        return False

    return extend(0)
