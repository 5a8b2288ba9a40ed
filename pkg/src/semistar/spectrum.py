"""Labeled spectral trees of semilocal Prüfer domains.

A domain is modeled by the reduced tree of branching points of its prime
spectrum: a rooted tree in which the root stands for the zero ideal and the
leaves for the maximal ideals.  Every node carries a weight ``omega`` (the
number of fractional-star operations of the valuation slice between the node
and the branching point below it) and every leaf additionally carries
``epsilon`` in {1, 2} (the number of star operations of the localization at
that maximal ideal; 1 exactly when the maximal ideal is principal).

Homeomorphic irreducibility means no node other than the root may have
exactly one child.  The root may: a domain whose maximal ideals all share a
nonzero prime has a single branch.

The skeleton lattice of overrings is encoded by bitmasks over the branch
indices: the intersection of a set S of branch rings corresponds to the mask
of S, ring inclusion is *reverse* mask inclusion, and intersecting two rings
is a bitwise ``or``.  A support is then a union-closed family of masks
containing the empty mask (the quotient field).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import EnumerationLimitError, SpectrumValidationError, UnknownNodeError
from .posets import Poset

#: Default cap on the number of branches in support enumerations.
DEFAULT_MAX_BRANCHES = 4

IDEMPOTENT = "idempotent"
NONIDEMPOTENT = "nonidempotent"


@dataclass(frozen=True)
class TreeNode:
    id: str
    parent: str | None
    omega: int
    epsilon: int | None = None


class SpectrumTree:
    """A validated spectral tree.  Use :func:`validate_tree` or :func:`build_tree`."""

    __slots__ = ("nodes", "root_id", "_by_id", "_children", "_hash")

    def __init__(self, nodes: Sequence[TreeNode], _problems_checked: bool = False):
        if not _problems_checked:
            problems = _collect_problems(nodes)
            if problems:
                raise SpectrumValidationError(problems)
        by_id = {n.id: n for n in nodes}
        children: dict[str, list[str]] = {n.id: [] for n in nodes}
        root_id = None
        for n in nodes:
            if n.parent is None:
                root_id = n.id
            else:
                children[n.parent].append(n.id)
        for ids in children.values():
            ids.sort()
        object.__setattr__(self, "nodes", tuple(nodes))
        object.__setattr__(self, "root_id", root_id)
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_children", {k: tuple(v) for k, v in children.items()})
        object.__setattr__(
            self, "_hash", hash(tuple(sorted(self.nodes, key=lambda n: n.id)))
        )

    def __setattr__(self, name, value):
        raise AttributeError("SpectrumTree is immutable")

    # -- access ---------------------------------------------------------------

    def node(self, node_id: str) -> TreeNode:
        try:
            return self._by_id[node_id]
        except KeyError:
            raise UnknownNodeError(f"no node with id {node_id!r}") from None

    def __contains__(self, node_id: str) -> bool:
        return node_id in self._by_id

    def children(self, node_id: str) -> tuple[str, ...]:
        self.node(node_id)
        return self._children[node_id]

    def is_leaf(self, node_id: str) -> bool:
        return self.node(node_id).parent is not None and not self._children[node_id]

    def leaves(self) -> tuple[str, ...]:
        return tuple(sorted(n.id for n in self.nodes if self.is_leaf(n.id)))

    def subtree_ids(self, node_id: str) -> tuple[str, ...]:
        out = [node_id]
        stack = [node_id]
        while stack:
            for child in self.children(stack.pop()):
                out.append(child)
                stack.append(child)
        return tuple(sorted(out))

    def omega(self, node_id: str) -> int:
        return self.node(node_id).omega

    def epsilon(self, node_id: str) -> int:
        value = self.node(node_id).epsilon
        if value is None:
            raise ValueError(f"node {node_id!r} carries no epsilon label")
        return value

    def __eq__(self, other):
        return isinstance(other, SpectrumTree) and sorted(
            self.nodes, key=lambda n: n.id
        ) == sorted(other.nodes, key=lambda n: n.id)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"SpectrumTree({len(self.nodes)} nodes, root {self.root_id!r})"

    # -- relabeling -------------------------------------------------------------

    def with_labels(
        self,
        omega: Mapping[str, int] | None = None,
        epsilon: Mapping[str, int] | None = None,
    ) -> "SpectrumTree":
        """A copy with some omega/epsilon labels replaced; re-validated."""
        omega = dict(omega or {})
        epsilon = dict(epsilon or {})
        for key in list(omega) + list(epsilon):
            self.node(key)
        new_nodes = []
        for n in self.nodes:
            new_nodes.append(
                TreeNode(
                    n.id,
                    n.parent,
                    omega.get(n.id, n.omega),
                    epsilon.get(n.id, n.epsilon),
                )
            )
        return SpectrumTree(new_nodes)

    # -- serialization ------------------------------------------------------------

    def to_dict(self) -> dict:
        out = []
        for n in self.nodes:
            entry: dict = {"id": n.id, "parent": n.parent, "omega": n.omega}
            if n.epsilon is not None:
                entry["epsilon"] = n.epsilon
            out.append(entry)
        return {"nodes": out}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_dot(self) -> str:
        lines = ["digraph spectrum {", "  rankdir=BT;", "  node [shape=box];"]
        index = {n.id: k for k, n in enumerate(self.nodes)}
        for n in self.nodes:
            label = f"{n.id}\\nomega={n.omega}"
            if n.epsilon is not None:
                label += f", eps={n.epsilon}"
            lines.append(f'  n{index[n.id]} [label="{label}"];')
        for n in self.nodes:
            if n.parent is not None:
                lines.append(f"  n{index[n.parent]} -> n{index[n.id]};")
        lines.append("}")
        return "\n".join(lines)


def _coerce_nodes(data) -> list[TreeNode] | list[str]:
    """Raw JSON-ish input to TreeNode list, or a list of structural problems."""
    if isinstance(data, SpectrumTree):
        return list(data.nodes)
    if isinstance(data, Mapping):
        if "nodes" not in data:
            return ['input has no "nodes" entry']
        rows = data["nodes"]
    else:
        rows = data
    if not isinstance(rows, (list, tuple)):
        return ['"nodes" is not a list']
    problems = []
    nodes = []
    for k, row in enumerate(rows):
        if not isinstance(row, Mapping):
            problems.append(f"node #{k} is not an object")
            continue
        node_id = row.get("id")
        if not isinstance(node_id, str) or not node_id:
            problems.append(f"node #{k} has no usable id")
            continue
        parent = row.get("parent", "missing")
        if parent == "missing":
            problems.append(f"node {node_id!r} has no parent entry (use null for the root)")
            parent = None
        if parent is not None and not isinstance(parent, str):
            problems.append(f"node {node_id!r} has a non-string parent")
            parent = None
        omega = row.get("omega")
        if not isinstance(omega, int) or isinstance(omega, bool):
            problems.append(f"node {node_id!r} has no integer omega")
            omega = 1
        epsilon = row.get("epsilon")
        if epsilon is not None and (not isinstance(epsilon, int) or isinstance(epsilon, bool)):
            problems.append(f"node {node_id!r} has a non-integer epsilon")
            epsilon = None
        unknown = set(row) - {"id", "parent", "omega", "epsilon"}
        if unknown:
            problems.append(f"node {node_id!r} has unknown keys {sorted(unknown)}")
        nodes.append(TreeNode(node_id, parent, omega, epsilon))
    if problems:
        return problems
    return nodes


def _collect_problems(nodes: Sequence[TreeNode]) -> list[str]:
    problems = []
    ids = [n.id for n in nodes]
    if not nodes:
        return ["tree has no nodes"]
    if len(set(ids)) != len(ids):
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        problems.append(f"duplicate node ids: {dupes}")
        return problems
    by_id = {n.id: n for n in nodes}
    roots = [n for n in nodes if n.parent is None]
    if len(roots) != 1:
        problems.append(f"expected exactly one root (parent null), found {len(roots)}")
        return problems
    root = roots[0]
    for n in nodes:
        if n.parent is not None and n.parent not in by_id:
            problems.append(f"node {n.id!r} references missing parent {n.parent!r}")
    if any(n.parent is not None and n.parent not in by_id for n in nodes):
        return problems

    children: dict[str, list[str]] = {n.id: [] for n in nodes}
    for n in nodes:
        if n.parent is not None:
            children[n.parent].append(n.id)
    reached = {root.id}
    stack = [root.id]
    while stack:
        for child in children[stack.pop()]:
            if child not in reached:
                reached.add(child)
                stack.append(child)
    unreachable = sorted(set(ids) - reached)
    if unreachable:
        problems.append(f"not a tree: nodes unreachable from the root: {unreachable}")
        return problems

    if root.omega != 1:
        problems.append(f"root omega must be 1, got {root.omega}")
    if root.epsilon is not None:
        problems.append("the root carries no epsilon label")
    for n in nodes:
        if n.omega < 1:
            problems.append(f"node {n.id!r}: omega must be >= 1, got {n.omega}")
        kids = children[n.id]
        is_leaf = n.parent is not None and not kids
        if n.parent is not None and len(kids) == 1:
            problems.append(
                f"node {n.id!r} has exactly one child and is not the root "
                "(not a branching point)"
            )
        if is_leaf:
            if n.epsilon is None:
                problems.append(f"leaf {n.id!r} is missing its epsilon label")
            elif n.epsilon not in (1, 2):
                problems.append(f"leaf {n.id!r}: epsilon must be 1 or 2, got {n.epsilon}")
            elif n.omega < n.epsilon:
                problems.append(
                    f"leaf {n.id!r}: omega ({n.omega}) must be at least epsilon ({n.epsilon})"
                )
        elif n.parent is not None and n.epsilon is not None:
            problems.append(f"internal node {n.id!r} carries an epsilon label")
    return problems


def validate_tree(data) -> SpectrumTree:
    """Check a raw tree description and return it as a :class:`SpectrumTree`.

    ``data`` may be a parsed JSON object ``{"nodes": [...]}``, a bare node
    list, or an existing tree.  On failure a
    :class:`~semistar.errors.SpectrumValidationError` is raised whose
    ``problems`` attribute lists every violated invariant.
    """
    nodes = _coerce_nodes(data)
    if nodes and isinstance(nodes[0], str):
        raise SpectrumValidationError(nodes)
    problems = _collect_problems(nodes)
    if problems:
        raise SpectrumValidationError(problems)
    return SpectrumTree(nodes, _problems_checked=True)


def build_tree(rows: Iterable) -> SpectrumTree:
    """Convenience constructor from tuples ``(id, parent, omega[, epsilon])``."""
    nodes = []
    for row in rows:
        if isinstance(row, TreeNode):
            nodes.append(row)
        else:
            node_id, parent, omega = row[0], row[1], row[2]
            epsilon = row[3] if len(row) > 3 else None
            nodes.append(TreeNode(node_id, parent, omega, epsilon))
    problems = _collect_problems(nodes)
    if problems:
        raise SpectrumValidationError(problems)
    return SpectrumTree(nodes, _problems_checked=True)


def load_tree(path) -> SpectrumTree:
    """Read and validate a tree from a JSON file."""
    with open(path, "r", encoding="utf-8") as handle:
        return validate_tree(json.load(handle))


# -- standard decomposition and surgery ------------------------------------------


def standard_decomposition(t: SpectrumTree) -> tuple[str, ...]:
    """The branch roots: the children of the tree root, in id order.

    Each branch collects the maximal ideals of one dependence class, so the
    branches partition the leaves.
    """
    return t.children(t.root_id)


def branch_subtree(t: SpectrumTree, child_id: str) -> SpectrumTree:
    """The overring generated by one dependence class: root plus one branch."""
    if child_id not in standard_decomposition(t):
        raise UnknownNodeError(f"{child_id!r} is not a child of the root")
    keep = set(t.subtree_ids(child_id))
    root = t.node(t.root_id)
    nodes = [TreeNode(root.id, None, 1, None)]
    nodes.extend(n for n in t.nodes if n.id in keep)
    return SpectrumTree(nodes)


def quotient_subtree(t: SpectrumTree, node_id: str) -> SpectrumTree:
    """The tree of the quotient by the prime at ``node_id``: re-root there.

    The new root keeps its id but its omega resets to 1 (its slice collapses
    in the quotient) and it loses any epsilon label; all other labels are
    preserved.  The result is re-validated.
    """
    node = t.node(node_id)
    if node.parent is None:
        raise ValueError("cannot take the quotient at the root")
    keep = set(t.subtree_ids(node_id))
    nodes = [TreeNode(node.id, None, 1, None)]
    nodes.extend(n for n in t.nodes if n.id in keep and n.id != node_id)
    return SpectrumTree(nodes)


def derive_omega(segment: Sequence[str]) -> int:
    """Weight of a slice from the idempotency of the primes inside it.

    Each nonidempotent prime contributes 1 and each idempotent prime
    contributes 2, so the result is |nonidempotent| + 2 * |idempotent|.
    """
    if not segment:
        raise ValueError("empty segment")
    total = 0
    for flag in segment:
        if flag == NONIDEMPOTENT:
            total += 1
        elif flag == IDEMPOTENT:
            total += 2
        else:
            raise ValueError(f"unknown idempotency flag {flag!r}")
    return total


# -- skeleton and supports ---------------------------------------------------------


def _mask_label(mask: int, branch_ids: Sequence[str]) -> str:
    if mask == 0:
        return "K"
    if mask == (1 << len(branch_ids)) - 1:
        return "D"
    names = [branch_ids[i] for i in range(len(branch_ids)) if (mask >> i) & 1]
    return "T{" + ",".join(names) + "}"


@dataclass(frozen=True)
class Skeleton:
    """The lattice of all intersections of branch overrings.

    Elements are the 2^m masks over branch indices; the mask of S encodes
    the intersection of the branches in S.  Ring inclusion is reverse mask
    inclusion, so the full mask is the domain itself (the minimum) and the
    empty mask is the quotient field (the maximum).
    """

    branch_ids: tuple[str, ...]

    @property
    def branch_count(self) -> int:
        return len(self.branch_ids)

    @property
    def full_mask(self) -> int:
        return (1 << self.branch_count) - 1

    def elements(self) -> tuple[int, ...]:
        return tuple(range(1 << self.branch_count))

    def leq(self, a: int, b: int) -> bool:
        """Ring inclusion: the intersection over A sits inside the one over B iff A ⊇ B."""
        return a & b == b

    def meet(self, a: int, b: int) -> int:
        """Intersection of rings corresponds to union of branch sets."""
        return a | b

    def as_poset(self) -> Poset:
        """Poset indexed by mask value, ordered by ring inclusion."""
        n = 1 << self.branch_count
        pairs = [(a, b) for a in range(n) for b in range(n) if self.leq(a, b)]
        return Poset.from_relation(n, pairs)

    def label(self, mask: int) -> str:
        return _mask_label(mask, self.branch_ids)


def skeleton(t: SpectrumTree) -> Skeleton:
    return Skeleton(standard_decomposition(t))


def _component_sort_key(mask: int):
    return (-mask.bit_count(), mask)


@dataclass(frozen=True)
class Support:
    """A union-closed family of skeleton masks containing the empty mask.

    These are exactly the families of overrings on which a semistar
    operation can restrict to fractional-star operations: closed under
    intersection (mask union) and always containing the quotient field.
    """

    branch_count: int
    masks: frozenset[int]

    def __post_init__(self):
        full = (1 << self.branch_count) - 1
        if 0 not in self.masks:
            raise ValueError("a support always contains the quotient field (empty mask)")
        for m in self.masks:
            if m & ~full:
                raise ValueError(f"mask {m} out of range for {self.branch_count} branches")
        for a in self.masks:
            for b in self.masks:
                if (a | b) not in self.masks:
                    raise ValueError(
                        f"family is not union-closed: {a} | {b} = {a | b} is missing"
                    )

    @property
    def full_mask(self) -> int:
        return (1 << self.branch_count) - 1

    def contains_domain(self) -> bool:
        return self.full_mask in self.masks

    def sorted_masks(self) -> tuple[int, ...]:
        return tuple(sorted(self.masks, key=_component_sort_key))

    def component(self, branch: int) -> tuple[int, ...]:
        """The masks of the family whose ring sits inside the given branch."""
        if not 0 <= branch < self.branch_count:
            raise ValueError(f"branch index {branch} out of range")
        return tuple(
            m for m in self.sorted_masks() if (m >> branch) & 1
        )

    def component_poset(self, branch: int) -> tuple[Poset, int | None]:
        """The component as a poset, plus the index of the domain if present.

        Elements follow :meth:`component` order, so the domain (full mask),
        when present, is the minimum and sits at index 0.
        """
        return _component_poset(self.component(branch), self.full_mask)

    def sort_key(self):
        return (len(self.masks), tuple(sorted(self.masks)))

    def label(self, branch_ids: Sequence[str]) -> str:
        names = [_mask_label(m, branch_ids) for m in sorted(self.masks, key=_component_sort_key)]
        return "{" + ", ".join(names) + "}"


@lru_cache(maxsize=None)
def _component_poset(masks: tuple[int, ...], full_mask: int) -> tuple[Poset, int | None]:
    pairs = [
        (i, j)
        for i, a in enumerate(masks)
        for j, b in enumerate(masks)
        if a & b == b
    ]
    poset = Poset.from_relation(len(masks), pairs)
    d_index = masks.index(full_mask) if full_mask in masks else None
    return poset, d_index


@lru_cache(maxsize=64)
def _enumerate_supports_cached(m: int) -> tuple[Support, ...]:
    subsets = sorted(range(1, 1 << m), key=lambda s: (s.bit_count(), s))
    found: list[frozenset[int]] = []

    def extend(k: int, family: list[int]):
        if k == len(subsets):
            found.append(frozenset(family))
            return
        s = subsets[k]
        forced = any(a | b == s for a in family for b in family)
        if not forced:
            extend(k + 1, family)
        family.append(s)
        extend(k + 1, family)
        family.pop()

    extend(0, [])
    supports = [Support(m, fam | {0}) for fam in found]
    supports.sort(key=Support.sort_key)
    return tuple(supports)


def enumerate_supports(
    source: SpectrumTree | int, *, max_branches: int = DEFAULT_MAX_BRANCHES
) -> tuple[Support, ...]:
    """All supports over ``m`` branches, by depth-first closure generation.

    Nonempty masks are decided in an order compatible with union (by
    popcount, then value); a mask that is already a union of two chosen
    masks is forced in, which makes every union-closed family appear exactly
    once.  Output is sorted canonically.
    """
    if isinstance(source, SpectrumTree):
        m = len(standard_decomposition(source))
    else:
        m = source
    if m < 0:
        raise ValueError("branch count must be nonnegative")
    if m > max_branches:
        raise EnumerationLimitError(
            f"support enumeration limited to {max_branches} branches, got {m}"
        )
    return _enumerate_supports_cached(m)
